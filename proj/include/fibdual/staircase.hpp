#pragma once

#include <optional>
#include <utility>

#include "fibdual/sset_ops.hpp"

namespace fibdual {

// Monotone lattice path from (0,0) to (n,n) staying weakly above the
// diagonal: 2n+1 vertices (i,j) with i <= j, one coordinate stepping by one
// at a time.  These are exactly the maximal chains of arrow_poset(n), i.e.
// the nondegenerate (2n)-simplices of the arrow simplicial set of Delta^n.
struct StaircasePath {
  int n = 0;
  std::vector<std::pair<int, int>> verts;  // size 2n+1

  bool valid() const;
  bool operator==(const StaircasePath&) const = default;
};

// All such paths; Catalan(n) of them.  Up-steps explored first, so the
// outermost path comes first and the stairs path comes last.
std::vector<StaircasePath> enumerate_paths(int n);

// the stairs 00 -> 01 -> 11 -> 12 -> ... -> nn, the unique area-0 path
StaircasePath stairs_path(int n);

// number of full squares enclosed between the path and the stairs
int area(const StaircasePath& x);

// Corners that can be pushed one square toward the diagonal: vertices (i,j)
// at position r with i flat before, j flat after, and j >= i + 2 (a peak one
// step off the diagonal has nowhere to go).  Never adjacent along the path;
// nonempty exactly when area > 0, and the set determines the path.
std::vector<std::pair<int, int>> flipvertices(const StaircasePath& x);

// replace corner (i,j) by (i+1, j-1); area drops by exactly one
StaircasePath flip(const StaircasePath& x, std::pair<int, int> v);

// the unique path whose flipvertex set is `corners`, if there is exactly one
std::optional<StaircasePath> path_through(int n,
                                          std::vector<std::pair<int, int>> corners);

// the poset of pairs 0 <= i <= j <= n under componentwise order; its nerve
// is the arrow simplicial set of Delta^n
FinPoset arrow_poset(int n);
int arrow_vertex(int n, int i, int j);           // index of (i,j) in arrow_poset(n)
std::pair<int, int> arrow_pair(int n, int v);    // inverse of arrow_vertex

// the (2n)-simplex of the arrow-poset nerve spanned by a path's vertices
SimplexRef path_simplex(const PosetNerve& N, const StaircasePath& x);

}  // namespace fibdual
