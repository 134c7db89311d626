#pragma once

#include "fibdual/fibcheck.hpp"

namespace fibdual {

// Edgewise subdivision of X: n-cells of `total` are (2n+1)-simplices of the
// source, face i dropping positions {n-i, n+1+i}.  The two halves of each
// simplex give the projection to X^op x X.
struct TwistedArrow {
  SSetPtr total;
  SSetPtr source;
  SSetPtr sourceOp;
  ProductResult range;  // X^op x X
  SSetMap proj;
  std::vector<std::vector<SimplexRef>> cellSimplex;  // per total cell: its source simplex
  std::map<SimplexRef, CellId> bySimplex;
};

TwistedArrow twisted_arrow(SSetPtr X, int maxDim);

// an arbitrary (2n+1)-simplex of the source located in the total space
SimplexRef twist_ref(const TwistedArrow& T, int n, const SimplexRef& y);

// left-fibration check on proj
CheckReport twisted_arrow_projection_check(const TwistedArrow& T, int nMax);

// stride-4 subdivision: k-cells are (4k+3)-simplices of the source
SSetPtr two_fold_twist(SSetPtr X, int maxDim);

// O(X) = X^(Delta^1), with the two evaluation maps
struct ArrowSSet {
  SSetPtr total;
  SSetPtr source;
  ExponentialResult exp;
  SSetMap src, tgt;  // ev_0, ev_1
};

ArrowSSet arrow_sset(SSetPtr X, int maxDim);

}  // namespace fibdual
