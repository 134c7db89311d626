#pragma once

#include <functional>
#include <optional>
#include <set>

#include "fibdual/sset_map.hpp"

namespace fibdual {

// ---------------------------------------------------------------- posets ----

struct FinPoset {
  std::vector<std::string> labels;
  std::vector<std::vector<char>> leq;  // leq[a][b]: a <= b

  int size() const { return static_cast<int>(labels.size()); }
  bool valid() const;  // reflexive, antisymmetric, transitive
};

struct PosetNerve {
  SSetPtr sset;
  std::vector<std::vector<std::vector<int>>> chains;  // chains[d][idx] = strict chain
  std::map<std::vector<int>, CellId> byChain;
};

// nerve as strict chains; complete (posets are finite, chains bounded)
PosetNerve poset_nerve(const FinPoset& P, const std::string& name = "");

// simplex of the nerve spanned by a weakly increasing chain, in normal form
SimplexRef nerve_chain_ref(const PosetNerve& N, const std::vector<int>& chain);

// simplicial map induced by a monotone function of posets
SSetMap poset_nerve_map(const PosetNerve& dom, const PosetNerve& cod,
                        const std::function<int(int)>& f);

// ------------------------------------------------------ standard simplex ----

SSetPtr standard_simplex(int n);  // cached; pointer-stable across calls
// the simplex of Delta^n with the given weakly increasing vertex values
SimplexRef simplex_word_ref(int n, const std::vector<int>& values);
std::vector<int> simplex_ref_values(const SimplexRef& r, int n);
// map Delta^m -> Delta^n induced by a monotone [m] -> [n]
SSetMap simplex_map(const MonotoneMap& f);
// map Delta^n -> X classifying an n-simplex
SSetMap simplex_as_map(SSetPtr X, const SimplexRef& r);

// ----------------------------------------------------------- subcomplex ----

struct SubcomplexResult {
  SSetPtr sset;
  SSetMap inclusion;
  std::map<CellId, CellId> toAmbient;
  std::map<CellId, CellId> fromAmbient;
};

SubcomplexResult subcomplex(SSetPtr X, const std::set<CellId>& keep);

std::set<CellId> boundary_cells(int n);  // of Delta^n
// generalized horn: the union of the facets d_a for a NOT in A.
// Requires 0 < |A| <= n (use boundary_cells for the full facet union).
std::set<CellId> horn_cells(int n, const std::set<int>& A);

// ------------------------------------------------------------- opposite ----

SimplexRef op_ref(const SimplexRef& r);
SSetPtr opposite(SSetPtr X);
SSetMap opposite_map(const SSetMap& f, SSetPtr opDom, SSetPtr opCod);
SSetMap opposite_map(const SSetMap& f);

// -------------------------------------------------------------- product ----

struct ProductResult {
  SSetPtr sset;
  SSetMap projL, projR;
  std::map<std::pair<SimplexRef, SimplexRef>, CellId> index;
  std::vector<std::vector<std::pair<SimplexRef, SimplexRef>>> pairs;  // per cell
};

ProductResult product(SSetPtr X, SSetPtr Y, int maxDim = -1);
SimplexRef product_ref(const ProductResult& P, const SimplexRef& x, const SimplexRef& y);
// (f x g) relative to chosen product presentations
SSetMap product_map(const ProductResult& domP, const ProductResult& codP, const SSetMap& f,
                    const SSetMap& g);

struct PullbackResult {
  SSetPtr sset;
  SSetMap projL, projR;
  std::map<std::pair<SimplexRef, SimplexRef>, CellId> index;
  std::vector<std::vector<std::pair<SimplexRef, SimplexRef>>> pairs;  // per cell
};

PullbackResult pullback(const SSetMap& f, const SSetMap& g, int maxDim = -1);
SimplexRef pullback_ref(const PullbackResult& P, const SimplexRef& x, const SimplexRef& y);

// ----------------------------------------------------------------- join ----

struct JoinResult {
  SSetPtr sset;
  SSetMap inclL, inclR;
  std::map<CellId, CellId> leftIndex, rightIndex;          // factor cell -> join cell
  std::map<std::pair<CellId, CellId>, CellId> pairIndex;   // (x, y) -> join cell
};

JoinResult join(SSetPtr X, SSetPtr Y, int maxDim = -1);
// the join simplex underlying refs x of X and y of Y (dims p, q -> p+q+1)
SimplexRef join_pair_ref(const JoinResult& J, const SimplexRef& x, const SimplexRef& y);

// ---------------------------------------------------------- exponential ----

// X^Y, materialized through dimension maxDim.  n-cells are maps Y x Delta^n -> X.
struct ExponentialResult {
  SSetPtr sset;  // complete == false: truncated view
  SSetPtr base, exponent;
  std::vector<ProductResult> cylinders;        // Y x Delta^n, n = 0..maxDim
  std::vector<std::vector<SSetMap>> cellMaps;  // per nondegenerate cell
};

ExponentialResult exponential(SSetPtr X, SSetPtr Y, int maxDim);
// evaluation X^Y -> X at a vertex of Y
SSetMap exponential_eval(const ExponentialResult& E, int yVertex);

// ---------------------------------------------------------------- other ----

std::string ref_label(const SimplicialSet& X, const SimplexRef& r);
std::vector<int> nondeg_counts(const SimplicialSet& X);
SimplexRef degenerate_to(const SimplexRef& vertex, int n);  // s^n of a vertex
bool totally_degenerate(const SimplexRef& r);

std::optional<SSetMap> find_isomorphism(SSetPtr X, SSetPtr Y);
bool is_isomorphic(SSetPtr X, SSetPtr Y);

}  // namespace fibdual
