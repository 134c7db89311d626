#pragma once

#include "fibdual/sset_ops.hpp"

namespace fibdual {

struct FinCategory {
  struct Mor {
    std::string name;
    int src = 0, tgt = 0;
  };

  std::string name;
  std::vector<std::string> objects;
  std::vector<Mor> morphisms;                // identities included
  std::vector<int> identity;                 // per object
  std::map<std::pair<int, int>, int> comp;   // comp[{g,f}] = g after f

  int size() const { return static_cast<int>(objects.size()); }
  int morCount() const { return static_cast<int>(morphisms.size()); }
  bool isIdentity(int m) const;
  int compose(int g, int f) const;           // g after f; throws if not composable
  std::vector<int> hom(int a, int b) const;

  int addObject(const std::string& label);   // also adds its identity
  int addMorphism(const std::string& label, int src, int tgt);
  void setComposite(int g, int f, int gf);
};

// associativity, units, composability closure; diagnostic or ""
std::string validate_category(const FinCategory& C);

struct CatFunctor {
  const FinCategory* dom = nullptr;
  const FinCategory* cod = nullptr;
  std::vector<int> objImg;
  std::vector<int> morImg;
};

std::string validate_functor(const CatFunctor& F);
CatFunctor identity_functor(const FinCategory& C);
CatFunctor compose_functors(const CatFunctor& G, const CatFunctor& F);

FinCategory poset_category(const FinPoset& P, const std::string& name = "");
FinCategory opposite_category(const FinCategory& C);
FinCategory product_category(const FinCategory& C, const FinCategory& D);
FinCategory arrow_category(const FinCategory& C);
// objects are the arrows of C; a morphism (f: u -> v) ~> (g: x -> y) is a pair
// (a: x -> u, b: v -> y) with b.f.a = g
FinCategory twisted_arrow_category(const FinCategory& C);

// nerve as identity-free composable strings, materialized through maxDim
struct NerveResult {
  SSetPtr sset;
  std::vector<std::vector<std::vector<int>>> strings;  // strings[d][idx]
  std::map<std::vector<int>, CellId> byString;
};
NerveResult nerve(const FinCategory& C, int maxDim);
SSetMap nerve_map(const NerveResult& dom, const NerveResult& cod, const CatFunctor& F);

// the morphism an edge of the nerve stands for (identity when degenerate)
int nerve_edge_morphism(const FinCategory& C, const NerveResult& N, const SimplexRef& e);

// isomorphism in C (exhaustive two-sided inverse search)
bool cat_is_iso(const FinCategory& C, int m);
// is F itself fully faithful and essentially surjective?
bool is_equivalence_functor(const CatFunctor& F);
// fully faithful + essentially surjective functor search
std::optional<CatFunctor> find_equivalence(const FinCategory& C, const FinCategory& D);
bool cat_equivalent(const FinCategory& C, const FinCategory& D);

// is the commuting square with legs pA: P -> A, pB: P -> B over the cospan
// f: A -> Z, g: B -> Z a limit square?  (exhaustive cone check)
bool cat_is_pullback(const FinCategory& C, int pA, int pB, int f, int g);
// dually: square under the span f: Z -> A, g: Z -> B with legs iA: A -> P,
// iB: B -> P
bool cat_is_pushout(const FinCategory& C, int iA, int iB, int f, int g);

// -------------------------------------------------- grothendieck plumbing ----

struct GrothFibration {
  const FinCategory* total = nullptr;
  const FinCategory* base = nullptr;
  CatFunctor proj;
  bool cocartesian = false;  // false: cartesian lifts; true: cocartesian
  // cartesian: cleavage[{e, eta: b -> P(e)}] = lift arrow into e
  // cocartesian: cleavage[{e, eta: P(e) -> b}] = lift arrow out of e
  std::map<std::pair<int, int>, int> cleavage;
};

bool is_cartesian_arrow_cat(const CatFunctor& P, int phi);
bool is_cocartesian_arrow_cat(const CatFunctor& P, int phi);

struct GrothSearch {
  std::optional<GrothFibration> fib;
  std::optional<std::pair<int, int>> missing;  // (object, base arrow) with no lift
};
// builds a normalized cleavage (identities lift to identities); on failure
// reports the first uncoverable (object, arrow) pair instead
GrothSearch groth_fibration(const CatFunctor& P, bool cocartesian);

// conjugate a fibration by op on both sides; cartesian and cocartesian swap.
// opTotal/opBase must be opposite_category of the originals (same indices).
GrothFibration opposite_groth(const GrothFibration& G, const FinCategory& opTotal,
                              const FinCategory& opBase);

// full subcategory of the vertical morphisms over one base object
FinCategory fiber_category(const CatFunctor& P, int baseObj);

// base-opposite span dual of a cartesian (resp. cocartesian) fibration:
// objects of the total category, morphisms x ~> y are pairs of a base arrow
// P(y) -> P(x) and a vertical comparison out of the chosen lift.  The result
// is packaged as a cocartesian (resp. cartesian) fibration over base^op.
struct SpanDualResult {
  std::shared_ptr<FinCategory> total;
  std::shared_ptr<FinCategory> baseOp;
  GrothFibration fib;
};
SpanDualResult classical_span_dual(const GrothFibration& G);

// ------------------------------------------------------ homotopy category ----

struct HoCategory {
  FinCategory cat;
  std::map<SimplexRef, int> edgeClass;  // every 1-simplex (degenerate included)
};

// bound: inner horn dimensions checked before trusting 2-cell composition
HoCategory homotopy_category(SSetPtr X, int bound = 3);
// edges of X that become isomorphisms in ho(X)
std::set<CellId> equivalence_edges(SSetPtr X, const HoCategory& H);

}  // namespace fibdual
