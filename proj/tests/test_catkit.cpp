#include <set>

#include "doctest.h"
#include "fibdual/fincat.hpp"
#include "fixtures.hpp"

using namespace fibdual;
using namespace fixtures;


TEST_CASE("poset categories validate and nerve like their chain nerves") {
  FinCategory C = poset_category(chain_poset(2), "[2]");
  CHECK(validate_category(C) == "");
  CHECK(C.size() == 3);
  CHECK(C.morCount() == 6);

  NerveResult N = nerve(C, 4);
  CHECK(N.sset->complete);
  CHECK(is_isomorphic(N.sset, standard_simplex(2)));

  // grid: exactly the two filled triangles
  FinCategory G = poset_category(grid_poset(), "grid");
  CHECK(validate_category(G) == "");
  NerveResult NG = nerve(G, 3);
  CHECK(NG.sset->complete);
  CHECK(NG.sset->cellCount(2) == 2);
  CHECK(is_isomorphic(NG.sset, poset_nerve(grid_poset()).sset));
}

TEST_CASE("nerve of [1] is the interval") {
  NerveResult N = nerve(poset_category(chain_poset(1)), 3);
  CHECK(is_isomorphic(N.sset, standard_simplex(1)));
}

TEST_CASE("category validation pinpoints a broken unit") {
  FinCategory C;
  int a = C.addObject("a");
  int b = C.addObject("b");
  int f = C.addMorphism("f", a, b);
  int g = C.addMorphism("g", a, b);
  for (int o = 0; o < 2; ++o) C.setComposite(C.identity[o], C.identity[o], C.identity[o]);
  C.setComposite(f, C.identity[a], f);
  C.setComposite(C.identity[b], f, g);  // wrong on purpose
  C.setComposite(g, C.identity[a], g);
  C.setComposite(C.identity[b], g, g);
  CHECK(validate_category(C) != "");
}

TEST_CASE("walking isomorphism: nerve has two cells in every positive dimension") {
  FinCategory C = walking_iso();
  CHECK(validate_category(C) == "");
  CHECK(cat_is_iso(C, 2));
  CHECK(cat_is_iso(C, C.identity[0]));

  NerveResult N = nerve(C, 5);
  CHECK_FALSE(N.sset->complete);
  CHECK(N.sset->cellCount(0) == 2);
  for (int d = 1; d <= 5; ++d) CHECK(N.sset->cellCount(d) == 2);

  FinCategory two = poset_category(chain_poset(2));
  CHECK_FALSE(cat_is_iso(two, 3));  // 0->1 has no inverse
}

TEST_CASE("twisted arrow category of the interval is the walking cospan") {
  FinCategory I = poset_category(chain_poset(1), "[1]");
  FinCategory T = twisted_arrow_category(I);
  CHECK(validate_category(T) == "");
  CHECK(T.size() == I.morCount());
  int nonId = 0;
  for (int m = 0; m < T.morCount(); ++m)
    if (!T.isIdentity(m)) ++nonId;
  CHECK(nonId == 2);
  // both nonidentity arrows end at the object [0->1]
  for (int m = 0; m < T.morCount(); ++m)
    if (!T.isIdentity(m)) CHECK(T.objects[T.morphisms[m].tgt] == "[0->1]");
}

TEST_CASE("twisted arrow category of a discrete category is discrete") {
  FinCategory D;
  D.addObject("p");
  D.addObject("q");
  for (int o = 0; o < 2; ++o) D.setComposite(D.identity[o], D.identity[o], D.identity[o]);
  FinCategory T = twisted_arrow_category(D);
  CHECK(validate_category(T) == "");
  CHECK(T.size() == 2);
  CHECK(T.morCount() == 2);
}

TEST_CASE("twisted arrow morphisms = commuting wrong-way squares, counted by brute force") {
  for (const FinCategory& C :
       {poset_category(chain_poset(2)), poset_category(grid_poset()), walking_iso()}) {
    FinCategory T = twisted_arrow_category(C);
    CHECK(validate_category(T) == "");
    CHECK(T.size() == C.morCount());
    long squares = 0;
    for (int f = 0; f < C.morCount(); ++f)
      for (int g = 0; g < C.morCount(); ++g)
        for (int a = 0; a < C.morCount(); ++a)
          for (int b = 0; b < C.morCount(); ++b) {
            if (C.morphisms[a].src != C.morphisms[g].src) continue;
            if (C.morphisms[a].tgt != C.morphisms[f].src) continue;
            if (C.morphisms[b].src != C.morphisms[f].tgt) continue;
            if (C.morphisms[b].tgt != C.morphisms[g].tgt) continue;
            if (C.compose(b, C.compose(f, a)) == g) ++squares;
          }
    CHECK(T.morCount() == squares);
  }
}

TEST_CASE("arrow category of the interval is the 2-chain") {
  FinCategory A = arrow_category(poset_category(chain_poset(1)));
  CHECK(validate_category(A) == "");
  CHECK(find_equivalence(A, poset_category(chain_poset(2))).has_value());
  CHECK(A.size() == 3);
  CHECK(A.morCount() == 6);
}

TEST_CASE("functor plumbing: identity, composition, validation") {
  FinCategory C = poset_category(chain_poset(2));
  CatFunctor id = identity_functor(C);
  CHECK(validate_functor(id) == "");
  CHECK(validate_functor(compose_functors(id, id)) == "");

  CatFunctor broken = id;
  broken.morImg[2] = C.identity[0];  // send an arrow to a loop elsewhere
  CHECK(validate_functor(broken) != "");
}

TEST_CASE("nerve_map strips identity factors into degeneracies") {
  FinCategory C = poset_category(chain_poset(2), "[2]");
  FinCategory I = poset_category(chain_poset(1), "[1]");
  NerveResult NC = nerve(C, 3);
  NerveResult NI = nerve(I, 3);
  // collapse 1 and 2: [2] -> [1]
  CatFunctor F;
  F.dom = &C;
  F.cod = &I;
  F.objImg = {0, 1, 1};
  F.morImg.assign(C.morCount(), -1);
  for (int m = 0; m < C.morCount(); ++m) {
    int s = F.objImg[C.morphisms[m].src], t = F.objImg[C.morphisms[m].tgt];
    F.morImg[m] = (s == t) ? I.identity[s] : 2;
  }
  CHECK(validate_functor(F) == "");
  SSetMap nf = nerve_map(NC, NI, F);
  CHECK(validate_map(nf) == "");
  // the long 2-cell 0<1<2 maps onto the edge with one collapsed direction
  SimplexRef top = nf.image(CellId{2, 0});
  CHECK(top.cell.dim == 1);
  CHECK(top.word.collapsed.size() == 1);
}

TEST_CASE("equivalence verdicts: identity, skeleton, collapse") {
  FinCategory C = poset_category(chain_poset(1));
  CHECK(is_equivalence_functor(identity_functor(C)));

  // constant functor from [1] is not an equivalence
  CatFunctor K;
  K.dom = &C;
  K.cod = &C;
  K.objImg = {0, 0};
  K.morImg = {C.identity[0], C.identity[0], C.identity[0]};
  CHECK(validate_functor(K) == "");
  CHECK_FALSE(is_equivalence_functor(K));

  // skeleton inclusion into the walking isomorphism
  FinCategory iso = walking_iso();
  FinCategory pt;
  pt.addObject("x");
  pt.setComposite(0, 0, 0);
  CatFunctor incl;
  incl.dom = &pt;
  incl.cod = &iso;
  incl.objImg = {0};
  incl.morImg = {iso.identity[0]};
  CHECK(validate_functor(incl) == "");
  CHECK(is_equivalence_functor(incl));
  CHECK(cat_equivalent(pt, iso));
  CHECK_FALSE(cat_equivalent(pt, poset_category(chain_poset(1))));
  CHECK_FALSE(cat_equivalent(poset_category(chain_poset(1)), iso));
}

TEST_CASE("grothendieck search: identity and product projections are fibrations") {
  FinCategory S = poset_category(chain_poset(2), "S");
  GrothSearch idf = groth_fibration(identity_functor(S), false);
  REQUIRE(idf.fib.has_value());
  // lifts of eta into e are the arrows eta themselves
  for (const auto& [key, lift] : idf.fib->cleavage) CHECK(lift == key.second);

  FinCategory C = walking_iso();
  FinCategory P = product_category(C, S);
  CatFunctor projS;
  projS.dom = &P;
  projS.cod = &S;
  for (int a = 0; a < C.size(); ++a)
    for (int b = 0; b < S.size(); ++b) projS.objImg.push_back(b);
  for (int f = 0; f < C.morCount(); ++f)
    for (int g = 0; g < S.morCount(); ++g) projS.morImg.push_back(g);
  REQUIRE(validate_functor(projS) == "");
  GrothSearch prod = groth_fibration(projS, false);
  CHECK(prod.fib.has_value());
  GrothSearch prodOp = groth_fibration(projS, true);
  CHECK(prodOp.fib.has_value());
}

TEST_CASE("grothendieck search: running fixture and its missing-lift prune") {
  GrothFixture F;
  REQUIRE(validate_category(F.total) == "");
  REQUIRE(validate_functor(F.proj) == "");

  GrothSearch G = groth_fibration(F.proj, false);
  REQUIRE(G.fib.has_value());
  CHECK(F.base.morphisms[F.eta].name == "0->1");
  CHECK(G.fib->cleavage.at({1, F.eta}) == F.gb);
  CHECK(G.fib->cleavage.at({2, F.eta}) == F.gc);
  CHECK(is_cartesian_arrow_cat(F.proj, F.gb));
  CHECK_FALSE(is_cartesian_arrow_cat(F.proj, F.w));

  // both lifts over eta pruned: b and c become unreachable from the fiber over 0
  PrunedFixture P;
  REQUIRE(validate_category(P.total) == "");
  REQUIRE(validate_functor(P.proj) == "");
  GrothSearch miss = groth_fibration(P.proj, false);
  CHECK_FALSE(miss.fib.has_value());
  REQUIRE(miss.missing.has_value());
  CHECK(miss.missing->second == F.eta);  // no lift of 0->1 into b (or c)
}

TEST_CASE("source evaluation on an arrow category is a grothendieck fibration") {
  FinCategory C = poset_category(grid_poset(), "grid");
  FinCategory A = arrow_category(C);
  REQUIRE(validate_category(A) == "");
  CatFunctor src;
  src.dom = &A;
  src.cod = &C;
  for (int f = 0; f < C.morCount(); ++f) src.objImg.push_back(C.morphisms[f].src);
  // a square (a, b): f => g evaluates to a at the source
  src.morImg.assign(A.morCount(), -1);
  for (int m = 0; m < A.morCount(); ++m) {
    // recover the a-component from the morphism name "(a,b)"
    const std::string& nm = A.morphisms[m].name;
    std::string aName = nm.substr(1, nm.find(',') - 1);
    for (int a = 0; a < C.morCount(); ++a)
      if (C.morphisms[a].name == aName &&
          C.morphisms[a].src == src.objImg[A.morphisms[m].src] &&
          C.morphisms[a].tgt == src.objImg[A.morphisms[m].tgt])
        src.morImg[m] = a;
  }
  REQUIRE(validate_functor(src) == "");
  GrothSearch G = groth_fibration(src, false);
  CHECK(G.fib.has_value());
}

TEST_CASE("span dual of the running fixture composes and is cocartesian over the opposite") {
  GrothFixture F;
  GrothSearch G = groth_fibration(F.proj, false);
  REQUIRE(G.fib.has_value());

  SpanDualResult D = classical_span_dual(*G.fib);
  CHECK(validate_category(*D.total) == "");
  CHECK(D.total->size() == 3);
  CHECK(D.total->morCount() == 6);
  CHECK(validate_functor(D.fib.proj) == "");
  // b ~> a and c ~> a exist; a ~> b does not
  int oa = 0, ob = 1, oc = 2;
  CHECK(D.total->hom(ob, oa).size() == 1);
  CHECK(D.total->hom(oc, oa).size() == 1);
  CHECK(D.total->hom(oa, ob).empty());
  CHECK(D.total->hom(ob, oc).size() == 1);

  // the packaged cleavage really is cocartesian
  GrothSearch re = groth_fibration(D.fib.proj, true);
  REQUIRE(re.fib.has_value());
  for (const auto& [key, lift] : D.fib.cleavage) CHECK(is_cocartesian_arrow_cat(D.fib.proj, lift));

  // fibers of the dual match the fibers of the original
  for (int b = 0; b < F.base.size(); ++b) {
    FinCategory fibE = fiber_category(F.proj, b);
    FinCategory fibD = fiber_category(D.fib.proj, b);
    CHECK(validate_category(fibE) == "");
    CHECK(fibE.size() == fibD.size());
    CHECK(fibE.morCount() == fibD.morCount());
    CHECK(cat_equivalent(fibE, fibD));
  }
}

TEST_CASE("span dual of an identity fibration is the opposite base") {
  FinCategory S = poset_category(grid_poset(), "S");
  GrothSearch G = groth_fibration(identity_functor(S), false);
  REQUIRE(G.fib.has_value());
  SpanDualResult D = classical_span_dual(*G.fib);
  CHECK(validate_category(*D.total) == "");
  CHECK(find_equivalence(*D.total, opposite_category(S)).has_value());
  CHECK(D.total->morCount() == S.morCount());
}

TEST_CASE("span dual of a product projection is the product over the opposite") {
  FinCategory C = poset_category(chain_poset(1), "C");
  FinCategory S = poset_category(chain_poset(1), "S");
  FinCategory P = product_category(C, S);
  CatFunctor projS;
  projS.dom = &P;
  projS.cod = &S;
  for (int a = 0; a < C.size(); ++a)
    for (int b = 0; b < S.size(); ++b) projS.objImg.push_back(b);
  for (int f = 0; f < C.morCount(); ++f)
    for (int g = 0; g < S.morCount(); ++g) projS.morImg.push_back(g);
  GrothSearch G = groth_fibration(projS, false);
  REQUIRE(G.fib.has_value());
  SpanDualResult D = classical_span_dual(*G.fib);
  CHECK(validate_category(*D.total) == "");
  CHECK(find_equivalence(*D.total, product_category(C, opposite_category(S))).has_value());
}

TEST_CASE("double span dual returns to the original fixture") {
  GrothFixture F;
  GrothSearch G = groth_fibration(F.proj, false);
  REQUIRE(G.fib.has_value());

  SpanDualResult D1 = classical_span_dual(*G.fib);
  FinCategory t1 = opposite_category(*D1.total);
  FinCategory b1 = opposite_category(*D1.baseOp);
  GrothFibration G1 = opposite_groth(D1.fib, t1, b1);  // cartesian again, over the base
  CHECK(validate_functor(G1.proj) == "");
  for (const auto& [key, lift] : G1.cleavage) CHECK(is_cartesian_arrow_cat(G1.proj, lift));

  SpanDualResult D2 = classical_span_dual(G1);
  FinCategory t2 = opposite_category(*D2.total);
  CHECK(validate_category(t2) == "");
  CHECK(t2.size() == F.total.size());
  CHECK(t2.morCount() == F.total.morCount());
  CHECK(find_equivalence(t2, F.total).has_value());
}

TEST_CASE("homotopy category of a nerve recovers the category") {
  GrothFixture gf;
  std::vector<FinCategory> cats = {poset_category(chain_poset(2), "[2]"),
                                   poset_category(grid_poset(), "grid"), walking_iso(),
                                   gf.total};
  for (const FinCategory& C : cats) {
    NerveResult N = nerve(C, 3);
    HoCategory H = homotopy_category(N.sset, 3);
    CHECK(validate_category(H.cat) == "");
    CHECK(H.cat.size() == C.size());
    CHECK(H.cat.morCount() == C.morCount());
    CHECK(find_equivalence(H.cat, C).has_value());
  }
}

TEST_CASE("homotopy category spots equivalence edges") {
  NerveResult N = nerve(walking_iso(), 3);
  HoCategory H = homotopy_category(N.sset, 3);
  CHECK(equivalence_edges(N.sset, H).size() == 2);

  NerveResult NI = nerve(poset_category(chain_poset(1)), 3);
  HoCategory HI = homotopy_category(NI.sset, 3);
  CHECK(equivalence_edges(NI.sset, HI).empty());
}

TEST_CASE("homotopy category refuses a non-quasicategory") {
  // composable path with no filler triangle
  auto X = std::make_shared<SimplicialSet>();
  CellId a = X->addVertex("a");
  CellId b = X->addVertex("b");
  CellId c = X->addVertex("c");
  X->addCell("e1", {vertex_ref(b), vertex_ref(a)});
  X->addCell("e2", {vertex_ref(c), vertex_ref(b)});
  X->complete = true;
  CHECK_THROWS(homotopy_category(X, 2));
}
