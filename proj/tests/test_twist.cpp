#include "doctest.h"
#include "fibdual/twist.hpp"
#include "fixtures.hpp"

using namespace fibdual;
using namespace fixtures;

namespace {

// intervals of [p] ordered by inclusion
FinPoset interval_poset(int p) {
  std::vector<std::pair<int, int>> iv;
  for (int i = 0; i <= p; ++i)
    for (int j = i; j <= p; ++j) iv.emplace_back(i, j);
  FinPoset P;
  P.labels.resize(iv.size());
  P.leq.assign(iv.size(), std::vector<char>(iv.size(), 0));
  for (size_t a = 0; a < iv.size(); ++a) {
    P.labels[a] = std::to_string(iv[a].first) + std::to_string(iv[a].second);
    for (size_t b = 0; b < iv.size(); ++b)
      P.leq[a][b] = iv[b].first <= iv[a].first && iv[a].second <= iv[b].second;
  }
  return P;
}

SSetPtr boundary_delta2() {
  return subcomplex(standard_simplex(2), boundary_cells(2)).sset;
}

}  // namespace

TEST_CASE("twist of the interval is the cospan") {
  TwistedArrow T = twisted_arrow(standard_simplex(1), 1);
  REQUIRE(T.total->cellCount(0) == 3);
  REQUIRE(T.total->cellCount(1) == 2);
  CHECK(T.total->maxDim() == 1);
  CHECK(T.total->complete);
  CHECK(validate(*T.total).empty());
  CHECK(validate_map(T.proj).empty());

  CellId c00 = T.bySimplex.at(degenerate_to(vertex_ref(CellId{0, 0}), 1));
  CellId c11 = T.bySimplex.at(degenerate_to(vertex_ref(CellId{0, 1}), 1));
  CellId c01 = T.bySimplex.at(SimplexRef{CellId{1, 0}, word_identity(1)});
  std::set<std::pair<int, int>> edges;
  for (int i = 0; i < 2; ++i) {
    const Cell& e = T.total->cell(CellId{1, i});
    edges.insert({e.faces[1].cell.idx, e.faces[0].cell.idx});  // (src, tgt)
  }
  CHECK(edges == std::set<std::pair<int, int>>{{c00.idx, c01.idx}, {c11.idx, c01.idx}});
}

TEST_CASE("twist of a simplex is the interval-inclusion nerve") {
  for (int p = 1; p <= 3; ++p) {
    CAPTURE(p);
    TwistedArrow T = twisted_arrow(standard_simplex(p), p);
    PosetNerve N = poset_nerve(interval_poset(p));
    CHECK(is_isomorphic(T.total, N.sset));
  }
}

TEST_CASE("vertex and edge counts match the source strides") {
  auto grid = nerve(poset_category(grid_poset()), 3);
  for (SSetPtr X : {standard_simplex(2), boundary_delta2(), grid.sset}) {
    TwistedArrow T = twisted_arrow(X, 1);
    CHECK(T.total->cellCount(0) == static_cast<int>(X->simplices(1).size()));
    CHECK(T.total->simplices(1).size() == X->simplices(3).size());
  }
}

TEST_CASE("twist of a nerve is the nerve of the twisted arrow category") {
  auto cmp = [](const FinCategory& C, int dim) {
    NerveResult N = nerve(C, 2 * dim + 1);
    TwistedArrow T = twisted_arrow(N.sset, dim);
    NerveResult M = nerve(twisted_arrow_category(C), dim);
    CHECK(is_isomorphic(T.total, M.sset));
  };
  cmp(poset_category(chain_poset(2)), 2);
  cmp(poset_category(grid_poset()), 2);
  cmp(walking_iso(), 2);
}

TEST_CASE("projection restricts to the two halves") {
  SSetPtr X = standard_simplex(2);
  TwistedArrow T = twisted_arrow(X, 2);
  SSetMap left = compose_maps(T.range.projL, T.proj);
  SSetMap right = compose_maps(T.range.projR, T.proj);
  for (int i = 0; i < T.total->cellCount(0); ++i) {
    const SimplexRef& y = T.cellSimplex[0][i];
    CHECK(left.image(CellId{0, i}) == vertex_of(*X, y, 0));
    CHECK(right.image(CellId{0, i}) == vertex_of(*X, y, 1));
  }
  for (int i = 0; i < T.total->cellCount(1); ++i) {
    const SimplexRef& y = T.cellSimplex[1][i];
    CHECK(left.image(CellId{1, i}) == op_ref(apply(*X, y, mono_interval(3, 0, 1))));
    CHECK(right.image(CellId{1, i}) == apply(*X, y, mono_interval(3, 2, 3)));
  }
}

TEST_CASE("projection is a left fibration") {
  TwistedArrow T = twisted_arrow(standard_simplex(2), 2);
  CheckReport R = twisted_arrow_projection_check(T, 3);
  CHECK(R.pass);
  CHECK(R.problems > 0);
}

TEST_CASE("corrupted face table fails the projection check") {
  TwistedArrow T = twisted_arrow(standard_simplex(1), 1);
  auto bad = std::make_shared<SimplicialSet>();
  for (int i = 0; i < T.total->cellCount(0); ++i)
    bad->addVertex(T.total->cell(CellId{0, i}).label);
  for (int i = 0; i < T.total->cellCount(1); ++i) {
    const Cell& e = T.total->cell(CellId{1, i});
    // reverse the second edge
    if (i == 1)
      bad->addCell(e.label, {e.faces[1], e.faces[0]});
    else
      bad->addCell(e.label, {e.faces[0], e.faces[1]});
  }
  bad->complete = true;
  TwistedArrow broken = T;
  broken.total = bad;
  broken.proj.dom = bad;
  CheckReport R = twisted_arrow_projection_check(broken, 2);
  CHECK(!R.pass);
  REQUIRE(R.counterexample.has_value());
  CHECK(!replay_has_lift(broken.proj, *R.counterexample));
}

TEST_CASE("two-fold twist of the interval is the four-edge zigzag") {
  SSetPtr W = two_fold_twist(standard_simplex(1), 2);
  REQUIRE(W->cellCount(0) == 5);
  REQUIRE(W->cellCount(1) == 4);
  CHECK(W->maxDim() == 1);  // no nondegenerate 2-cells
  CHECK(W->complete);
  CHECK(validate(*W).empty());
  std::map<int, int> outdeg, indeg;
  for (int v = 0; v < 5; ++v) outdeg[v] = indeg[v] = 0;
  for (int i = 0; i < 4; ++i) {
    const Cell& e = W->cell(CellId{1, i});
    outdeg[e.faces[1].cell.idx]++;
    indeg[e.faces[0].cell.idx]++;
  }
  std::multiset<int> outs, ins;
  for (auto& [v, d] : outdeg) outs.insert(d);
  for (auto& [v, d] : indeg) ins.insert(d);
  CHECK(outs == std::multiset<int>{0, 0, 1, 1, 2});
  CHECK(ins == std::multiset<int>{0, 0, 0, 2, 2});
}

TEST_CASE("two-fold twist counts against raw simplices") {
  SSetPtr X = standard_simplex(2);
  SSetPtr W = two_fold_twist(X, 1);
  CHECK(W->cellCount(0) == static_cast<int>(X->simplices(3).size()));

  // against the iterated construction, at the vertex level
  TwistedArrow once = twisted_arrow(X, 2);
  TwistedArrow twice = twisted_arrow(once.total, 0);
  CHECK(twice.total->cellCount(0) == W->cellCount(0));
}

TEST_CASE("arrow simplicial set evaluations") {
  ArrowSSet A1 = arrow_sset(standard_simplex(1), 1);
  CHECK(A1.total->cellCount(0) == 3);
  CHECK(validate_map(A1.src).empty());
  CHECK(validate_map(A1.tgt).empty());

  NerveResult N = nerve(poset_category(chain_poset(2)), 3);
  ArrowSSet A = arrow_sset(N.sset, 3);
  CHECK(is_isomorphic(A.total, nerve(arrow_category(poset_category(chain_poset(2))), 3).sset));
  CHECK(is_cartesian_fibration(A.src, 3).pass);
  CHECK(is_cocartesian_fibration(A.tgt, 3).pass);
}

TEST_CASE("homotopy category of the interval twist is the cospan poset") {
  TwistedArrow T = twisted_arrow(standard_simplex(1), 1);
  HoCategory H = homotopy_category(T.total, 2);
  FinPoset cospan;
  cospan.labels = {"s", "m", "t"};
  cospan.leq = {{1, 1, 0}, {0, 1, 0}, {0, 1, 1}};
  CHECK(cat_equivalent(H.cat, poset_category(cospan)));
}

TEST_CASE("truncated sources are rejected") {
  auto trunc = std::make_shared<SimplicialSet>();
  trunc->addVertex("a");
  trunc->addVertex("b");
  trunc->addCell("e", {vertex_ref(CellId{0, 1}), vertex_ref(CellId{0, 0})});
  trunc->complete = false;
  CHECK_THROWS(twisted_arrow(trunc, 1));
  CHECK_THROWS(two_fold_twist(trunc, 1));
  TwistedArrow T0 = twisted_arrow(trunc, 0);  // only needs edges
  CHECK(T0.total->cellCount(0) == 3);
  CHECK(!T0.total->complete);
}
