#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "fibdual/anodyne.hpp"
#include "fibdual/sset_ops.hpp"
#include "fibdual/twist.hpp"
#include "fixtures.hpp"

using namespace fibdual;
using namespace fixtures;

namespace {

using Kind = CertStep::Kind;

StaircasePath from_word(int n, const std::string& word) {
  StaircasePath x{n, {{0, 0}}};
  for (char c : word) {
    auto [i, j] = x.verts.back();
    x.verts.emplace_back(c == 'R' ? i + 1 : i, c == 'U' ? j + 1 : j);
  }
  return x;
}

size_t total_cells(const SimplicialSet& X) {
  size_t t = 0;
  for (int d = 0; d <= X.maxDim(); ++d) t += X.cellCount(d);
  return t;
}

// the marks a level ought to carry: its edges with constant second coordinate
std::set<CellId> jconst_edges_in(const Filtration& F, const std::set<CellId>& cells) {
  std::set<CellId> want;
  for (CellId id : cells)
    if (id.dim == 1) {
      const auto& ch = F.host.chains[1][id.idx];
      if (arrow_pair(F.n, ch[0]).second == arrow_pair(F.n, ch[1]).second) want.insert(id);
    }
  return want;
}

}  // namespace

TEST_CASE("closure collects every face of a simplex") {
  PosetNerve N = poset_nerve(arrow_poset(2));
  StaircasePath bent = from_word(2, "UURR");
  CellId top = path_simplex(N, bent).cell;
  CHECK(closure_cells(*N.sset, {top}).size() == 31);  // subchains of a 5-chain
  CHECK(closure_cells(*N.sset, {CellId{0, 0}}).size() == 1);
  CHECK(closure_cells(*N.sset, {}).empty());
  CHECK_THROWS_AS(closure_cells(*N.sset, {CellId{9, 0}}), std::invalid_argument);

  PosetNerve M = poset_nerve(arrow_poset(1));
  CHECK(closure_cells(*M.sset, {path_simplex(M, stairs_path(1)).cell}).size() == 7);
}

TEST_CASE("realized subcomplexes keep their marks") {
  PosetNerve N = poset_nerve(chain_poset(2));
  MarkedSub spine;
  for (int v = 0; v <= 2; ++v) spine.cells.insert(N.byChain.at({v}));
  spine.cells.insert(N.byChain.at({0, 1}));
  spine.cells.insert(N.byChain.at({1, 2}));
  spine.marked.insert(N.byChain.at({1, 2}));

  MarkedSSet ms = realize_sub(N.sset, spine);
  CHECK(ms.space->cellCount(0) == 3);
  CHECK(ms.space->cellCount(1) == 2);
  CHECK(ms.space->cellCount(2) == 0);
  REQUIRE(ms.marked.size() == 1);
  CHECK(ms.marked.begin()->dim == 1);
}

TEST_CASE("area filtration of the unit square") {
  Filtration F = filtration(1);
  REQUIRE(F.levels.size() == 2);
  CHECK(F.levels[0].cells.size() == 3);  // the diagonal edge and its ends
  CHECK(F.levels[0].marked.empty());
  CHECK(F.levels[1].cells.size() == 7);
  REQUIRE(F.levels[1].marked.size() == 1);
  CHECK(*F.levels[1].marked.begin() ==
        F.host.byChain.at({arrow_vertex(1, 0, 1), arrow_vertex(1, 1, 1)}));

  REQUIRE(F.attachments.size() == 1);
  REQUIRE(F.attachments[0].size() == 1);
  CHECK(F.attachments[0][0].path == stairs_path(1));
  CHECK(F.attachments[0][0].flips.empty());
  CHECK(!F.attachments[0][0].singleFace);
}

TEST_CASE("area filtration for n = 2") {
  Filtration F = filtration(2);
  REQUIRE(F.levels.size() == 3);
  CHECK(F.levels[0].cells.size() == 7);    // long triangle
  CHECK(F.levels[1].cells.size() == 31);   // plus the stairs 4-simplex
  CHECK(F.levels[2].cells.size() == total_cells(*F.host.sset));
  CHECK(F.levels[0].marked.size() == 0);
  CHECK(F.levels[1].marked.size() == 2);
  CHECK(F.levels[2].marked.size() == 4);

  REQUIRE(F.attachments.size() == 2);
  REQUIRE(F.attachments[0].size() == 1);
  REQUIRE(F.attachments[1].size() == 1);
  const LevelAttach& at = F.attachments[1][0];
  CHECK(at.path == from_word(2, "UURR"));
  CHECK(at.flips == std::vector<std::pair<int, int>>{{0, 2}});
  CHECK(at.singleFace);
  CHECK(at.cell == path_simplex(F.host, at.path).cell);
}

TEST_CASE("area filtration for n = 3 meets each stage along the flip faces") {
  Filtration F = filtration(3);
  REQUIRE(F.levels.size() == 5);

  std::vector<size_t> counts;
  for (const auto& lvl : F.attachments) counts.push_back(lvl.size());
  CHECK(counts == std::vector<size_t>{1, 2, 1, 1});
  CHECK(!F.attachments[0][0].singleFace);  // stairs: no flipvertices
  CHECK(F.attachments[1][0].singleFace);
  CHECK(F.attachments[1][1].singleFace);
  CHECK(!F.attachments[2][0].singleFace);  // two flipvertices
  CHECK(F.attachments[3][0].singleFace);

  for (size_t k = 0; k + 1 < F.levels.size(); ++k) {
    CHECK(F.levels[k].cells.size() < F.levels[k + 1].cells.size());
    CHECK(std::includes(F.levels[k + 1].cells.begin(), F.levels[k + 1].cells.end(),
                        F.levels[k].cells.begin(), F.levels[k].cells.end()));
  }
  CHECK(F.levels.back().cells.size() == total_cells(*F.host.sset));
  for (const MarkedSub& lvl : F.levels) CHECK(lvl.marked == jconst_edges_in(F, lvl.cells));

  // each path meets the previous stage in exactly the faces at its flipvertices
  for (size_t k = 0; k < F.attachments.size(); ++k)
    for (const LevelAttach& at : F.attachments[k]) {
      std::set<CellId> clos = closure_cells(*F.host.sset, {at.cell});
      std::set<CellId> inter;
      for (CellId id : clos)
        if (F.levels[k].cells.count(id)) inter.insert(id);

      std::set<CellId> expect;
      if (k == 0) {
        expect = F.levels[0].cells;  // the stairs contain the diagonal chain
      } else {
        const Cell& top = F.host.sset->cell(at.cell);
        for (int r = 0; r <= 2 * F.n; ++r)
          if (std::find(at.flips.begin(), at.flips.end(), at.path.verts[r]) != at.flips.end()) {
            auto face = closure_cells(*F.host.sset, {top.faces[r].cell});
            expect.insert(face.begin(), face.end());
          }
      }
      CHECK(inter == expect);
    }
}

TEST_CASE("filtration bounds") {
  CHECK_THROWS_AS(filtration(0), std::invalid_argument);
  CHECK_THROWS_AS(filtration(5), std::invalid_argument);
}

TEST_CASE("the filtered complex is the arrow complex of the simplex") {
  for (int n = 1; n <= 2; ++n) {
    Filtration F = filtration(n);
    ArrowSSet A = arrow_sset(standard_simplex(n), 2 * n);
    CHECK(is_isomorphic(F.host.sset, A.total));
  }
}

TEST_CASE("long-simplex certificates replay") {
  for (int n = 1; n <= 3; ++n) {
    AnodyneCertificate c = certify_long_simplex(n);
    CertVerdict v = check_certificate(c);
    CAPTURE(n);
    CAPTURE(v.at);
    CAPTURE(v.detail);
    CHECK(v.pass);

    // ids in a fresh copy of the nerve line up: the construction is deterministic
    Filtration F = filtration(n);
    std::vector<int> diag;
    for (int a = 0; a <= n; ++a) diag.push_back(arrow_vertex(n, a, a));
    CHECK(c.src.cells == closure_cells(*F.host.sset, {F.host.byChain.at(diag)}));
    CHECK(c.src.marked.empty());
    CHECK(c.tgt.cells.size() == total_cells(*F.host.sset));
    CHECK(c.tgt.marked == jconst_edges_in(F, c.tgt.cells));
  }
  CHECK(certify_long_simplex(2).tgt.marked.size() == 4);
  CHECK(certify_long_simplex(3).tgt.marked.size() == 10);
  CHECK_THROWS_AS(certify_long_simplex(0), std::invalid_argument);
  CHECK_THROWS_AS(certify_long_simplex(4), std::invalid_argument);
}

TEST_CASE("boundary-plus-long-simplex certificates replay") {
  for (int n = 1; n <= 3; ++n) {
    AnodyneCertificate c = certify_iota(n);
    CertVerdict v = check_certificate(c);
    CAPTURE(n);
    CAPTURE(v.at);
    CAPTURE(v.detail);
    CHECK(v.pass);
  }

  AnodyneCertificate c1 = certify_iota(1);
  REQUIRE(c1.steps.size() == 1);
  CHECK(c1.steps[0].kind == Kind::MarkedTriangle);
  CHECK(c1.src.cells.size() == 3);  // both endpoints and the flat diagonal
  CHECK(c1.src.marked.empty());
  CHECK(c1.tgt.cells.size() == 7);
  CHECK(c1.tgt.marked.size() == 1);

  AnodyneCertificate c2 = certify_iota(2);
  REQUIRE(c2.steps.size() == 1);
  CHECK(c2.steps[0].kind == Kind::TwoOutOfThree);
  CHECK(c2.steps[0].conclude == 2);
  REQUIRE(c2.steps[0].a);
  REQUIRE(c2.steps[0].b);
  CHECK(c2.steps[0].a->src == c2.steps[0].b->src);
  CHECK(c2.steps[0].a->src.marked.empty());

  PosetNerve N = poset_nerve(arrow_poset(2));
  auto hv = [](int a, int b) { return arrow_vertex(2, a, b); };
  // the source holds the whole arrow complex of each boundary face ...
  for (const auto& ch : std::vector<std::vector<int>>{
           {hv(0, 0)}, {hv(0, 2)}, {hv(2, 2)},
           {hv(0, 0), hv(0, 2)}, {hv(0, 0), hv(2, 2)}, {hv(0, 2), hv(2, 2)},
           {hv(0, 0), hv(0, 2), hv(2, 2)}})
    CHECK(c2.src.cells.count(N.byChain.at(ch)) == 1);
  CHECK(c2.src.marked.size() == 3);
  // ... but nothing that needs all three vertices at once
  CHECK(c2.src.cells.count(N.byChain.at({hv(0, 1), hv(1, 2)})) == 0);
  CHECK(c2.tgt.marked.size() == 4);

  CHECK_THROWS_AS(certify_iota(0), std::invalid_argument);
  CHECK_THROWS_AS(certify_iota(4), std::invalid_argument);
}

TEST_CASE("certificate replay rejects corrupted runs") {
  PosetNerve N = poset_nerve(chain_poset(2));
  auto vx = [&](int a) { return N.byChain.at({a}); };
  auto ed = [&](int a, int b) { return N.byChain.at({a, b}); };
  CellId T = N.byChain.at({0, 1, 2});

  MarkedSub spine{{vx(0), vx(1), vx(2), ed(0, 1), ed(1, 2)}, {}};
  MarkedSub full{closure_cells(*N.sset, {T}), {}};

  AnodyneCertificate good{"spine to triangle", N.sset, spine, full,
                          {CertStep{.kind = Kind::InnerHorn, .simplex = T, .horn = 1}}};
  CHECK(check_certificate(good).pass);

  SUBCASE("outer horn index") {
    AnodyneCertificate bad = good;
    bad.steps[0].horn = 0;
    CertVerdict v = check_certificate(bad);
    CHECK(!v.pass);
    CHECK(v.at == "step 1");
  }
  SUBCASE("the face the fill should provide is already there") {
    AnodyneCertificate bad = good;
    bad.src.cells.insert(ed(0, 2));
    CHECK(!check_certificate(bad).pass);
  }
  SUBCASE("simplex already present") {
    AnodyneCertificate bad = good;
    bad.src = full;
    CHECK(!check_certificate(bad).pass);
  }
  SUBCASE("a required facet is missing") {
    AnodyneCertificate bad = good;
    bad.src.cells.erase(ed(0, 1));
    CHECK(!check_certificate(bad).pass);
  }
  SUBCASE("run does not land on the stated target") {
    AnodyneCertificate bad = good;
    bad.tgt = spine;
    CertVerdict v = check_certificate(bad);
    CHECK(!v.pass);
    CHECK(v.at == "final");
  }
  SUBCASE("source not closed under faces") {
    AnodyneCertificate bad = good;
    bad.src.cells = {ed(0, 1)};
    CHECK(!check_certificate(bad).pass);
  }
  SUBCASE("mark on an absent edge") {
    AnodyneCertificate bad = good;
    bad.src.marked.insert(ed(0, 2));
    CHECK(!check_certificate(bad).pass);
  }
  SUBCASE("empty certificates") {
    AnodyneCertificate idle{"nothing to do", N.sset, spine, spine, {}};
    CHECK(check_certificate(idle).pass);
    idle.tgt = full;
    CertVerdict v = check_certificate(idle);
    CHECK(!v.pass);
    CHECK(v.at == "final");
  }
}

TEST_CASE("marked-triangle and composite steps") {
  PosetNerve N = poset_nerve(chain_poset(2));
  auto vx = [&](int a) { return N.byChain.at({a}); };
  auto ed = [&](int a, int b) { return N.byChain.at({a, b}); };
  CellId T = N.byChain.at({0, 1, 2});
  std::set<CellId> full = closure_cells(*N.sset, {T});

  AnodyneCertificate mt{"fill over the long edge",
                        N.sset,
                        {{vx(0), vx(2), ed(0, 2)}, {}},
                        {full, {ed(1, 2)}},
                        {CertStep{.kind = Kind::MarkedTriangle, .simplex = T}}};
  CHECK(check_certificate(mt).pass);

  SUBCASE("wrong edge marked") {
    AnodyneCertificate bad = mt;
    bad.tgt.marked = {ed(0, 1)};
    CertVerdict v = check_certificate(bad);
    CHECK(!v.pass);
    CHECK(v.at == "final");
  }
  SUBCASE("middle vertex already present") {
    AnodyneCertificate bad = mt;
    bad.src.cells.insert(vx(1));
    CHECK(!check_certificate(bad).pass);
  }

  AnodyneCertificate mc{"compose the marked legs",
                        N.sset,
                        {full, {ed(0, 1), ed(1, 2)}},
                        {full, {ed(0, 1), ed(1, 2), ed(0, 2)}},
                        {CertStep{.kind = Kind::MarkComposite, .simplex = T}}};
  CHECK(check_certificate(mc).pass);

  SUBCASE("one leg unmarked") {
    AnodyneCertificate bad = mc;
    bad.src.marked = {ed(0, 1)};
    bad.tgt.marked = {ed(0, 1), ed(0, 2)};
    CHECK(!check_certificate(bad).pass);
  }
  SUBCASE("composite already marked") {
    AnodyneCertificate bad = mc;
    bad.src.marked = {ed(0, 1), ed(1, 2), ed(0, 2)};
    CHECK(!check_certificate(bad).pass);
  }
}

TEST_CASE("gluing and two-out-of-three steps") {
  PosetNerve N = poset_nerve(chain_poset(2));
  auto vx = [&](int a) { return N.byChain.at({a}); };
  auto ed = [&](int a, int b) { return N.byChain.at({a, b}); };
  CellId T = N.byChain.at({0, 1, 2});
  std::set<CellId> full = closure_cells(*N.sset, {T});
  MarkedSub spine{{vx(0), vx(1), vx(2), ed(0, 1), ed(1, 2)}, {}};
  MarkedSub longEdge{{vx(0), vx(2), ed(0, 2)}, {}};

  auto mt = std::make_shared<AnodyneCertificate>(AnodyneCertificate{
      "fill over the long edge",
      N.sset,
      longEdge,
      {full, {ed(1, 2)}},
      {CertStep{.kind = Kind::MarkedTriangle, .simplex = T}}});
  auto horn = std::make_shared<AnodyneCertificate>(AnodyneCertificate{
      "spine to triangle", N.sset, spine, {full, {}},
      {CertStep{.kind = Kind::InnerHorn, .simplex = T, .horn = 1}}});

  AnodyneCertificate glue{"glue the filled triangle",
                          N.sset,
                          longEdge,
                          {full, {ed(1, 2)}},
                          {CertStep{.kind = Kind::Pushout, .a = mt}}};
  CHECK(check_certificate(glue).pass);

  SUBCASE("gluing must be exact") {
    AnodyneCertificate bad = glue;
    bad.src.cells.insert(vx(1));  // part of what the gluing would add
    bad.tgt = {full, {ed(1, 2)}};
    CHECK(!check_certificate(bad).pass);
  }
  SUBCASE("glued source must be present") {
    AnodyneCertificate bad = glue;
    bad.src = {{vx(0)}, {}};
    CHECK(!check_certificate(bad).pass);
  }
  SUBCASE("glued certificate must live in the same host") {
    PosetNerve M = poset_nerve(chain_poset(2));  // equal shape, different object
    AnodyneCertificate bad = glue;
    bad.host = M.sset;
    bad.src = {{M.byChain.at({0}), M.byChain.at({2}), M.byChain.at({0, 2})}, {}};
    CHECK(!check_certificate(bad).pass);
  }
  SUBCASE("missing leg") {
    AnodyneCertificate bad = glue;
    bad.steps[0].a = nullptr;
    CHECK(!check_certificate(bad).pass);
  }

  SUBCASE("two-out-of-three demands a common source") {
    // legs start at the long edge and at the spine respectively
    AnodyneCertificate bad{"mismatched legs",
                           N.sset,
                           {full, {ed(1, 2)}},
                           {full, {ed(1, 2)}},
                           {CertStep{.kind = Kind::TwoOutOfThree, .conclude = 2,
                                     .a = mt, .b = horn}}};
    CertVerdict v = check_certificate(bad);
    CHECK(!v.pass);
    CHECK(v.at == "step 1");
  }
  SUBCASE("conclude index is 1 or 2") {
    AnodyneCertificate bad{"bad conclude", N.sset, longEdge, longEdge,
                           {CertStep{.kind = Kind::TwoOutOfThree, .conclude = 0,
                                     .a = mt, .b = mt}}};
    CHECK(!check_certificate(bad).pass);
  }
  SUBCASE("concluding the first leg") {
    // both known legs coincide, so the concluded first leg is the identity
    AnodyneCertificate ok{"identity first leg", N.sset, longEdge, longEdge,
                          {CertStep{.kind = Kind::TwoOutOfThree, .conclude = 1,
                                    .a = mt, .b = mt}}};
    CHECK(check_certificate(ok).pass);
    AnodyneCertificate bad = ok;
    bad.src = spine;
    bad.tgt = spine;
    CHECK(!check_certificate(bad).pass);
  }
}

TEST_CASE("contiguity certificates extend one vertex at a time") {
  AnodyneCertificate c = contiguity_certificate(4, 2, {1, 2, 3});
  CHECK(c.steps.size() == 2);  // grow to 4, then down to 0
  for (const CertStep& s : c.steps) CHECK(s.kind == Kind::Pushout);
  CertVerdict v = check_certificate(c);
  CAPTURE(v.at);
  CAPTURE(v.detail);
  CHECK(v.pass);
  CHECK(c.src.marked.empty());
  CHECK(c.tgt.marked.empty());

  // source is the s-th face plus the subsimplex on F
  PosetNerve N = poset_nerve(chain_poset(4));
  std::set<CellId> want = closure_cells(*N.sset, {N.byChain.at({0, 1, 3, 4})});
  std::set<CellId> onF = closure_cells(*N.sset, {N.byChain.at({1, 2, 3})});
  want.insert(onF.begin(), onF.end());
  CHECK(c.src.cells == want);
  CHECK(c.tgt.cells == closure_cells(*N.sset, {N.byChain.at({0, 1, 2, 3, 4})}));

  AnodyneCertificate up = contiguity_certificate(3, 1, {0, 1, 2});
  CHECK(up.steps.size() == 1);
  CHECK(check_certificate(up).pass);

  // F already everything: nothing to extend
  AnodyneCertificate idle = contiguity_certificate(3, 1, {0, 1, 2, 3});
  CHECK(idle.steps.empty());
  CHECK(check_certificate(idle).pass);
  CHECK(idle.src == idle.tgt);

  for (int m = 2; m <= 5; ++m)
    for (int s = 1; s < m; ++s)
      for (int lo = 0; lo < s; ++lo)
        for (int hi = s + 1; hi <= m; ++hi) {
          std::set<int> F;
          for (int t = lo; t <= hi; ++t) F.insert(t);
          CHECK(check_certificate(contiguity_certificate(m, s, F)).pass);
        }
}

TEST_CASE("contiguity preconditions") {
  // s has to be interior to F, F contiguous and inside [0, m]
  CHECK_THROWS_AS(contiguity_certificate(3, 1, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(contiguity_certificate(3, 2, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(contiguity_certificate(4, 2, {1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(contiguity_certificate(4, 0, {0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(contiguity_certificate(4, 4, {3, 4}), std::invalid_argument);
  CHECK_THROWS_AS(contiguity_certificate(4, 2, {}), std::invalid_argument);
  CHECK_THROWS_AS(contiguity_certificate(4, 2, {1, 2, 5}), std::invalid_argument);
}
