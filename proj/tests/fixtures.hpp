#pragma once

#include "fibdual/fincat.hpp"

namespace fixtures {

using namespace fibdual;

inline FinPoset chain_poset(int n) {
  FinPoset P;
  for (int i = 0; i <= n; ++i) P.labels.push_back(std::to_string(i));
  P.leq.assign(n + 1, std::vector<char>(n + 1, 0));
  for (int a = 0; a <= n; ++a)
    for (int b = a; b <= n; ++b) P.leq[a][b] = 1;
  return P;
}

inline FinPoset grid_poset() {
  // 2x2 grid: 00 < 01, 10 < 11
  FinPoset P;
  P.labels = {"00", "01", "10", "11"};
  P.leq.assign(4, std::vector<char>(4, 0));
  auto le = [&](int a, int b) { P.leq[a][b] = 1; };
  for (int a = 0; a < 4; ++a) le(a, a);
  le(0, 1);
  le(0, 2);
  le(0, 3);
  le(1, 3);
  le(2, 3);
  return P;
}

inline FinCategory walking_iso() {
  FinCategory C;
  C.name = "iso";
  int x = C.addObject("x");
  int y = C.addObject("y");
  int u = C.addMorphism("u", x, y);
  int v = C.addMorphism("v", y, x);
  C.setComposite(v, u, C.identity[x]);
  C.setComposite(u, v, C.identity[y]);
  C.setComposite(u, C.identity[x], u);
  C.setComposite(C.identity[y], u, u);
  C.setComposite(v, C.identity[y], v);
  C.setComposite(C.identity[x], v, v);
  C.setComposite(C.identity[x], C.identity[x], C.identity[x]);
  C.setComposite(C.identity[y], C.identity[y], C.identity[y]);
  return C;
}

// total category of the running fibration: one object over 0, an arrow's
// worth of objects over 1, with chosen pullbacks a = eta*(b), a = eta*(c).
// proj holds pointers into the fixture, so keep it put.
struct GrothFixture {
  FinCategory base;  // [1]
  FinCategory total;
  CatFunctor proj;
  int eta = 2;                   // the nonidentity arrow of [1]
  int gb = -1, gc = -1, w = -1;  // selected morphisms of the total category

  GrothFixture() {
    base = poset_category(chain_poset(1), "[1]");
    FinCategory& E = total;
    E.name = "E";
    int a = E.addObject("a");
    int b = E.addObject("b");
    int c = E.addObject("c");
    w = E.addMorphism("w", b, c);
    gb = E.addMorphism("gb", a, b);
    gc = E.addMorphism("gc", a, c);
    for (int o = 0; o < 3; ++o) E.setComposite(E.identity[o], E.identity[o], E.identity[o]);
    auto unit = [&](int m) {
      E.setComposite(m, E.identity[E.morphisms[m].src], m);
      E.setComposite(E.identity[E.morphisms[m].tgt], m, m);
    };
    unit(w);
    unit(gb);
    unit(gc);
    E.setComposite(w, gb, gc);
    proj.dom = &total;
    proj.cod = &base;
    proj.objImg = {0, 1, 1};
    proj.morImg = {base.identity[0], base.identity[1], base.identity[1],
                   base.identity[1], eta, eta};
  }
  GrothFixture(const GrothFixture&) = delete;
};

// same base, but both lifts over eta pruned away: no cartesian lift into b or c
struct PrunedFixture {
  FinCategory base;
  FinCategory total;
  CatFunctor proj;

  PrunedFixture() {
    base = poset_category(chain_poset(1), "[1]");
    FinCategory& E = total;
    E.name = "E-pruned";
    E.addObject("a");
    E.addObject("b");
    E.addObject("c");
    int w = E.addMorphism("w", 1, 2);
    for (int o = 0; o < 3; ++o) E.setComposite(E.identity[o], E.identity[o], E.identity[o]);
    E.setComposite(w, E.identity[1], w);
    E.setComposite(E.identity[2], w, w);
    proj.dom = &total;
    proj.cod = &base;
    proj.objImg = {0, 1, 1};
    proj.morImg = {base.identity[0], base.identity[1], base.identity[1], base.identity[1]};
  }
  PrunedFixture(const PrunedFixture&) = delete;
};

}  // namespace fixtures
