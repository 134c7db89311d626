#include "fibdual/fincat.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

#include "fibdual/fibcheck.hpp"

namespace fibdual {

using Mor = FinCategory::Mor;

bool FinCategory::isIdentity(int m) const {
  return identity[morphisms[m].src] == m && morphisms[m].src == morphisms[m].tgt;
}

int FinCategory::compose(int g, int f) const {
  auto it = comp.find({g, f});
  if (it == comp.end()) throw std::invalid_argument("compose: morphisms not composable");
  return it->second;
}

std::vector<int> FinCategory::hom(int a, int b) const {
  std::vector<int> out;
  for (int m = 0; m < morCount(); ++m)
    if (morphisms[m].src == a && morphisms[m].tgt == b) out.push_back(m);
  return out;
}

int FinCategory::addObject(const std::string& label) {
  int o = size();
  objects.push_back(label);
  int id = addMorphism("id_" + label, o, o);
  identity.push_back(id);
  return o;
}

int FinCategory::addMorphism(const std::string& label, int src, int tgt) {
  morphisms.push_back(Mor{label, src, tgt});
  return morCount() - 1;
}

void FinCategory::setComposite(int g, int f, int gf) { comp[{g, f}] = gf; }

std::string validate_category(const FinCategory& C) {
  if (static_cast<int>(C.identity.size()) != C.size()) return "identity table size";
  for (int o = 0; o < C.size(); ++o) {
    int id = C.identity[o];
    if (id < 0 || id >= C.morCount() || C.morphisms[id].src != o || C.morphisms[id].tgt != o)
      return "identity of " + C.objects[o] + " malformed";
  }
  for (int f = 0; f < C.morCount(); ++f) {
    for (int g = 0; g < C.morCount(); ++g) {
      bool comps = C.morphisms[f].tgt == C.morphisms[g].src;
      auto it = C.comp.find({g, f});
      if (comps != (it != C.comp.end()))
        return "composition table does not match composability at (" +
               C.morphisms[g].name + ", " + C.morphisms[f].name + ")";
      if (!comps) continue;
      int gf = it->second;
      if (C.morphisms[gf].src != C.morphisms[f].src || C.morphisms[gf].tgt != C.morphisms[g].tgt)
        return "composite endpoints wrong";
    }
    if (C.compose(C.identity[C.morphisms[f].tgt], f) != f) return "left unit fails";
    if (C.compose(f, C.identity[C.morphisms[f].src]) != f) return "right unit fails";
  }
  for (int f = 0; f < C.morCount(); ++f)
    for (int g = 0; g < C.morCount(); ++g) {
      if (C.morphisms[f].tgt != C.morphisms[g].src) continue;
      for (int h = 0; h < C.morCount(); ++h) {
        if (C.morphisms[g].tgt != C.morphisms[h].src) continue;
        if (C.compose(C.compose(h, g), f) != C.compose(h, C.compose(g, f)))
          return "associativity fails";
      }
    }
  return "";
}

std::string validate_functor(const CatFunctor& F) {
  const FinCategory& C = *F.dom;
  const FinCategory& D = *F.cod;
  if (static_cast<int>(F.objImg.size()) != C.size() ||
      static_cast<int>(F.morImg.size()) != C.morCount())
    return "image tables sized wrong";
  for (int m = 0; m < C.morCount(); ++m) {
    const auto& mor = C.morphisms[m];
    const auto& img = D.morphisms[F.morImg[m]];
    if (img.src != F.objImg[mor.src] || img.tgt != F.objImg[mor.tgt])
      return "endpoints not preserved at " + mor.name;
  }
  for (int o = 0; o < C.size(); ++o)
    if (F.morImg[C.identity[o]] != D.identity[F.objImg[o]])
      return "identities not preserved at " + C.objects[o];
  for (const auto& [pair, gf] : C.comp)
    if (D.compose(F.morImg[pair.first], F.morImg[pair.second]) != F.morImg[gf])
      return "composition not preserved";
  return "";
}

CatFunctor identity_functor(const FinCategory& C) {
  CatFunctor F;
  F.dom = &C;
  F.cod = &C;
  for (int o = 0; o < C.size(); ++o) F.objImg.push_back(o);
  for (int m = 0; m < C.morCount(); ++m) F.morImg.push_back(m);
  return F;
}

CatFunctor compose_functors(const CatFunctor& G, const CatFunctor& F) {
  assert(F.cod == G.dom);
  CatFunctor H;
  H.dom = F.dom;
  H.cod = G.cod;
  for (int o : F.objImg) H.objImg.push_back(G.objImg[o]);
  for (int m : F.morImg) H.morImg.push_back(G.morImg[m]);
  return H;
}

FinCategory poset_category(const FinPoset& P, const std::string& name) {
  if (!P.valid()) throw std::invalid_argument("poset_category: not a partial order");
  FinCategory C;
  C.name = name;
  std::map<std::pair<int, int>, int> arrow;
  for (int a = 0; a < P.size(); ++a) C.addObject(P.labels[a]);
  for (int o = 0; o < P.size(); ++o) arrow[{o, o}] = C.identity[o];
  for (int a = 0; a < P.size(); ++a)
    for (int b = 0; b < P.size(); ++b)
      if (a != b && P.leq[a][b])
        arrow[{a, b}] = C.addMorphism(P.labels[a] + "->" + P.labels[b], a, b);
  for (int a = 0; a < P.size(); ++a)
    for (int b = 0; b < P.size(); ++b)
      for (int c = 0; c < P.size(); ++c)
        if (P.leq[a][b] && P.leq[b][c])
          C.setComposite(arrow[{b, c}], arrow[{a, b}], arrow[{a, c}]);
  return C;
}

FinCategory opposite_category(const FinCategory& C) {
  FinCategory D;
  D.name = C.name.empty() ? "" : C.name + "^op";
  D.objects = C.objects;
  D.identity = C.identity;
  for (const auto& m : C.morphisms) D.morphisms.push_back(Mor{m.name, m.tgt, m.src});
  for (const auto& [pair, gf] : C.comp) D.comp[{pair.second, pair.first}] = gf;
  return D;
}

FinCategory product_category(const FinCategory& C, const FinCategory& D) {
  FinCategory P;
  P.name = C.name + "x" + D.name;
  auto oid = [&](int a, int b) { return a * D.size() + b; };
  for (int a = 0; a < C.size(); ++a)
    for (int b = 0; b < D.size(); ++b) P.objects.push_back("(" + C.objects[a] + "," + D.objects[b] + ")");
  std::map<std::pair<int, int>, int> mid;
  for (int f = 0; f < C.morCount(); ++f)
    for (int g = 0; g < D.morCount(); ++g) {
      mid[{f, g}] = P.addMorphism("(" + C.morphisms[f].name + "," + D.morphisms[g].name + ")",
                                  oid(C.morphisms[f].src, D.morphisms[g].src),
                                  oid(C.morphisms[f].tgt, D.morphisms[g].tgt));
    }
  P.identity.resize(P.size());
  for (int a = 0; a < C.size(); ++a)
    for (int b = 0; b < D.size(); ++b)
      P.identity[oid(a, b)] = mid.at({C.identity[a], D.identity[b]});
  for (const auto& [pc, hc] : C.comp)
    for (const auto& [pd, hd] : D.comp)
      P.setComposite(mid.at({pc.first, pd.first}), mid.at({pc.second, pd.second}),
                     mid.at({hc, hd}));
  return P;
}

FinCategory arrow_category(const FinCategory& C) {
  FinCategory A;
  A.name = C.name.empty() ? "" : "Ar(" + C.name + ")";
  for (int f = 0; f < C.morCount(); ++f) A.objects.push_back("[" + C.morphisms[f].name + "]");
  std::map<std::tuple<int, int, int, int>, int> mid;
  for (int f = 0; f < C.morCount(); ++f)
    for (int g = 0; g < C.morCount(); ++g)
      for (int a = 0; a < C.morCount(); ++a) {
        const auto& ma = C.morphisms[a];
        if (ma.src != C.morphisms[f].src || ma.tgt != C.morphisms[g].src) continue;
        for (int b = 0; b < C.morCount(); ++b) {
          const auto& mb = C.morphisms[b];
          if (mb.src != C.morphisms[f].tgt || mb.tgt != C.morphisms[g].tgt) continue;
          if (C.compose(b, f) != C.compose(g, a)) continue;
          mid[{f, g, a, b}] = A.addMorphism(
              "(" + ma.name + "," + mb.name + ")", f, g);
        }
      }
  A.identity.resize(A.size());
  for (int f = 0; f < C.morCount(); ++f)
    A.identity[f] = mid.at({f, f, C.identity[C.morphisms[f].src], C.identity[C.morphisms[f].tgt]});
  for (const auto& [k1, m1] : mid)
    for (const auto& [k2, m2] : mid) {
      auto [f, g, a, b] = k1;
      auto [g2, h, c, d] = k2;
      if (g2 != g) continue;
      A.setComposite(m2, m1, mid.at({f, h, C.compose(c, a), C.compose(d, b)}));
    }
  return A;
}

FinCategory twisted_arrow_category(const FinCategory& C) {
  FinCategory T;
  T.name = C.name.empty() ? "" : "Tw(" + C.name + ")";
  for (int f = 0; f < C.morCount(); ++f) T.objects.push_back("[" + C.morphisms[f].name + "]");
  std::map<std::tuple<int, int, int, int>, int> mid;
  for (int f = 0; f < C.morCount(); ++f)
    for (int g = 0; g < C.morCount(); ++g)
      for (int a = 0; a < C.morCount(); ++a) {
        // a runs backwards: from dom(g) into dom(f)
        const auto& ma = C.morphisms[a];
        if (ma.src != C.morphisms[g].src || ma.tgt != C.morphisms[f].src) continue;
        for (int b = 0; b < C.morCount(); ++b) {
          const auto& mb = C.morphisms[b];
          if (mb.src != C.morphisms[f].tgt || mb.tgt != C.morphisms[g].tgt) continue;
          if (C.compose(b, C.compose(f, a)) != g) continue;
          mid[{f, g, a, b}] = T.addMorphism("(" + ma.name + "," + mb.name + ")", f, g);
        }
      }
  T.identity.resize(T.size());
  for (int f = 0; f < C.morCount(); ++f)
    T.identity[f] = mid.at({f, f, C.identity[C.morphisms[f].src], C.identity[C.morphisms[f].tgt]});
  for (const auto& [k1, m1] : mid)
    for (const auto& [k2, m2] : mid) {
      auto [f, g, a, b] = k1;
      auto [g2, h, c, d] = k2;
      if (g2 != g) continue;
      T.setComposite(m2, m1, mid.at({f, h, C.compose(a, c), C.compose(d, b)}));
    }
  return T;
}

// ------------------------------------------------------------------ nerve ----

NerveResult nerve(const FinCategory& C, int maxDim) {
  NerveResult N;
  auto X = std::make_shared<SimplicialSet>();
  X->name = C.name.empty() ? "" : "N(" + C.name + ")";

  for (int o = 0; o < C.size(); ++o) X->addVertex(C.objects[o]);
  N.strings.push_back({});
  for (int o = 0; o < C.size(); ++o) N.strings[0].push_back({});

  auto extend = [&](const std::vector<std::vector<int>>& level, bool objectsLevel) {
    std::vector<std::vector<int>> next;
    if (objectsLevel) {
      for (int m = 0; m < C.morCount(); ++m)
        if (!C.isIdentity(m)) next.push_back({m});
      return next;
    }
    for (const auto& s : level) {
      int at = C.morphisms[s.back()].tgt;
      for (int m = 0; m < C.morCount(); ++m)
        if (!C.isIdentity(m) && C.morphisms[m].src == at) {
          auto longer = s;
          longer.push_back(m);
          next.push_back(std::move(longer));
        }
    }
    return next;
  };

  // normal form of a composable string that may contain identities
  auto stringRef = [&](const std::vector<int>& s) {
    std::vector<int> support;
    std::vector<int> collapsed;
    for (size_t i = 0; i < s.size(); ++i) {
      if (C.isIdentity(s[i])) collapsed.push_back(static_cast<int>(i));
      else support.push_back(s[i]);
    }
    int d = static_cast<int>(s.size());
    SurjectionWord w{d, collapsed};
    if (support.empty()) {
      int obj = C.morphisms[s[0]].src;
      return SimplexRef{CellId{0, obj}, w};
    }
    return SimplexRef{N.byString.at(support), w};
  };

  std::vector<std::vector<int>> level = N.strings[0];
  for (int d = 1; d <= maxDim + 1; ++d) {
    level = extend(level, d == 1);
    if (d == maxDim + 1) {
      X->complete = level.empty();
      break;
    }
    if (level.empty()) {
      X->complete = true;
      break;
    }
    N.strings.push_back(level);
    for (const auto& s : level) {
      std::vector<SimplexRef> faces;
      if (d == 1) {
        faces.push_back(vertex_ref(CellId{0, C.morphisms[s[0]].tgt}));
        faces.push_back(vertex_ref(CellId{0, C.morphisms[s[0]].src}));
      } else {
        for (int i = 0; i <= d; ++i) {
          std::vector<int> sub;
          if (i == 0) sub.assign(s.begin() + 1, s.end());
          else if (i == d) sub.assign(s.begin(), s.end() - 1);
          else {
            sub.assign(s.begin(), s.end());
            sub[i - 1] = C.compose(s[i], s[i - 1]);
            sub.erase(sub.begin() + i);
          }
          faces.push_back(stringRef(sub));
        }
      }
      std::string label;
      for (size_t i = 0; i < s.size(); ++i) {
        if (i) label += ".";
        label += C.morphisms[s[i]].name;
      }
      CellId id = X->addCell(label, std::move(faces));
      N.byString[s] = id;
    }
  }
  N.sset = X;
  return N;
}

SSetMap nerve_map(const NerveResult& dom, const NerveResult& cod, const CatFunctor& F) {
  const FinCategory& D = *F.cod;
  SSetMap m;
  m.dom = dom.sset;
  m.cod = cod.sset;
  m.images.resize(dom.strings.size());
  for (int o = 0; o < static_cast<int>(dom.strings[0].size()); ++o)
    m.images[0].push_back(vertex_ref(CellId{0, F.objImg[o]}));
  for (size_t d = 1; d < dom.strings.size(); ++d) {
    for (const auto& s : dom.strings[d]) {
      std::vector<int> img;
      std::vector<int> support;
      std::vector<int> collapsed;
      for (size_t i = 0; i < s.size(); ++i) {
        int f = F.morImg[s[i]];
        if (D.isIdentity(f)) collapsed.push_back(static_cast<int>(i));
        else support.push_back(f);
      }
      SurjectionWord w{static_cast<int>(d), collapsed};
      if (support.empty()) {
        int obj = D.morphisms[F.morImg[s[0]]].src;
        m.images[d].push_back(SimplexRef{CellId{0, obj}, w});
      } else {
        m.images[d].push_back(SimplexRef{cod.byString.at(support), w});
      }
    }
  }
  return m;
}

int nerve_edge_morphism(const FinCategory& C, const NerveResult& N, const SimplexRef& e) {
  if (e.dim() != 1) throw std::invalid_argument("nerve_edge_morphism: not an edge");
  if (e.cell.dim == 0) return C.identity[e.cell.idx];
  return N.strings[1][e.cell.idx][0];
}

// ------------------------------------------------------------ equivalence ----

bool cat_is_iso(const FinCategory& C, int m) {
  const auto& mor = C.morphisms[m];
  for (int r = 0; r < C.morCount(); ++r) {
    if (C.morphisms[r].src != mor.tgt || C.morphisms[r].tgt != mor.src) continue;
    if (C.compose(r, m) == C.identity[mor.src] && C.compose(m, r) == C.identity[mor.tgt])
      return true;
  }
  return false;
}

namespace {

struct EqSearch {
  const FinCategory& C;
  const FinCategory& D;
  std::vector<int> objImg;
  std::vector<int> morImg;
  std::vector<char> usedMor;

  bool homSizesOk(int a) {
    for (int b = 0; b <= a; ++b) {
      if (C.hom(a, b).size() != D.hom(objImg[a], objImg[b]).size()) return false;
      if (C.hom(b, a).size() != D.hom(objImg[b], objImg[a]).size()) return false;
    }
    return true;
  }

  bool essentiallySurjective() {
    for (int d = 0; d < D.size(); ++d) {
      bool hit = false;
      for (int a = 0; a < C.size() && !hit; ++a) {
        if (objImg[a] == d) hit = true;
        for (int m = 0; m < D.morCount() && !hit; ++m)
          if (D.morphisms[m].src == objImg[a] && D.morphisms[m].tgt == d && cat_is_iso(D, m))
            hit = true;
      }
      if (!hit) return false;
    }
    return true;
  }

  bool compConsistent(int justSet) {
    for (const auto& [pair, gf] : C.comp) {
      auto [g, f] = pair;
      if (g != justSet && f != justSet && gf != justSet) continue;
      if (morImg[g] < 0 || morImg[f] < 0 || morImg[gf] < 0) continue;
      if (D.compose(morImg[g], morImg[f]) != morImg[gf]) return false;
    }
    return true;
  }

  bool assignMorphisms(int m) {
    if (m == C.morCount()) return true;
    const auto& mor = C.morphisms[m];
    if (C.isIdentity(m)) {
      int img = D.identity[objImg[mor.src]];
      if (usedMor[img]) return false;
      morImg[m] = img;
      usedMor[img] = 1;
      bool ok = compConsistent(m) && assignMorphisms(m + 1);
      if (ok) return true;
      usedMor[img] = 0;
      morImg[m] = -1;
      return false;
    }
    for (int img : D.hom(objImg[mor.src], objImg[mor.tgt])) {
      if (usedMor[img]) continue;
      morImg[m] = img;
      usedMor[img] = 1;
      if (compConsistent(m) && assignMorphisms(m + 1)) return true;
      usedMor[img] = 0;
      morImg[m] = -1;
    }
    return false;
  }

  bool assignObjects(int a) {
    if (a == C.size()) {
      if (!essentiallySurjective()) return false;
      morImg.assign(C.morCount(), -1);
      usedMor.assign(D.morCount(), 0);
      return assignMorphisms(0);
    }
    for (int d = 0; d < D.size(); ++d) {
      objImg[a] = d;
      if (homSizesOk(a) && assignObjects(a + 1)) return true;
    }
    objImg[a] = -1;
    return false;
  }
};

}  // namespace

bool is_equivalence_functor(const CatFunctor& F) {
  const FinCategory& C = *F.dom;
  const FinCategory& D = *F.cod;
  for (int a = 0; a < C.size(); ++a)
    for (int b = 0; b < C.size(); ++b) {
      auto dHom = D.hom(F.objImg[a], F.objImg[b]);
      std::set<int> hit;
      for (int m : C.hom(a, b)) hit.insert(F.morImg[m]);
      if (hit.size() != C.hom(a, b).size() || hit.size() != dHom.size()) return false;
    }
  for (int d = 0; d < D.size(); ++d) {
    bool hit = false;
    for (int a = 0; a < C.size() && !hit; ++a) {
      if (F.objImg[a] == d) hit = true;
      for (int m = 0; m < D.morCount() && !hit; ++m)
        if (D.morphisms[m].src == F.objImg[a] && D.morphisms[m].tgt == d && cat_is_iso(D, m))
          hit = true;
    }
    if (!hit) return false;
  }
  return true;
}

std::optional<CatFunctor> find_equivalence(const FinCategory& C, const FinCategory& D) {
  EqSearch s{C, D, std::vector<int>(C.size(), -1), {}, {}};
  if (!s.assignObjects(0)) return std::nullopt;
  CatFunctor F;
  F.dom = &C;
  F.cod = &D;
  F.objImg = s.objImg;
  F.morImg = s.morImg;
  assert(validate_functor(F) == "");
  return F;
}

bool cat_equivalent(const FinCategory& C, const FinCategory& D) {
  return find_equivalence(C, D).has_value();
}

// ----------------------------------------------------------- limit squares ----

bool cat_is_pullback(const FinCategory& C, int pA, int pB, int f, int g) {
  const auto& ma = C.morphisms[pA];
  const auto& mb = C.morphisms[pB];
  if (ma.src != mb.src) return false;
  if (C.morphisms[f].src != ma.tgt || C.morphisms[g].src != mb.tgt) return false;
  if (C.morphisms[f].tgt != C.morphisms[g].tgt) return false;
  if (C.compose(f, pA) != C.compose(g, pB)) return false;
  int P = ma.src;
  for (int w = 0; w < C.size(); ++w) {
    for (int u : C.hom(w, ma.tgt))
      for (int v : C.hom(w, mb.tgt)) {
        if (C.compose(f, u) != C.compose(g, v)) continue;
        int hits = 0;
        for (int h : C.hom(w, P))
          if (C.compose(pA, h) == u && C.compose(pB, h) == v) ++hits;
        if (hits != 1) return false;
      }
  }
  return true;
}

bool cat_is_pushout(const FinCategory& C, int iA, int iB, int f, int g) {
  const auto& ma = C.morphisms[iA];
  const auto& mb = C.morphisms[iB];
  if (ma.tgt != mb.tgt) return false;
  if (C.morphisms[f].tgt != ma.src || C.morphisms[g].tgt != mb.src) return false;
  if (C.morphisms[f].src != C.morphisms[g].src) return false;
  if (C.compose(iA, f) != C.compose(iB, g)) return false;
  int P = ma.tgt;
  for (int w = 0; w < C.size(); ++w) {
    for (int u : C.hom(ma.src, w))
      for (int v : C.hom(mb.src, w)) {
        if (C.compose(u, f) != C.compose(v, g)) continue;
        int hits = 0;
        for (int h : C.hom(P, w))
          if (C.compose(h, iA) == u && C.compose(h, iB) == v) ++hits;
        if (hits != 1) return false;
      }
  }
  return true;
}

// ------------------------------------------------------------ grothendieck ----

bool is_cartesian_arrow_cat(const CatFunctor& P, int phi) {
  const FinCategory& E = *P.dom;
  const FinCategory& B = *P.cod;
  const auto& mphi = E.morphisms[phi];
  for (int psi = 0; psi < E.morCount(); ++psi) {
    if (E.morphisms[psi].tgt != mphi.tgt) continue;
    for (int g = 0; g < B.morCount(); ++g) {
      const auto& mg = B.morphisms[g];
      if (mg.src != P.objImg[E.morphisms[psi].src] || mg.tgt != P.objImg[mphi.src]) continue;
      if (B.compose(P.morImg[phi], g) != P.morImg[psi]) continue;
      int count = 0;
      for (int chi = 0; chi < E.morCount(); ++chi) {
        const auto& mchi = E.morphisms[chi];
        if (mchi.src != E.morphisms[psi].src || mchi.tgt != mphi.src) continue;
        if (P.morImg[chi] != g) continue;
        if (E.compose(phi, chi) != psi) continue;
        ++count;
      }
      if (count != 1) return false;
    }
  }
  return true;
}

bool is_cocartesian_arrow_cat(const CatFunctor& P, int phi) {
  const FinCategory& E = *P.dom;
  const FinCategory& B = *P.cod;
  const auto& mphi = E.morphisms[phi];
  for (int psi = 0; psi < E.morCount(); ++psi) {
    if (E.morphisms[psi].src != mphi.src) continue;
    for (int g = 0; g < B.morCount(); ++g) {
      const auto& mg = B.morphisms[g];
      if (mg.src != P.objImg[mphi.tgt] || mg.tgt != P.objImg[E.morphisms[psi].tgt]) continue;
      if (B.compose(g, P.morImg[phi]) != P.morImg[psi]) continue;
      int count = 0;
      for (int chi = 0; chi < E.morCount(); ++chi) {
        const auto& mchi = E.morphisms[chi];
        if (mchi.src != mphi.tgt || mchi.tgt != E.morphisms[psi].tgt) continue;
        if (P.morImg[chi] != g) continue;
        if (E.compose(chi, phi) != psi) continue;
        ++count;
      }
      if (count != 1) return false;
    }
  }
  return true;
}

GrothSearch groth_fibration(const CatFunctor& P, bool cocartesian) {
  const FinCategory& E = *P.dom;
  const FinCategory& B = *P.cod;
  GrothFibration G;
  G.total = P.dom;
  G.base = P.cod;
  G.proj = P;
  G.cocartesian = cocartesian;
  for (int e = 0; e < E.size(); ++e) {
    for (int eta = 0; eta < B.morCount(); ++eta) {
      const auto& meta = B.morphisms[eta];
      if (!cocartesian && meta.tgt != P.objImg[e]) continue;
      if (cocartesian && meta.src != P.objImg[e]) continue;
      if (B.isIdentity(eta)) {
        G.cleavage[{e, eta}] = E.identity[e];
        continue;
      }
      int pick = -1;
      for (int phi = 0; phi < E.morCount() && pick < 0; ++phi) {
        const auto& mphi = E.morphisms[phi];
        if (!cocartesian && (mphi.tgt != e || P.morImg[phi] != eta)) continue;
        if (cocartesian && (mphi.src != e || P.morImg[phi] != eta)) continue;
        bool good = cocartesian ? is_cocartesian_arrow_cat(P, phi) : is_cartesian_arrow_cat(P, phi);
        if (good) pick = phi;
      }
      if (pick < 0) return GrothSearch{std::nullopt, std::make_pair(e, eta)};
      G.cleavage[{e, eta}] = pick;
    }
  }
  return GrothSearch{std::move(G), std::nullopt};
}

GrothFibration opposite_groth(const GrothFibration& G, const FinCategory& opTotal,
                              const FinCategory& opBase) {
  GrothFibration R;
  R.total = &opTotal;
  R.base = &opBase;
  R.cocartesian = !G.cocartesian;
  R.proj.dom = &opTotal;
  R.proj.cod = &opBase;
  R.proj.objImg = G.proj.objImg;
  R.proj.morImg = G.proj.morImg;
  R.cleavage = G.cleavage;
  return R;
}

FinCategory fiber_category(const CatFunctor& P, int baseObj) {
  const FinCategory& E = *P.dom;
  const FinCategory& B = *P.cod;
  FinCategory F;
  F.name = (E.name.empty() ? "fiber" : E.name) + "|" + B.objects[baseObj];
  std::vector<int> objOf(E.size(), -1);
  std::vector<int> morOf(E.morCount(), -1);
  for (int e = 0; e < E.size(); ++e)
    if (P.objImg[e] == baseObj) {
      objOf[e] = static_cast<int>(F.objects.size());
      F.objects.push_back(E.objects[e]);
    }
  for (int m = 0; m < E.morCount(); ++m) {
    const auto& mor = E.morphisms[m];
    if (objOf[mor.src] < 0 || objOf[mor.tgt] < 0) continue;
    if (!B.isIdentity(P.morImg[m])) continue;
    morOf[m] = F.addMorphism(mor.name, objOf[mor.src], objOf[mor.tgt]);
  }
  F.identity.resize(F.size());
  for (int e = 0; e < E.size(); ++e)
    if (objOf[e] >= 0) F.identity[objOf[e]] = morOf[E.identity[e]];
  for (const auto& [pair, gf] : E.comp)
    if (morOf[pair.first] >= 0 && morOf[pair.second] >= 0)
      F.setComposite(morOf[pair.first], morOf[pair.second], morOf[gf]);
  return F;
}

SpanDualResult classical_span_dual(const GrothFibration& G) {
  if (G.cocartesian)
    throw std::invalid_argument("classical_span_dual: expects a cartesian fibration");
  const FinCategory& E = *G.total;
  const FinCategory& B = *G.base;
  const CatFunctor& P = G.proj;

  auto lift = [&](int x, int eta) { return G.cleavage.at({x, eta}); };
  auto liftDom = [&](int x, int eta) { return E.morphisms[lift(x, eta)].src; };
  // unique vertical v with through . v = given, where `through` is a cartesian
  // lift and `given` sits over P(through) already
  auto factorThrough = [&](int through, int given) {
    const auto& mt = E.morphisms[through];
    const auto& mg = E.morphisms[given];
    assert(mt.tgt == mg.tgt);
    int found = -1;
    for (int v = 0; v < E.morCount(); ++v) {
      const auto& mv = E.morphisms[v];
      if (mv.src != mg.src || mv.tgt != mt.src) continue;
      if (!B.isIdentity(P.morImg[v])) continue;
      if (E.compose(through, v) != given) continue;
      assert(found < 0);
      found = v;
    }
    assert(found >= 0);
    return found;
  };

  SpanDualResult R;
  R.total = std::make_shared<FinCategory>();
  R.baseOp = std::make_shared<FinCategory>(opposite_category(B));
  FinCategory& T = *R.total;
  T.name = E.name.empty() ? "" : E.name + "^v";
  T.objects = E.objects;

  // morphisms x ~> y: (eta: P(y) -> P(x) in B, g: eta*x -> y vertical)
  struct Key {
    int x, y, eta, g;
    auto operator<=>(const Key&) const = default;
  };
  std::map<Key, int> mid;
  std::vector<Key> keys;
  for (int x = 0; x < E.size(); ++x)
    for (int y = 0; y < E.size(); ++y)
      for (int eta = 0; eta < B.morCount(); ++eta) {
        const auto& meta = B.morphisms[eta];
        if (meta.src != P.objImg[y] || meta.tgt != P.objImg[x]) continue;
        int ex = liftDom(x, eta);
        for (int g = 0; g < E.morCount(); ++g) {
          const auto& mg = E.morphisms[g];
          if (mg.src != ex || mg.tgt != y) continue;
          if (!B.isIdentity(P.morImg[g])) continue;
          int m = T.addMorphism("(" + meta.name + ";" + mg.name + ")", x, y);
          mid[Key{x, y, eta, g}] = m;
          keys.push_back(Key{x, y, eta, g});
        }
      }
  T.identity.resize(T.size());
  for (int x = 0; x < E.size(); ++x)
    T.identity[x] = mid.at(Key{x, x, B.identity[P.objImg[x]], E.identity[x]});

  for (const auto& k1 : keys)
    for (const auto& k2 : keys) {
      if (k2.x != k1.y) continue;
      // k1: x ~> y over eta, then k2: y ~> z over theta
      int x = k1.x, z = k2.y;
      int eta = k1.eta, theta = k2.eta;
      int etaTheta = B.compose(eta, theta);
      int lam1 = lift(x, eta);
      int lam2 = lift(liftDom(x, eta), theta);
      int lam12 = lift(x, etaTheta);
      int chi = factorThrough(E.compose(lam1, lam2), lam12);
      // push k1's comparison g across theta: psi with lift(y,theta) . psi = g . lam2
      int psi = factorThrough(lift(k1.y, theta), E.compose(k1.g, lam2));
      int kk = E.compose(k2.g, E.compose(psi, chi));
      T.setComposite(mid.at(k2), mid.at(k1), mid.at(Key{x, z, etaTheta, kk}));
    }

  R.fib.total = R.total.get();
  R.fib.base = R.baseOp.get();
  R.fib.cocartesian = true;
  R.fib.proj.dom = R.total.get();
  R.fib.proj.cod = R.baseOp.get();
  R.fib.proj.objImg = P.objImg;
  R.fib.proj.morImg.resize(T.morCount());
  for (const auto& [k, m] : mid) R.fib.proj.morImg[m] = k.eta;
  for (const auto& [k, m] : mid)
    if (E.isIdentity(k.g)) R.fib.cleavage[{k.x, k.eta}] = m;
  return R;
}

// ------------------------------------------------------- homotopy category ----

namespace {

struct UnionFind {
  std::vector<int> parent;
  int add() {
    parent.push_back(static_cast<int>(parent.size()));
    return parent.back();
  }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

HoCategory homotopy_category(SSetPtr X, int bound) {
  if (!X->hasSimplicesAt(std::max(2, bound)))
    throw std::invalid_argument("homotopy_category: space not materialized through dim " +
                                std::to_string(std::max(2, bound)));
  if (!is_quasicategory(X, bound))
    throw std::runtime_error("homotopy_category: inner horn lifting fails at the checked bound");

  const auto& edges = X->simplices(1);
  std::map<SimplexRef, int> slot;
  UnionFind uf;
  for (const auto& e : edges) slot[e] = uf.add();

  for (const auto& sigma : X->simplices(2)) {
    SimplexRef f0 = face(*X, sigma, 0);
    SimplexRef f1 = face(*X, sigma, 1);
    SimplexRef f2 = face(*X, sigma, 2);
    if (f0.cell.dim == 0) uf.unite(slot.at(f1), slot.at(f2));
    if (f2.cell.dim == 0) uf.unite(slot.at(f1), slot.at(f0));
  }

  HoCategory H;
  H.cat.name = X->name.empty() ? "" : "ho(" + X->name + ")";
  for (int v = 0; v < X->cellCount(0); ++v) H.cat.objects.push_back(X->cell(CellId{0, v}).label);

  std::map<int, int> classMor;  // union-find root -> morphism index
  H.cat.identity.resize(X->cellCount(0));
  for (const auto& e : edges) {
    int root = uf.find(slot.at(e));
    if (classMor.count(root)) continue;
    int src = face(*X, e, 1).cell.idx;
    int tgt = face(*X, e, 0).cell.idx;
    classMor[root] = H.cat.addMorphism("[" + ref_label(*X, e) + "]", src, tgt);
  }
  for (int v = 0; v < X->cellCount(0); ++v) {
    SimplexRef idEdge = degenerate_to(vertex_ref(CellId{0, v}), 1);
    H.cat.identity[v] = classMor.at(uf.find(slot.at(idEdge)));
  }
  for (const auto& e : edges) H.edgeClass[e] = classMor.at(uf.find(slot.at(e)));

  // compose classes through 2-simplex witnesses; every witness must agree
  std::map<std::pair<int, int>, std::set<int>> composites;
  for (const auto& sigma : X->simplices(2)) {
    int f = H.edgeClass.at(face(*X, sigma, 2));
    int g = H.edgeClass.at(face(*X, sigma, 0));
    composites[{g, f}].insert(H.edgeClass.at(face(*X, sigma, 1)));
  }
  for (int f = 0; f < H.cat.morCount(); ++f)
    for (int g = 0; g < H.cat.morCount(); ++g) {
      if (H.cat.morphisms[f].tgt != H.cat.morphisms[g].src) continue;
      auto it = composites.find({g, f});
      if (it == composites.end())
        throw std::runtime_error("homotopy_category: no composition witness found");
      if (it->second.size() != 1)
        throw std::runtime_error("homotopy_category: composition ill-defined");
      H.cat.setComposite(g, f, *it->second.begin());
    }
  std::string diag = validate_category(H.cat);
  if (!diag.empty()) throw std::runtime_error("homotopy_category: " + diag);
  return H;
}

std::set<CellId> equivalence_edges(SSetPtr X, const HoCategory& H) {
  std::set<CellId> out;
  for (int e = 0; e < X->cellCount(1); ++e) {
    SimplexRef r{CellId{1, e}, word_identity(1)};
    if (cat_is_iso(H.cat, H.edgeClass.at(r))) out.insert(CellId{1, e});
  }
  return out;
}

}  // namespace fibdual
