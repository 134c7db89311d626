#include "fibdual/burnside.hpp"

#include <cassert>
#include <mutex>
#include <set>
#include <stdexcept>
#include <tuple>

namespace fibdual {

namespace {

std::mutex g_shapeMutex;
std::map<int, SpanShape> g_spanCache;
std::map<int, GridShape> g_gridCache;
std::map<int, DoubleSpanShape> g_qqCache;

SpanShape build_span_shape(int n) {
  SpanShape S;
  S.n = n;
  S.vertAt.assign(n + 1, std::vector<int>(n + 1, -1));
  FinPoset P;
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      S.vertAt[i][j] = static_cast<int>(S.verts.size());
      S.verts.push_back({i, j});
      P.labels.push_back(std::to_string(i) + "," + std::to_string(j));
    }
  int V = static_cast<int>(S.verts.size());
  P.leq.assign(V, std::vector<char>(V, 0));
  for (int a = 0; a < V; ++a)
    for (int b = 0; b < V; ++b)
      P.leq[a][b] = S.verts[a].first <= S.verts[b].first && S.verts[b].second <= S.verts[a].second;
  S.nerve = poset_nerve(P, "span" + std::to_string(n));
  if (S.nerve.chains.size() > 1)
    for (int c = 0; c < static_cast<int>(S.nerve.chains[1].size()); ++c) {
      auto [i, j] = S.verts[S.nerve.chains[1][c][0]];
      auto [k, l] = S.verts[S.nerve.chains[1][c][1]];
      CellId id{1, c};
      if (i == k) S.back.push_back(id);
      else if (j == l) S.fwd.push_back(id);
      else S.mixed.push_back(id);
    }
  for (int i = 0; i <= n; ++i)
    for (int k = i + 1; k <= n; ++k)
      for (int l = k; l <= n; ++l)
        for (int j = l + 1; j <= n; ++j) S.squares.push_back({i, k, l, j});
  return S;
}

GridShape build_grid_shape(int n) {
  GridShape G;
  G.n = n;
  G.vertAt.assign(n + 1, std::vector<int>(n + 1, -1));
  FinPoset P;
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      G.vertAt[i][j] = static_cast<int>(G.verts.size());
      G.verts.push_back({i, j});
      P.labels.push_back(std::to_string(i) + "<" + std::to_string(j));
    }
  int V = static_cast<int>(G.verts.size());
  P.leq.assign(V, std::vector<char>(V, 0));
  for (int a = 0; a < V; ++a)
    for (int b = 0; b < V; ++b)
      P.leq[a][b] = G.verts[a].first <= G.verts[b].first && G.verts[a].second <= G.verts[b].second;
  G.nerve = poset_nerve(P, "grid" + std::to_string(n));
  if (G.nerve.chains.size() > 1)
    for (int c = 0; c < static_cast<int>(G.nerve.chains[1].size()); ++c) {
      auto [i, j] = G.verts[G.nerve.chains[1][c][0]];
      auto [k, l] = G.verts[G.nerve.chains[1][c][1]];
      if (j == l && i < k) G.srcOnly.push_back(CellId{1, c});
    }
  return G;
}

DoubleSpanShape build_double_span_shape(int n) {
  DoubleSpanShape Q;
  Q.n = n;
  FinPoset P;
  for (int a = 0; a <= n; ++a)
    for (int b = a; b <= n; ++b)
      for (int c = b; c <= n; ++c)
        for (int d = c; d <= n; ++d) {
          Q.vertAt[{a, b, c, d}] = static_cast<int>(Q.verts.size());
          Q.verts.push_back({a, b, c, d});
          P.labels.push_back(std::to_string(a) + std::to_string(b) + std::to_string(c) +
                             std::to_string(d));
        }
  int V = static_cast<int>(Q.verts.size());
  P.leq.assign(V, std::vector<char>(V, 0));
  for (int x = 0; x < V; ++x)
    for (int y = 0; y < V; ++y) {
      const auto& u = Q.verts[x];
      const auto& v = Q.verts[y];
      P.leq[x][y] = u[0] <= v[0] && v[1] <= u[1] && u[2] <= v[2] && v[3] <= u[3];
    }
  Q.nerve = poset_nerve(P, "span2x" + std::to_string(n));
  return Q;
}

}  // namespace

const SpanShape& span_shape(int n) {
  std::lock_guard<std::mutex> lock(g_shapeMutex);
  auto it = g_spanCache.find(n);
  if (it != g_spanCache.end()) return it->second;
  return g_spanCache.emplace(n, build_span_shape(n)).first->second;
}

const GridShape& grid_shape(int n) {
  std::lock_guard<std::mutex> lock(g_shapeMutex);
  auto it = g_gridCache.find(n);
  if (it != g_gridCache.end()) return it->second;
  return g_gridCache.emplace(n, build_grid_shape(n)).first->second;
}

const DoubleSpanShape& double_span_shape(int n) {
  std::lock_guard<std::mutex> lock(g_shapeMutex);
  auto it = g_qqCache.find(n);
  if (it != g_qqCache.end()) return it->second;
  return g_qqCache.emplace(n, build_double_span_shape(n)).first->second;
}

// ------------------------------------------------------- pair cell engine ----

namespace {

// reindexing self-maps of the shape families, cached by the inducing map
std::mutex g_reindexMutex;
std::map<std::tuple<bool, int, int, std::vector<int>>, SSetMap> g_reindexCache;

const SSetMap& shape_reindex(bool gridFlavor, int fromN, int toN, const MonotoneMap& phi) {
  const PosetNerve& A = gridFlavor ? grid_shape(fromN).nerve : span_shape(fromN).nerve;
  const PosetNerve& B = gridFlavor ? grid_shape(toN).nerve : span_shape(toN).nerve;
  std::lock_guard<std::mutex> lock(g_reindexMutex);
  auto key = std::make_tuple(gridFlavor, fromN, toN, phi.values);
  auto it = g_reindexCache.find(key);
  if (it != g_reindexCache.end()) return it->second;
  std::function<int(int)> f;
  if (gridFlavor) {
    const GridShape& from = grid_shape(fromN);
    const GridShape& to = grid_shape(toN);
    f = [&from, &to, phi](int v) {
      auto [i, j] = from.verts[v];
      return to.vertAt[phi.values[i]][phi.values[j]];
    };
  } else {
    const SpanShape& from = span_shape(fromN);
    const SpanShape& to = span_shape(toN);
    f = [&from, &to, phi](int v) {
      auto [i, j] = from.verts[v];
      return to.vertAt[phi.values[i]][phi.values[j]];
    };
  }
  return g_reindexCache.emplace(key, poset_nerve_map(A, B, f)).first->second;
}

std::string ref_key(const SimplexRef& r) {
  std::string s = std::to_string(r.cell.dim) + ":" + std::to_string(r.cell.idx);
  for (int c : r.word.collapsed) {
    s += "s";
    s += std::to_string(c);
  }
  return s;
}

std::string pair_key(const SimplexRef& base, const SSetMap& diag) {
  std::string s = ref_key(base);
  s += "|";
  for (const auto& level : diag.images)
    for (const auto& r : level) {
      s += ref_key(r);
      s += ";";
    }
  return s;
}

// A cell is a base simplex tau plus a shape diagram m.  With opBase set the
// base is reindexed through order reversal (the total space sits over the
// opposite of the base), so face i acts on tau by the coface at n - i.
struct PairRules {
  bool opBase = false;
  bool gridFlavor = false;
  const SimplicialSet* baseSpace = nullptr;
  const std::map<std::string, CellId>* index = nullptr;

  MonotoneMap baseFace(int n, int i) const { return mono_coface(n, opBase ? n - i : i); }
  MonotoneMap baseDegTest(int n, int j) const {
    if (opBase)
      return mono_compose(mono_coface(n, n - j),
                          mono_from_word(word_degeneracy(n - 1, n - 1 - j)));
    return mono_compose(mono_coface(n, j), mono_from_word(word_degeneracy(n - 1, j)));
  }
};

std::pair<SimplexRef, SSetMap> pair_face(const PairRules& R, const SimplexRef& b,
                                         const SSetMap& m, int n, int i) {
  return {apply(*R.baseSpace, b, R.baseFace(n, i)),
          compose_maps(m, shape_reindex(R.gridFlavor, n - 1, n, mono_coface(n, i)))};
}

bool pair_degenerate_at(const PairRules& R, const SimplexRef& b, const SSetMap& m, int n, int j) {
  if (!(apply(*R.baseSpace, b, R.baseDegTest(n, j)) == b)) return false;
  MonotoneMap collapse =
      mono_compose(mono_coface(n, j), mono_from_word(word_degeneracy(n - 1, j)));
  return maps_equal(m, compose_maps(m, shape_reindex(R.gridFlavor, n, n, collapse)));
}

SimplexRef pair_normalize(const PairRules& R, const SimplexRef& b, const SSetMap& m, int n) {
  for (int j = 0; j < n; ++j)
    if (pair_degenerate_at(R, b, m, n, j)) {
      auto [fb, fm] = pair_face(R, b, m, n, j);
      SimplexRef r = pair_normalize(R, fb, fm, n - 1);
      return SimplexRef{r.cell, word_compose(r.word, word_degeneracy(n - 1, j))};
    }
  return SimplexRef{R.index->at(pair_key(b, m)), word_identity(n)};
}

// reading of the base simplex pinned under a diagram: vertex v of the shape
// contributes coordinate coord[v]
SSetMap over_map(const PosetNerve& shape, const std::vector<int>& coord, SSetPtr S,
                 const SimplexRef& b, int n) {
  SSetMap f;
  f.dom = shape.sset;
  f.cod = S;
  f.images.resize(shape.chains.size());
  for (size_t r = 0; r < shape.chains.size(); ++r)
    for (const auto& kappa : shape.chains[r]) {
      std::vector<int> vals;
      vals.reserve(kappa.size());
      for (int v : kappa) vals.push_back(coord[v]);
      f.images[r].push_back(apply(*S, b, MonotoneMap{static_cast<int>(r), n, vals}));
    }
  return f;
}

struct PairEnumeration {
  std::shared_ptr<SimplicialSet> total;
  std::vector<std::vector<SimplexRef>> cellBase;
  std::vector<std::vector<SSetMap>> cellDiag;
  std::map<std::string, CellId> index;
};

// enumerate all (base, diagram) cells through maxDim.  edgeAdmit filters the
// images of classified shape edges (isBack selects the base-facing wing);
// accept, when given, discards whole candidates (used for square conditions).
PairEnumeration enumerate_pairs(SSetPtr baseS, SSetPtr codX, bool opBase, bool gridFlavor,
                                int maxDim, const SSetMap* proj,
                                const std::function<bool(bool, const SimplexRef&)>& edgeAdmit,
                                const std::function<bool(int, const SSetMap&)>& accept) {
  PairEnumeration E;
  E.total = std::make_shared<SimplicialSet>();
  E.cellBase.resize(maxDim + 1);
  E.cellDiag.resize(maxDim + 1);
  PairRules R{opBase, gridFlavor, baseS.get(), &E.index};
  for (int n = 0; n <= maxDim; ++n) {
    const PosetNerve& sh = gridFlavor ? grid_shape(n).nerve : span_shape(n).nerve;
    std::set<CellId> backSet, fwdSet;
    std::vector<int> coord(sh.sset->cellCount(0));
    if (gridFlavor) {
      const GridShape& G = grid_shape(n);
      backSet.insert(G.srcOnly.begin(), G.srcOnly.end());
      for (int v = 0; v < static_cast<int>(G.verts.size()); ++v) coord[v] = G.verts[v].first;
    } else {
      const SpanShape& Sp = span_shape(n);
      backSet.insert(Sp.back.begin(), Sp.back.end());
      fwdSet.insert(Sp.fwd.begin(), Sp.fwd.end());
      for (int v = 0; v < static_cast<int>(Sp.verts.size()); ++v)
        coord[v] = n - Sp.verts[v].second;
    }
    for (const SimplexRef& b : baseS->simplices(n)) {
      MapProblem pb;
      pb.dom = sh.sset;
      pb.cod = codX;
      SSetMap over;
      if (proj) {
        over = over_map(sh, coord, baseS, b, n);
        pb.proj = proj;
        pb.over = &over;
      }
      pb.admit = [&](CellId id, const SimplexRef& r) {
        if (id.dim != 1) return true;
        bool isBack = backSet.count(id) > 0;
        if (!isBack && fwdSet.count(id) == 0) return true;
        return edgeAdmit(isBack, r);
      };
      int k = 0;
      for_each_map(pb, [&](const SSetMap& m) {
        for (int j = 0; j < n; ++j)
          if (pair_degenerate_at(R, b, m, n, j)) return true;
        if (accept && !accept(n, m)) return true;
        std::string label = n == 0 ? codX->cell(m.images[0][0].cell).label
                                   : ref_label(*baseS, b) + "#" + std::to_string(k);
        CellId id;
        if (n == 0) {
          id = E.total->addVertex(label);
        } else {
          std::vector<SimplexRef> faces;
          faces.reserve(n + 1);
          for (int i = 0; i <= n; ++i) {
            auto [fb, fm] = pair_face(R, b, m, n, i);
            faces.push_back(pair_normalize(R, fb, fm, n - 1));
          }
          id = E.total->addCell(label, std::move(faces));
        }
        E.index.emplace(pair_key(b, m), id);
        E.cellBase[n].push_back(b);
        E.cellDiag[n].push_back(m);
        ++k;
        return true;
      });
    }
  }
  return E;
}

bool edge_in(const std::set<CellId>& cls, const SimplexRef& e) {
  return e.cell.dim == 1 ? cls.count(e.cell) > 0 : true;  // degenerate: always
}

}  // namespace

// ---------------------------------------------------------- marked triples ----

AdequateTriple categorical_triple(std::shared_ptr<const FinCategory> C, int maxDim,
                                  const std::function<bool(int)>& ingMor,
                                  const std::function<bool(int)>& egMor, int bound) {
  AdequateTriple T;
  T.mode = AdequateTriple::Mode::Categorical;
  T.cat = C;
  auto N = std::make_shared<NerveResult>(nerve(*C, maxDim));
  T.nerveData = N;
  T.space = N->sset;
  T.bound = bound;
  const FinCategory* Craw = C.get();
  T.ingMor = [Craw, ingMor](int m) { return Craw->isIdentity(m) || ingMor(m); };
  T.egMor = [Craw, egMor](int m) { return Craw->isIdentity(m) || egMor(m); };
  T.ingressive = [Craw, N, f = T.ingMor](const SimplexRef& e) {
    return e.cell.dim == 0 || f(nerve_edge_morphism(*Craw, *N, e));
  };
  T.egressive = [Craw, N, f = T.egMor](const SimplexRef& e) {
    return e.cell.dim == 0 || f(nerve_edge_morphism(*Craw, *N, e));
  };
  return T;
}

CheckReport triple_audit(const AdequateTriple& T) {
  CheckReport rep;
  rep.maxDim = T.bound;
  SSetPtr X = T.space;
  auto fail = [&](const std::string& msg) {
    if (rep.pass) {
      rep.pass = false;
      rep.detail = msg;
    }
  };
  for (int v = 0; v < X->cellCount(0); ++v) {
    SimplexRef e = degenerate_to(vertex_ref(CellId{0, v}), 1);
    ++rep.problems;
    if (!T.ingressive(e) || !T.egressive(e))
      fail("degenerate edge unmarked at " + X->cell(CellId{0, v}).label);
  }
  int hoBound = X->complete ? T.bound : std::min(T.bound, X->maxDim());
  HoCategory ho = homotopy_category(X, hoBound);
  for (CellId c : equivalence_edges(X, ho)) {
    ++rep.problems;
    SimplexRef e = cell_ref(*X, c);
    if (!T.ingressive(e) || !T.egressive(e)) fail("equivalence unmarked: " + X->cell(c).label);
  }
  if (X->hasSimplicesAt(2))
    for (int c = 0; c < X->cellCount(2); ++c) {
      SimplexRef tri = cell_ref(*X, CellId{2, c});
      auto fs = facets(*X, tri);  // fs[2], fs[0] compose to fs[1]
      ++rep.problems;
      if (T.ingressive(fs[2]) && T.ingressive(fs[0]) && !T.ingressive(fs[1]))
        fail("ingressives not closed under composition at " + X->cell(CellId{2, c}).label);
      if (T.egressive(fs[2]) && T.egressive(fs[0]) && !T.egressive(fs[1]))
        fail("egressives not closed under composition at " + X->cell(CellId{2, c}).label);
    }
  if (T.mode == AdequateTriple::Mode::Categorical) {
    const FinCategory& C = *T.cat;
    for (int f = 0; f < C.morCount(); ++f) {
      if (!T.ingMor(f) || C.isIdentity(f)) continue;  // identity legs always pull back
      for (int e = 0; e < C.morCount(); ++e) {
        if (!T.egMor(e) || C.isIdentity(e)) continue;
        if (C.morphisms[e].tgt != C.morphisms[f].tgt) continue;
        ++rep.problems;
        bool found = false;
        for (int u = 0; u < C.morCount() && !found; ++u) {
          if (!T.egMor(u) || C.morphisms[u].tgt != C.morphisms[f].src) continue;
          for (int v : C.hom(C.morphisms[u].src, C.morphisms[e].src)) {
            if (!T.ingMor(v) || C.compose(f, u) != C.compose(e, v)) continue;
            if (cat_is_pullback(C, u, v, f, e)) {
              found = true;
              break;
            }
          }
        }
        if (!found)
          fail("no ambigressive pullback of " + C.morphisms[f].name + " along " +
               C.morphisms[e].name);
      }
    }
  } else if (rep.pass) {
    rep.detail = "base change deferred to the projection";
  }
  return rep;
}

AdequateTriple marked_subcats(const SSetMap& p, int nMax) {
  FibrationReport fr = is_cartesian_fibration(p, nMax);
  if (!fr.pass)
    throw std::invalid_argument("marked_subcats: not a cartesian fibration through dimension " +
                                std::to_string(nMax));
  AdequateTriple T;
  T.mode = AdequateTriple::Mode::Fibration;
  T.space = p.dom;
  T.bound = nMax;
  auto pc = std::make_shared<SSetMap>(p);
  auto oracle = std::make_shared<EdgeOracle>();
  oracle->p = pc.get();
  oracle->nMax = nMax;
  SSetPtr S = p.cod;
  int hoBound = S->complete ? 3 : std::min(3, S->maxDim());
  auto eqS = std::make_shared<std::set<CellId>>(
      equivalence_edges(S, homotopy_category(S, hoBound)));
  T.ingressive = [pc, eqS](const SimplexRef& e) { return edge_in(*eqS, map_ref(*pc, e)); };
  T.egressive = [pc, oracle](const SimplexRef& e) {
    return e.cell.dim == 0 || (*oracle)(e);
  };
  return T;
}

// ----------------------------------------------------------- span category ----

namespace {

struct WideSub {
  std::shared_ptr<FinCategory> cat;
  std::vector<int> toAmbient;  // subcategory morphism -> ambient morphism
};

WideSub wide_subcategory(const FinCategory& C, const std::function<bool(int)>& keep,
                         const std::string& tag) {
  WideSub out;
  out.cat = std::make_shared<FinCategory>();
  FinCategory& W = *out.cat;
  W.name = C.name.empty() ? tag : C.name + tag;
  std::vector<int> morOf(C.morCount(), -1);
  for (int o = 0; o < C.size(); ++o) W.addObject(C.objects[o]);
  for (int m = 0; m < C.morCount(); ++m) {
    if (C.isIdentity(m)) morOf[m] = W.identity[C.morphisms[m].src];
    else if (keep(m))
      morOf[m] = W.addMorphism(C.morphisms[m].name, C.morphisms[m].src, C.morphisms[m].tgt);
  }
  for (const auto& [gf, h] : C.comp) {
    if (morOf[gf.first] < 0 || morOf[gf.second] < 0) continue;
    if (morOf[h] < 0)
      throw std::invalid_argument("eff_burnside: marked class not closed under composition");
    W.setComposite(morOf[gf.first], morOf[gf.second], morOf[h]);
  }
  out.toAmbient.assign(W.morCount(), -1);
  for (int m = 0; m < C.morCount(); ++m)
    if (morOf[m] >= 0) out.toAmbient[morOf[m]] = m;
  return out;
}

// shape -> Delta^d collapse along one coordinate: i for the fwd-wing reading,
// d - j for the base-facing one
SSetMap span_to_simplex(int d, bool opSide) {
  const SpanShape& sh = span_shape(d);
  SSetMap f;
  f.dom = sh.nerve.sset;
  f.cod = standard_simplex(d);
  f.images.resize(sh.nerve.chains.size());
  for (size_t r = 0; r < sh.nerve.chains.size(); ++r)
    for (const auto& kappa : sh.nerve.chains[r]) {
      std::vector<int> vals;
      vals.reserve(kappa.size());
      for (int v : kappa)
        vals.push_back(opSide ? d - sh.verts[v].second : sh.verts[v].first);
      f.images[r].push_back(simplex_word_ref(d, vals));
    }
  return f;
}

}  // namespace

BurnsideResult eff_burnside(const AdequateTriple& T, int maxDim) {
  if (T.mode != AdequateTriple::Mode::Categorical)
    throw std::invalid_argument(
        "eff_burnside: mode mismatch; fibration-mode triples are consumed by dualize_cartesian");
  if (!T.cat || !T.nerveData || !T.ingMor || !T.egMor)
    throw std::invalid_argument("eff_burnside: categorical data missing");
  const FinCategory& C = *T.cat;
  const NerveResult& N = *T.nerveData;
  if (!N.sset->hasSimplicesAt(maxDim))
    throw std::runtime_error("eff_burnside: nerve truncated below the requested dimension");

  // pullback condition on every mixed rectangle of every candidate
  struct SquareRefs {
    SimplexRef top, left, right, bottom;
  };
  std::vector<std::vector<SquareRefs>> squareRefs(maxDim + 1);
  for (int n = 2; n <= maxDim; ++n) {
    const SpanShape& sh = span_shape(n);
    for (const auto& [i, k, l, j] : sh.squares)
      squareRefs[n].push_back(
          {nerve_chain_ref(sh.nerve, {sh.vertAt[i][j], sh.vertAt[k][j]}),
           nerve_chain_ref(sh.nerve, {sh.vertAt[i][j], sh.vertAt[i][l]}),
           nerve_chain_ref(sh.nerve, {sh.vertAt[k][j], sh.vertAt[k][l]}),
           nerve_chain_ref(sh.nerve, {sh.vertAt[i][l], sh.vertAt[k][l]})});
  }
  auto accept = [&](int n, const SSetMap& m) {
    for (const auto& sq : squareRefs[n]) {
      int top = nerve_edge_morphism(C, N, map_ref(m, sq.top));
      int left = nerve_edge_morphism(C, N, map_ref(m, sq.left));
      int right = nerve_edge_morphism(C, N, map_ref(m, sq.right));
      int bottom = nerve_edge_morphism(C, N, map_ref(m, sq.bottom));
      if (!cat_is_pullback(C, top, left, right, bottom)) return false;
    }
    return true;
  };
  auto edgeAdmit = [&](bool isBack, const SimplexRef& r) {
    return isBack ? T.egressive(r) : T.ingressive(r);
  };
  PairEnumeration E = enumerate_pairs(standard_simplex(0), T.space, false, false, maxDim,
                                      nullptr, edgeAdmit, accept);
  BurnsideResult R;
  R.sset = E.total;
  R.cellDiagram = std::move(E.cellDiag);
  R.index = std::move(E.index);

  WideSub ing = wide_subcategory(C, T.ingMor, "|fwd");
  WideSub eg = wide_subcategory(C, T.egMor, "|back");
  R.ingCat = ing.cat;
  R.egCat = eg.cat;
  NerveResult NI = nerve(*ing.cat, maxDim);
  NerveResult NE = nerve(*eg.cat, maxDim);
  R.ingNerve = NI.sset;
  R.egNerveOp = opposite(NE.sset);

  PairRules rules{false, false, standard_simplex(0).get(), &R.index};
  auto include = [&](const NerveResult& sub, const std::vector<int>& toAmbient, SSetPtr dom,
                     bool opSide) {
    SSetMap inc;
    inc.dom = dom;
    inc.cod = R.sset;
    inc.images.resize(dom->dims.size());
    for (int d = 0; d <= dom->maxDim(); ++d) {
      SSetMap collapse = span_to_simplex(d, opSide);
      SimplexRef pointBase = degenerate_to(vertex_ref(CellId{0, 0}), d);
      for (int c = 0; c < dom->cellCount(d); ++c) {
        SimplexRef ncRef;
        if (d == 0) {
          ncRef = vertex_ref(CellId{0, c});
        } else {
          std::vector<int> amb;
          for (int m : sub.strings[d][c]) amb.push_back(toAmbient[m]);
          ncRef = SimplexRef{N.byString.at(amb), word_identity(d)};
        }
        SSetMap diag = compose_maps(simplex_as_map(N.sset, ncRef), collapse);
        inc.images[d].push_back(pair_normalize(rules, pointBase, diag, d));
      }
    }
    return inc;
  };
  R.inclIng = include(NI, ing.toAmbient, NI.sset, false);
  R.inclEgOp = include(NE, eg.toAmbient, R.egNerveOp, true);
  assert(validate(*R.sset).empty());
  assert(validate_map(R.inclIng).empty());
  assert(validate_map(R.inclEgOp).empty());
  return R;
}

// ------------------------------------------------------------ dualization ----

namespace {

DualFibration dualize_engine(const SSetMap& p, int maxDim, int nMax, bool runCheck,
                             const char* who) {
  SSetPtr X = p.dom;
  SSetPtr S = p.cod;
  std::string diag = validate_map(p);
  if (!diag.empty()) throw std::invalid_argument(std::string(who) + ": " + diag);
  int need = std::max(maxDim, nMax);
  if (!X->hasSimplicesAt(need) || !S->hasSimplicesAt(need))
    throw std::runtime_error(std::string(who) + ": input truncated below the working dimension " +
                             std::to_string(need));
  if (runCheck) {
    FibrationReport fr = is_cartesian_fibration(p, nMax);
    if (!fr.pass)
      throw std::invalid_argument(std::string(who) +
                                  ": projection fails the cartesian fibration check at depth " +
                                  std::to_string(nMax));
  }
  EdgeOracle cart;
  cart.p = &p;
  cart.nMax = nMax;
  auto edgeAdmit = [&cart](bool isBack, const SimplexRef& r) {
    if (!isBack) return true;
    return r.cell.dim == 0 || cart(r);
  };
  PairEnumeration E = enumerate_pairs(S, X, true, false, maxDim, &p, edgeAdmit, nullptr);

  DualFibration D;
  D.total = E.total;
  D.innerTotal = D.total;
  D.baseOp = opposite(S);
  D.input = p;
  D.inputUsed = p;
  D.maxDim = maxDim;
  D.nMax = nMax;
  D.cellBase = std::move(E.cellBase);
  D.cellDiagram = std::move(E.cellDiag);
  D.index = std::move(E.index);
  D.proj.dom = D.total;
  D.proj.cod = D.baseOp;
  D.proj.images.resize(D.total->dims.size());
  for (int n = 0; n <= D.total->maxDim(); ++n)
    for (const SimplexRef& b : D.cellBase[n]) D.proj.images[n].push_back(op_ref(b));
  assert(validate(*D.total).empty());
  assert(validate_map(D.proj).empty());
  return D;
}

}  // namespace

DualFibration dualize_cartesian(const SSetMap& p, int maxDim, int nMax) {
  if (nMax < 0) nMax = p.dom->maxDim() + 2;
  return dualize_engine(p, maxDim, nMax, true, "dualize_cartesian");
}

DualFibration dualize_cocartesian(const SSetMap& q, int maxDim, int nMax) {
  if (nMax < 0) nMax = q.dom->maxDim() + 2;
  int need = std::max(maxDim, nMax);
  if (!q.dom->hasSimplicesAt(need) || !q.cod->hasSimplicesAt(need))
    throw std::runtime_error(
        "dualize_cocartesian: input truncated below the working dimension " +
        std::to_string(need));
  FibrationReport fr = is_cocartesian_fibration(q, nMax);
  if (!fr.pass)
    throw std::invalid_argument(
        "dualize_cocartesian: projection fails the cocartesian fibration check at depth " +
        std::to_string(nMax));
  SSetMap qop = opposite_map(q);
  DualFibration inner = dualize_engine(qop, maxDim, nMax, false, "dualize_cocartesian");
  DualFibration D;
  D.fromCocartesian = true;
  D.maxDim = maxDim;
  D.nMax = nMax;
  D.input = q;
  D.inputUsed = inner.inputUsed;
  D.innerTotal = inner.total;
  D.cellBase = std::move(inner.cellBase);
  D.cellDiagram = std::move(inner.cellDiagram);
  D.index = std::move(inner.index);
  D.total = opposite(inner.total);
  D.baseOp = opposite(inner.baseOp);
  D.proj = opposite_map(inner.proj, D.total, D.baseOp);
  assert(validate_map(D.proj).empty());
  return D;
}

SimplexRef dual_simplex(const DualFibration& D, const SimplexRef& base, const SSetMap& diag) {
  int n = base.dim();
  if (diag.dom.get() != span_shape(n).nerve.sset.get())
    throw std::invalid_argument("dual_simplex: diagram does not live on the span shape");
  PairRules R{true, false, D.inputUsed.cod.get(), &D.index};
  return pair_normalize(R, base, diag, n);
}

std::pair<SimplexRef, SimplexRef> dual_edge_legs(const DualFibration& D, int edgeIdx) {
  const SpanShape& sh = span_shape(1);
  const SSetMap& m = D.cellDiagram.at(1).at(edgeIdx);
  return {m.image(sh.back[0]), m.image(sh.fwd[0])};
}

CheckReport cocartesian_edge_characterization(const DualFibration& D, int nMax) {
  CheckReport rep;
  rep.maxDim = nMax;
  if (D.cellDiagram.size() < 2) return rep;
  SSetPtr X = D.inputUsed.dom;
  int hoBound = X->complete ? 3 : std::min(3, X->maxDim());
  auto eq = equivalence_edges(X, homotopy_category(X, hoBound));
  const SpanShape& sh = span_shape(1);
  for (int e = 0; e < D.total->cellCount(1); ++e) {
    SimplexRef g = D.cellDiagram[1][e].image(sh.fwd[0]);
    bool gEq = edge_in(eq, g);
    SimplexRef edge = cell_ref(*D.total, CellId{1, e});
    bool lifts = D.fromCocartesian ? is_cartesian_edge(D.proj, edge, nMax)
                                   : is_cocartesian_edge(D.proj, edge, nMax);
    ++rep.problems;
    if (lifts != gEq) {
      rep.pass = false;
      rep.detail = "edge " + D.total->cell(CellId{1, e}).label + ": lifting " +
                   std::string(lifts ? "holds" : "fails") + " but the fwd leg is " +
                   std::string(gEq ? "" : "not ") + "an equivalence";
      return rep;
    }
  }
  return rep;
}

// ------------------------------------------------------------- double dual ----

DoubleDualResult double_dual_prime(const SSetMap& p, int maxDim, int nMax) {
  SSetPtr X = p.dom;
  SSetPtr S = p.cod;
  if (nMax < 0) nMax = X->maxDim() + 2;
  if (!X->hasSimplicesAt(2 * maxDim))
    throw std::runtime_error(
        "double_dual_prime: total space truncated below twice the requested dimension");
  DoubleDualResult R;
  R.dual = dualize_cartesian(p, maxDim, nMax);
  R.ddual = dualize_cocartesian(R.dual.proj, maxDim, std::min(nMax, maxDim));

  EdgeOracle cart;
  cart.p = &p;
  cart.nMax = nMax;
  auto edgeAdmit = [&cart](bool isBack, const SimplexRef& r) {
    if (!isBack) return true;
    return r.cell.dim == 0 || cart(r);
  };
  PairEnumeration E = enumerate_pairs(S, X, false, true, maxDim, &p, edgeAdmit, nullptr);
  R.prime = E.total;
  R.primeBase = std::move(E.cellBase);
  R.primeDiagram = std::move(E.cellDiag);

  R.primeProj.dom = R.prime;
  R.primeProj.cod = S;
  R.alpha.dom = R.prime;
  R.alpha.cod = X;
  R.beta.dom = R.prime;
  R.beta.cod = R.ddual.total;
  int top = R.prime->maxDim();
  R.primeProj.images.resize(top + 1);
  R.alpha.images.resize(top + 1);
  R.beta.images.resize(top + 1);
  SSetPtr Vop = R.ddual.inputUsed.dom;
  for (int n = 0; n <= top; ++n) {
    const GridShape& gs = grid_shape(n);
    std::vector<int> diagIds;
    for (int t = 0; t <= n; ++t) diagIds.push_back(gs.vertAt[t][t]);
    SimplexRef diagRef = nerve_chain_ref(gs.nerve, diagIds);
    const SpanShape& sh = span_shape(n);
    for (size_t c = 0; c < R.primeBase[n].size(); ++c) {
      const SimplexRef& sg = R.primeBase[n][c];
      const SSetMap& x = R.primeDiagram[n][c];
      R.primeProj.images[n].push_back(sg);
      R.alpha.images[n].push_back(map_ref(x, diagRef));

      // repackage the square diagram as a span of spans: over a shape chain
      // kappa the base collapses along n - j, and the diagram pulls back
      // through (a, b) -> (n - j_{r-b}, n - i_{r-a})
      SSetMap m2;
      m2.dom = sh.nerve.sset;
      m2.cod = Vop;
      m2.images.resize(sh.nerve.chains.size());
      for (size_t r = 0; r < sh.nerve.chains.size(); ++r) {
        const GridShape& gn = grid_shape(n);
        const SpanShape& shr = span_shape(static_cast<int>(r));
        for (const auto& kappa : sh.nerve.chains[r]) {
          int rr = static_cast<int>(r);
          std::vector<int> vals;
          for (int v : kappa) vals.push_back(n - sh.verts[v].second);
          SimplexRef tau = apply(*S, sg, MonotoneMap{rr, n, vals});
          SSetMap psi = poset_nerve_map(shr.nerve, gn.nerve, [&](int v) {
            auto [a, b] = shr.verts[v];
            auto [iU, jU] = sh.verts[kappa[rr - a]];
            auto [iW, jW] = sh.verts[kappa[rr - b]];
            (void)iU;
            (void)jW;
            return gn.vertAt[n - jW][n - iU];
          });
          SimplexRef vref = dual_simplex(R.dual, tau, compose_maps(x, psi));
          m2.images[r].push_back(op_ref(vref));
        }
      }
      R.beta.images[n].push_back(op_ref(dual_simplex(R.ddual, sg, m2)));
    }
  }
  assert(validate(*R.prime).empty());
  assert(validate_map(R.primeProj).empty());
  assert(validate_map(R.alpha).empty());
  assert(validate_map(R.beta).empty());

  R.vertexToDdual.assign(X->cellCount(0), -1);
  for (size_t c = 0; c < R.primeBase[0].size(); ++c) {
    int xv = R.primeDiagram[0][c].images[0][0].cell.idx;
    R.vertexToDdual[xv] = R.beta.images[0][c].cell.idx;
  }
  return R;
}

SSetMap flatten_ddual_cell(const DoubleDualResult& R, CellId cell) {
  int n = cell.dim;
  const SSetMap& m2 = R.ddual.cellDiagram.at(n).at(cell.idx);
  const DoubleSpanShape& QQ = double_span_shape(n);
  const SpanShape& sh = span_shape(n);
  SSetMap flat;
  flat.dom = QQ.nerve.sset;
  flat.cod = R.dual.inputUsed.dom;
  flat.images.resize(QQ.nerve.chains.size());
  for (size_t r = 0; r < QQ.nerve.chains.size(); ++r) {
    int rr = static_cast<int>(r);
    for (const auto& kappa : QQ.nerve.chains[r]) {
      // unfold: read the outer span forwards along (n-d, n-a), then back
      // along (n-c, n-b); the image simplex carries the inner diagram
      std::vector<int> outer;
      outer.reserve(2 * kappa.size());
      for (int v : kappa) {
        const auto& q = QQ.verts[v];
        outer.push_back(sh.vertAt[n - q[3]][n - q[0]]);
      }
      for (auto it = kappa.rbegin(); it != kappa.rend(); ++it) {
        const auto& q = QQ.verts[*it];
        outer.push_back(sh.vertAt[n - q[2]][n - q[1]]);
      }
      SimplexRef inner = op_ref(map_ref(m2, nerve_chain_ref(sh.nerve, outer)));
      int k = inner.cell.dim;
      std::vector<int> alpha = word_values(inner.word);
      const SSetMap& mk = R.dual.cellDiagram.at(k).at(inner.cell.idx);
      const SpanShape& shk = span_shape(k);
      std::vector<int> mid;
      mid.reserve(kappa.size());
      for (size_t t = 0; t < kappa.size(); ++t)
        mid.push_back(shk.vertAt[alpha[t]][alpha[2 * rr + 1 - t]]);
      flat.images[r].push_back(map_ref(mk, nerve_chain_ref(shk.nerve, mid)));
    }
  }
  return flat;
}

DoubleDualAudit double_dual_cell_audit(const SSetMap& p, const SSetMap& flat, int nMax) {
  std::string diag = validate_map(flat);
  if (!diag.empty()) throw std::invalid_argument("double_dual_cell_audit: " + diag);
  if (flat.cod.get() != p.dom.get())
    throw std::invalid_argument("double_dual_cell_audit: diagram not valued in the total space");
  long vcount = flat.dom->cellCount(0);
  int n = -1;
  for (int g = 0; g <= 40; ++g) {
    long c = static_cast<long>(g + 1) * (g + 2) * (g + 3) * (g + 4) / 24;
    if (c == vcount) {
      n = g;
      break;
    }
    if (c > vcount) break;
  }
  if (n < 0 || double_span_shape(n).nerve.sset.get() != flat.dom.get())
    throw std::invalid_argument("double_dual_cell_audit: domain is not a double-span shape");
  const DoubleSpanShape& QQ = double_span_shape(n);

  DoubleDualAudit A;
  auto note = [&](bool& flag, const std::string& msg) {
    flag = false;
    A.pass = false;
    if (A.detail.empty()) A.detail = msg;
  };
  for (size_t r = 1; r < QQ.nerve.chains.size(); ++r)
    for (size_t c = 0; c < QQ.nerve.chains[r].size(); ++c) {
      const auto& kappa = QQ.nerve.chains[r][c];
      bool constA = true;
      for (int v : kappa) constA = constA && QQ.verts[v][0] == QQ.verts[kappa[0]][0];
      if (!constA) continue;
      if (!totally_degenerate(map_ref(p, flat.images[r][c])))
        note(A.coversBase, "constant-a chain over a nondegenerate base simplex");
    }
  SSetPtr X = p.dom;
  int hoBound = X->complete ? 3 : std::min(3, X->maxDim());
  auto eq = equivalence_edges(X, homotopy_category(X, hoBound));
  EdgeOracle cart;
  cart.p = &p;
  cart.nMax = nMax;
  if (QQ.nerve.chains.size() > 1)
    for (size_t c = 0; c < QQ.nerve.chains[1].size(); ++c) {
      const auto& q0 = QQ.verts[QQ.nerve.chains[1][c][0]];
      const auto& q1 = QQ.verts[QQ.nerve.chains[1][c][1]];
      int moved = -1, moves = 0;
      for (int t = 0; t < 4; ++t)
        if (q0[t] != q1[t]) {
          moved = t;
          ++moves;
        }
      if (moves != 1) continue;
      const SimplexRef& e = flat.images[1][c];
      if (moved == 0 && !(e.cell.dim == 0 || cart(e)))
        note(A.aEdgesCartesian, "a-edge with a non-cartesian image");
      if (moved == 1 && !edge_in(eq, e)) note(A.bEdgesEquivalence, "b-edge not an equivalence");
      if (moved == 3 && !edge_in(eq, e)) note(A.dEdgesEquivalence, "d-edge not an equivalence");
    }
  return A;
}

}  // namespace fibdual
