#include "fibdual/sset_ops.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace fibdual {

// ---------------------------------------------------------------- posets ----

bool FinPoset::valid() const {
  int n = size();
  if (static_cast<int>(leq.size()) != n) return false;
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(leq[a].size()) != n) return false;
    if (!leq[a][a]) return false;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a != b && leq[a][b] && leq[b][a]) return false;
      for (int c = 0; c < n; ++c)
        if (leq[a][b] && leq[b][c] && !leq[a][c]) return false;
    }
  return true;
}

PosetNerve poset_nerve(const FinPoset& P, const std::string& name) {
  if (!P.valid()) throw std::invalid_argument("poset_nerve: relation is not a partial order");
  PosetNerve N;
  auto X = std::make_shared<SimplicialSet>();
  X->name = name;
  X->complete = true;

  auto chainLabel = [&](const std::vector<int>& chain) {
    std::string s;
    for (size_t i = 0; i < chain.size(); ++i) {
      if (i) s += ".";
      s += P.labels[chain[i]];
    }
    return s;
  };

  std::vector<std::vector<int>> level;
  for (int a = 0; a < P.size(); ++a) level.push_back({a});
  int d = 0;
  while (!level.empty()) {
    N.chains.push_back(level);
    for (int i = 0; i < static_cast<int>(level.size()); ++i) {
      const auto& chain = level[i];
      CellId id;
      if (d == 0) {
        id = X->addVertex(chainLabel(chain));
      } else {
        std::vector<SimplexRef> faces;
        for (int k = 0; k <= d; ++k) {
          std::vector<int> sub = chain;
          sub.erase(sub.begin() + k);
          faces.push_back(SimplexRef{N.byChain.at(sub), word_identity(d - 1)});
        }
        id = X->addCell(chainLabel(chain), std::move(faces));
      }
      N.byChain[chain] = id;
    }
    std::vector<std::vector<int>> next;
    for (const auto& chain : level) {
      int last = chain.back();
      for (int b = 0; b < P.size(); ++b) {
        if (b != last && P.leq[last][b]) {
          auto longer = chain;
          longer.push_back(b);
          next.push_back(std::move(longer));
        }
      }
    }
    level = std::move(next);
    ++d;
  }
  N.sset = X;
  return N;
}

SimplexRef nerve_chain_ref(const PosetNerve& N, const std::vector<int>& chain) {
  assert(!chain.empty());
  std::vector<int> support;
  std::vector<int> vals;
  int v = -1;
  for (size_t t = 0; t < chain.size(); ++t) {
    if (t == 0 || chain[t] != chain[t - 1]) {
      support.push_back(chain[t]);
      ++v;
    }
    vals.push_back(v);
  }
  auto it = N.byChain.find(support);
  if (it == N.byChain.end()) throw std::invalid_argument("nerve_chain_ref: not a chain");
  return SimplexRef{it->second,
                    word_from_values(static_cast<int>(chain.size()) - 1, vals)};
}

SSetMap poset_nerve_map(const PosetNerve& dom, const PosetNerve& cod,
                        const std::function<int(int)>& f) {
  SSetMap m;
  m.dom = dom.sset;
  m.cod = cod.sset;
  m.images.resize(dom.chains.size());
  for (size_t d = 0; d < dom.chains.size(); ++d) {
    for (const auto& chain : dom.chains[d]) {
      std::vector<int> img;
      img.reserve(chain.size());
      for (int a : chain) img.push_back(f(a));
      m.images[d].push_back(nerve_chain_ref(cod, img));
    }
  }
  return m;
}

// ------------------------------------------------------ standard simplex ----

namespace {

std::mutex g_simplexMutex;
std::map<int, PosetNerve> g_simplexCache;

const PosetNerve& simplex_nerve(int n) {
  std::lock_guard<std::mutex> lock(g_simplexMutex);
  auto it = g_simplexCache.find(n);
  if (it != g_simplexCache.end()) return it->second;
  FinPoset P;
  for (int i = 0; i <= n; ++i) {
    P.labels.push_back(std::to_string(i));
    P.leq.emplace_back(n + 1, 0);
  }
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) P.leq[i][j] = 1;
  std::ostringstream name;
  name << "Delta" << n;
  return g_simplexCache.emplace(n, poset_nerve(P, name.str())).first->second;
}

}  // namespace

SSetPtr standard_simplex(int n) { return simplex_nerve(n).sset; }

SimplexRef simplex_word_ref(int n, const std::vector<int>& values) {
  return nerve_chain_ref(simplex_nerve(n), values);
}

std::vector<int> simplex_ref_values(const SimplexRef& r, int n) {
  const PosetNerve& N = simplex_nerve(n);
  const auto& chain = N.chains[r.cell.dim][r.cell.idx];
  std::vector<int> out;
  out.reserve(r.dim() + 1);
  for (int t = 0; t <= r.dim(); ++t) out.push_back(chain[r.word(t)]);
  return out;
}

SSetMap simplex_map(const MonotoneMap& f) {
  assert(f.valid());
  return poset_nerve_map(simplex_nerve(f.dom), simplex_nerve(f.cod),
                         [&](int i) { return f.values[i]; });
}

SSetMap simplex_as_map(SSetPtr X, const SimplexRef& r) {
  int n = r.dim();
  const PosetNerve& N = simplex_nerve(n);
  SSetMap m;
  m.dom = N.sset;
  m.cod = X;
  m.images.resize(N.chains.size());
  for (size_t d = 0; d < N.chains.size(); ++d) {
    for (const auto& chain : N.chains[d]) {
      MonotoneMap alpha{static_cast<int>(chain.size()) - 1, n, chain};
      m.images[d].push_back(apply(*X, r, alpha));
    }
  }
  return m;
}

// ----------------------------------------------------------- subcomplex ----

SubcomplexResult subcomplex(SSetPtr X, const std::set<CellId>& keep) {
  SubcomplexResult R;
  auto S = std::make_shared<SimplicialSet>();
  S->complete = true;
  for (int d = 0; d <= X->maxDim(); ++d) {
    bool any = false;
    for (int c = 0; c < X->cellCount(d); ++c) {
      CellId id{d, c};
      if (!keep.count(id)) continue;
      any = true;
      const Cell& cell = X->cell(id);
      CellId nid;
      if (d == 0) {
        nid = S->addVertex(cell.label);
      } else {
        std::vector<SimplexRef> faces;
        for (const auto& f : cell.faces) {
          auto it = R.fromAmbient.find(f.cell);
          if (it == R.fromAmbient.end())
            throw std::invalid_argument("subcomplex: kept cells not closed under faces");
          faces.push_back(SimplexRef{it->second, f.word});
        }
        nid = S->addCell(cell.label, std::move(faces));
      }
      R.fromAmbient[id] = nid;
      R.toAmbient[nid] = id;
    }
    (void)any;
  }
  R.sset = S;
  R.inclusion.dom = S;
  R.inclusion.cod = X;
  R.inclusion.images.resize(S->dims.size());
  for (const auto& [nid, oid] : R.toAmbient)
    R.inclusion.images[nid.dim].push_back(SimplexRef{oid, word_identity(oid.dim)});
  return R;
}

std::set<CellId> boundary_cells(int n) {
  const PosetNerve& N = simplex_nerve(n);
  std::set<CellId> keep;
  for (int d = 0; d < n; ++d)
    for (int c = 0; c < static_cast<int>(N.chains[d].size()); ++c) keep.insert(CellId{d, c});
  return keep;
}

std::set<CellId> horn_cells(int n, const std::set<int>& A) {
  if (A.empty()) throw std::invalid_argument("horn_cells: empty omission set is the boundary");
  if (static_cast<int>(A.size()) > n)
    throw std::invalid_argument("horn_cells: omission set must leave at least one facet");
  for (int a : A)
    if (a < 0 || a > n) throw std::invalid_argument("horn_cells: vertex out of range");
  const PosetNerve& N = simplex_nerve(n);
  std::set<CellId> keep;
  for (int d = 0; d <= n; ++d) {
    for (int c = 0; c < static_cast<int>(N.chains[d].size()); ++c) {
      const auto& chain = N.chains[d][c];
      bool in = false;
      for (int a = 0; a <= n && !in; ++a) {
        if (A.count(a)) continue;
        if (!std::binary_search(chain.begin(), chain.end(), a)) in = true;
      }
      if (in) keep.insert(CellId{d, c});
    }
  }
  return keep;
}

// ------------------------------------------------------------- opposite ----

SimplexRef op_ref(const SimplexRef& r) { return SimplexRef{r.cell, word_reverse(r.word)}; }

SSetPtr opposite(SSetPtr X) {
  auto Y = std::make_shared<SimplicialSet>();
  Y->complete = X->complete;
  Y->name = X->name.empty() ? "" : X->name + "^op";
  Y->dims.resize(X->dims.size());
  for (int d = 0; d <= X->maxDim(); ++d) {
    for (int c = 0; c < X->cellCount(d); ++c) {
      const Cell& cell = X->cell(CellId{d, c});
      Cell out;
      out.label = cell.label;
      for (int i = d; i >= 0; --i)
        if (d >= 1) out.faces.push_back(op_ref(cell.faces[i]));
      Y->dims[d].push_back(std::move(out));
    }
  }
  return Y;
}

SSetMap opposite_map(const SSetMap& f, SSetPtr opDom, SSetPtr opCod) {
  SSetMap g;
  g.dom = opDom;
  g.cod = opCod;
  g.images.resize(f.images.size());
  for (size_t d = 0; d < f.images.size(); ++d)
    for (const auto& r : f.images[d]) g.images[d].push_back(op_ref(r));
  return g;
}

SSetMap opposite_map(const SSetMap& f) {
  return opposite_map(f, opposite(f.dom), opposite(f.cod));
}

// -------------------------------------------------------------- product ----

namespace {

struct PairSplit {
  SurjectionWord a, b, e;
};

// w1 = a.e, w2 = b.e with collapsed(a), collapsed(b) disjoint
PairSplit pair_split(const SurjectionWord& w1, const SurjectionWord& w2) {
  assert(w1.n == w2.n);
  PairSplit out;
  std::set_intersection(w1.collapsed.begin(), w1.collapsed.end(), w2.collapsed.begin(),
                        w2.collapsed.end(), std::back_inserter(out.e.collapsed));
  out.e.n = w1.n;
  std::vector<int> ev = word_values(out.e);
  auto quot = [&](const SurjectionWord& w) {
    std::vector<int> vals(out.e.m() + 1);
    std::vector<int> wv = word_values(w);
    for (int t = 0; t <= w.n; ++t) vals[ev[t]] = wv[t];
    return word_from_values(out.e.m(), vals);
  };
  out.a = quot(w1);
  out.b = quot(w2);
  return out;
}

void require_materialized(const SimplicialSet& X, int d, const char* who) {
  if (!X.hasSimplicesAt(d)) {
    std::ostringstream os;
    os << who << ": input not materialized through dimension " << d;
    throw std::invalid_argument(os.str());
  }
}

bool disjoint_collapse(const SurjectionWord& a, const SurjectionWord& b) {
  size_t i = 0, j = 0;
  while (i < a.collapsed.size() && j < b.collapsed.size()) {
    if (a.collapsed[i] == b.collapsed[j]) return false;
    if (a.collapsed[i] < b.collapsed[j]) ++i;
    else ++j;
  }
  return true;
}

}  // namespace

ProductResult product(SSetPtr X, SSetPtr Y, int maxDim) {
  if (maxDim < 0) {
    if (!X->complete || !Y->complete)
      throw std::invalid_argument("product: need a dimension bound for truncated factors");
    maxDim = std::max(0, X->maxDim()) + std::max(0, Y->maxDim());
  }
  ProductResult R;
  auto P = std::make_shared<SimplicialSet>();
  P->name = (X->name.empty() || Y->name.empty()) ? "" : X->name + "x" + Y->name;
  P->complete =
      X->complete && Y->complete && maxDim >= X->maxDim() + Y->maxDim();
  P->dims.resize(maxDim + 1);
  R.pairs.resize(maxDim + 1);

  for (int n = 0; n <= maxDim; ++n) {
    require_materialized(*X, n, "product");
    require_materialized(*Y, n, "product");
    for (const auto& x : X->simplices(n)) {
      for (const auto& y : Y->simplices(n)) {
        if (!disjoint_collapse(x.word, y.word)) continue;
        Cell cell;
        cell.label = ref_label(*X, x) + "|" + ref_label(*Y, y);
        if (n >= 1) {
          for (int i = 0; i <= n; ++i) {
            SimplexRef fx = face(*X, x, i);
            SimplexRef fy = face(*Y, y, i);
            PairSplit sp = pair_split(fx.word, fy.word);
            CellId target = R.index.at({SimplexRef{fx.cell, sp.a}, SimplexRef{fy.cell, sp.b}});
            cell.faces.push_back(SimplexRef{target, sp.e});
          }
        }
        P->dims[n].push_back(std::move(cell));
        CellId id{n, static_cast<int>(P->dims[n].size()) - 1};
        R.index[{x, y}] = id;
        R.pairs[n].push_back({x, y});
      }
    }
  }
  if (P->complete)
    while (!P->dims.empty() && P->dims.back().empty()) {
      P->dims.pop_back();
      R.pairs.pop_back();
    }
  R.sset = P;
  R.projL.dom = P;
  R.projL.cod = X;
  R.projR.dom = P;
  R.projR.cod = Y;
  R.projL.images.resize(P->dims.size());
  R.projR.images.resize(P->dims.size());
  for (int n = 0; n <= P->maxDim(); ++n)
    for (const auto& [x, y] : R.pairs[n]) {
      R.projL.images[n].push_back(x);
      R.projR.images[n].push_back(y);
    }
  return R;
}

SimplexRef product_ref(const ProductResult& P, const SimplexRef& x, const SimplexRef& y) {
  assert(x.dim() == y.dim());
  PairSplit sp = pair_split(x.word, y.word);
  auto it = P.index.find({SimplexRef{x.cell, sp.a}, SimplexRef{y.cell, sp.b}});
  if (it == P.index.end()) throw std::logic_error("product_ref: pair beyond materialized range");
  return SimplexRef{it->second, sp.e};
}

SSetMap product_map(const ProductResult& domP, const ProductResult& codP, const SSetMap& f,
                    const SSetMap& g) {
  assert(f.dom.get() == domP.projL.cod.get() && g.dom.get() == domP.projR.cod.get());
  assert(f.cod.get() == codP.projL.cod.get() && g.cod.get() == codP.projR.cod.get());
  SSetMap m;
  m.dom = domP.sset;
  m.cod = codP.sset;
  m.images.resize(domP.pairs.size());
  for (size_t n = 0; n < domP.pairs.size(); ++n)
    for (const auto& [x, y] : domP.pairs[n])
      m.images[n].push_back(product_ref(codP, map_ref(f, x), map_ref(g, y)));
  return m;
}

PullbackResult pullback(const SSetMap& f, const SSetMap& g, int maxDim) {
  if (f.cod.get() != g.cod.get())
    throw std::invalid_argument("pullback: maps must share a codomain");
  SSetPtr X = f.dom, Y = g.dom;
  if (maxDim < 0) {
    if (!X->complete || !Y->complete)
      throw std::invalid_argument("pullback: need a dimension bound for truncated factors");
    maxDim = std::max(0, X->maxDim()) + std::max(0, Y->maxDim());
  }
  PullbackResult R;
  auto P = std::make_shared<SimplicialSet>();
  P->complete = X->complete && Y->complete && maxDim >= X->maxDim() + Y->maxDim();
  P->dims.resize(maxDim + 1);
  R.pairs.resize(maxDim + 1);

  for (int n = 0; n <= maxDim; ++n) {
    require_materialized(*X, n, "pullback");
    require_materialized(*Y, n, "pullback");
    for (const auto& x : X->simplices(n)) {
      SimplexRef fx = map_ref(f, x);
      for (const auto& y : Y->simplices(n)) {
        if (!disjoint_collapse(x.word, y.word)) continue;
        if (!(fx == map_ref(g, y))) continue;
        Cell cell;
        cell.label = ref_label(*X, x) + "|" + ref_label(*Y, y);
        if (n >= 1) {
          for (int i = 0; i <= n; ++i) {
            SimplexRef ax = face(*X, x, i);
            SimplexRef ay = face(*Y, y, i);
            PairSplit sp = pair_split(ax.word, ay.word);
            CellId target = R.index.at({SimplexRef{ax.cell, sp.a}, SimplexRef{ay.cell, sp.b}});
            cell.faces.push_back(SimplexRef{target, sp.e});
          }
        }
        P->dims[n].push_back(std::move(cell));
        CellId id{n, static_cast<int>(P->dims[n].size()) - 1};
        R.index[{x, y}] = id;
        R.pairs[n].push_back({x, y});
      }
    }
  }
  if (P->complete)
    while (!P->dims.empty() && P->dims.back().empty()) {
      P->dims.pop_back();
      R.pairs.pop_back();
    }
  R.sset = P;
  R.projL.dom = P;
  R.projL.cod = X;
  R.projR.dom = P;
  R.projR.cod = Y;
  R.projL.images.resize(P->dims.size());
  R.projR.images.resize(P->dims.size());
  for (int n = 0; n <= P->maxDim(); ++n)
    for (const auto& [x, y] : R.pairs[n]) {
      R.projL.images[n].push_back(x);
      R.projR.images[n].push_back(y);
    }
  return R;
}

SimplexRef pullback_ref(const PullbackResult& P, const SimplexRef& x, const SimplexRef& y) {
  assert(x.dim() == y.dim());
  PairSplit sp = pair_split(x.word, y.word);
  auto it = P.index.find({SimplexRef{x.cell, sp.a}, SimplexRef{y.cell, sp.b}});
  if (it == P.index.end()) throw std::logic_error("pullback_ref: pair not present");
  return SimplexRef{it->second, sp.e};
}

// ----------------------------------------------------------------- join ----

namespace {

// join word of refs with dims p', q' inside a (p'+q'+1)-simplex
SurjectionWord join_word(const SurjectionWord& wx, const SurjectionWord& wy) {
  SurjectionWord w;
  w.n = wx.n + wy.n + 1;
  w.collapsed = wx.collapsed;
  for (int t : wy.collapsed) w.collapsed.push_back(wx.n + 1 + t);
  return w;
}

}  // namespace

JoinResult join(SSetPtr X, SSetPtr Y, int maxDim) {
  if (maxDim < 0) {
    if (!X->complete || !Y->complete)
      throw std::invalid_argument("join: need a dimension bound for truncated factors");
    maxDim = X->maxDim() + Y->maxDim() + 1;
    if (X->totalCells() == 0) maxDim = Y->maxDim();
    if (Y->totalCells() == 0) maxDim = std::max(X->maxDim(), 0);
    if (maxDim < 0) maxDim = 0;
  }
  JoinResult R;
  auto J = std::make_shared<SimplicialSet>();
  J->complete = X->complete && Y->complete && maxDim >= X->maxDim() + Y->maxDim() + 1;
  J->dims.resize(maxDim + 1);

  auto leftRef = [&](const SimplexRef& r) {
    return SimplexRef{R.leftIndex.at(r.cell), r.word};
  };
  auto rightRef = [&](const SimplexRef& r) {
    return SimplexRef{R.rightIndex.at(r.cell), r.word};
  };
  auto pairRef = [&](const SimplexRef& x, const SimplexRef& y) {
    return SimplexRef{R.pairIndex.at({x.cell, y.cell}), join_word(x.word, y.word)};
  };

  for (int n = 0; n <= maxDim; ++n) {
    // X block
    for (int c = 0; c < X->cellCount(n); ++c) {
      const Cell& cell = X->cell(CellId{n, c});
      Cell out;
      out.label = cell.label;
      for (const auto& f : cell.faces) out.faces.push_back(leftRef(f));
      J->dims[n].push_back(std::move(out));
      R.leftIndex[CellId{n, c}] = CellId{n, static_cast<int>(J->dims[n].size()) - 1};
    }
    // Y block
    for (int c = 0; c < Y->cellCount(n); ++c) {
      const Cell& cell = Y->cell(CellId{n, c});
      Cell out;
      out.label = cell.label;
      for (const auto& f : cell.faces) out.faces.push_back(rightRef(f));
      J->dims[n].push_back(std::move(out));
      R.rightIndex[CellId{n, c}] = CellId{n, static_cast<int>(J->dims[n].size()) - 1};
    }
    // mixed block: p + q + 1 = n over nondegenerate cells
    for (int p = 0; p < n; ++p) {
      int q = n - 1 - p;
      if (p > X->maxDim() || q > Y->maxDim()) continue;
      for (int cx = 0; cx < X->cellCount(p); ++cx) {
        for (int cy = 0; cy < Y->cellCount(q); ++cy) {
          SimplexRef x{CellId{p, cx}, word_identity(p)};
          SimplexRef y{CellId{q, cy}, word_identity(q)};
          Cell out;
          out.label = X->cell(x.cell).label + "*" + Y->cell(y.cell).label;
          for (int i = 0; i <= n; ++i) {
            if (i <= p) {
              if (p == 0) out.faces.push_back(rightRef(y));
              else out.faces.push_back(pairRef(face(*X, x, i), y));
            } else {
              if (q == 0) out.faces.push_back(leftRef(x));
              else out.faces.push_back(pairRef(x, face(*Y, y, i - p - 1)));
            }
          }
          J->dims[n].push_back(std::move(out));
          R.pairIndex[{x.cell, y.cell}] = CellId{n, static_cast<int>(J->dims[n].size()) - 1};
        }
      }
    }
  }
  // trim empty top levels
  while (!J->dims.empty() && J->dims.back().empty()) J->dims.pop_back();
  R.sset = J;
  R.inclL.dom = X;
  R.inclL.cod = J;
  R.inclL.images.resize(X->dims.size());
  for (const auto& [xid, jid] : R.leftIndex)
    R.inclL.images[xid.dim].push_back(SimplexRef{jid, word_identity(jid.dim)});
  R.inclR.dom = Y;
  R.inclR.cod = J;
  R.inclR.images.resize(Y->dims.size());
  for (const auto& [yid, jid] : R.rightIndex)
    R.inclR.images[yid.dim].push_back(SimplexRef{jid, word_identity(jid.dim)});
  return R;
}

SimplexRef join_pair_ref(const JoinResult& J, const SimplexRef& x, const SimplexRef& y) {
  return SimplexRef{J.pairIndex.at({x.cell, y.cell}), join_word(x.word, y.word)};
}

// ---------------------------------------------------------- exponential ----

ExponentialResult exponential(SSetPtr X, SSetPtr Y, int maxDim) {
  if (!Y->complete) throw std::invalid_argument("exponential: exponent must be complete");
  ExponentialResult R;
  R.base = X;
  R.exponent = Y;
  auto E = std::make_shared<SimplicialSet>();
  E->complete = false;  // mapping objects are only ever materialized to a bound
  E->dims.resize(maxDim + 1);
  R.cellMaps.resize(maxDim + 1);

  // normal form of every map Y x Delta^d -> X seen so far, keyed by image table
  std::vector<std::map<std::vector<std::vector<SimplexRef>>, SimplexRef>> normal(maxDim + 1);

  for (int n = 0; n <= maxDim; ++n) {
    R.cylinders.push_back(product(Y, standard_simplex(n), -1));
    const ProductResult& cyl = R.cylinders[n];
    require_materialized(*X, Y->maxDim() + n, "exponential");

    MapProblem pb;
    pb.dom = cyl.sset;
    pb.cod = X;
    std::vector<SSetMap> maps = all_maps(pb);
    std::sort(maps.begin(), maps.end(),
              [](const SSetMap& a, const SSetMap& b) { return a.images < b.images; });

    for (const auto& h : maps) {
      SimplexRef nf;
      bool degenerate = false;
      for (int j = 0; j < n && !degenerate; ++j) {
        // candidate lower map g = h . (id x d_j); h degenerate at j iff g . (id x s_j) == h
        SSetMap dj = simplex_map(mono_coface(n, j));
        SSetMap g = compose_maps(h, product_map(R.cylinders[n - 1], cyl, identity_map(Y), dj));
        SurjectionWord sj = word_degeneracy(n - 1, j);
        SSetMap sjm = simplex_map(MonotoneMap{n, n - 1, word_values(sj)});
        SSetMap back = compose_maps(g, product_map(cyl, R.cylinders[n - 1], identity_map(Y), sjm));
        if (maps_equal(back, h)) {
          SimplexRef gnf = normal[n - 1].at(g.images);
          nf = SimplexRef{gnf.cell, word_compose(gnf.word, sj)};
          degenerate = true;
        }
      }
      if (!degenerate) {
        Cell cell;
        std::ostringstream label;
        label << "h" << n << "_" << E->dims[n].size();
        cell.label = label.str();
        for (int i = 0; i <= n && n >= 1; ++i) {
          SSetMap di = simplex_map(mono_coface(n, i));
          SSetMap fi =
              compose_maps(h, product_map(R.cylinders[n - 1], cyl, identity_map(Y), di));
          cell.faces.push_back(normal[n - 1].at(fi.images));
        }
        if (n == 0) E->addVertex(cell.label);
        else E->addCell(cell.label, cell.faces);
        R.cellMaps[n].push_back(h);
        nf = SimplexRef{CellId{n, static_cast<int>(E->dims[n].size()) - 1}, word_identity(n)};
      }
      normal[n][h.images] = nf;
    }
  }
  R.sset = E;
  return R;
}

SSetMap exponential_eval(const ExponentialResult& E, int yVertex) {
  SSetMap m;
  m.dom = E.sset;
  m.cod = E.base;
  m.images.resize(E.sset->dims.size());
  for (int n = 0; n <= E.sset->maxDim(); ++n) {
    for (const auto& h : E.cellMaps[n]) {
      SimplexRef yv = degenerate_to(vertex_ref(CellId{0, yVertex}), n);
      SimplexRef top{CellId{n, 0}, word_identity(n)};  // Delta^n has one top cell
      SimplexRef arg = product_ref(E.cylinders[n], yv, top);
      m.images[n].push_back(map_ref(h, arg));
    }
  }
  return m;
}

// ---------------------------------------------------------------- other ----

std::string ref_label(const SimplicialSet& X, const SimplexRef& r) {
  std::string s = X.cell(r.cell).label;
  if (!r.word.identity()) {
    s += ".s[";
    for (size_t i = 0; i < r.word.collapsed.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(r.word.collapsed[i]);
    }
    s += "]";
  }
  return s;
}

std::vector<int> nondeg_counts(const SimplicialSet& X) {
  std::vector<int> out;
  for (const auto& level : X.dims) out.push_back(static_cast<int>(level.size()));
  return out;
}

SimplexRef degenerate_to(const SimplexRef& vertex, int n) {
  assert(vertex.dim() == 0);
  SurjectionWord w;
  w.n = n;
  for (int t = 0; t < n; ++t) w.collapsed.push_back(t);
  return SimplexRef{vertex.cell, w};
}

bool totally_degenerate(const SimplexRef& r) {
  return r.cell.dim == 0;
}

// ---------------------------------------------------------- isomorphism ----

namespace {

struct ColorState {
  std::map<CellId, int> color;
};

std::string cell_signature(const SimplicialSet& X, CellId id, const ColorState& st,
                           const std::map<CellId, std::vector<std::string>>& cofaceSigs) {
  std::ostringstream os;
  os << st.color.at(id) << ";f:";
  const Cell& cell = X.cell(id);
  for (const auto& f : cell.faces) {
    os << st.color.at(f.cell) << "[";
    for (int t : f.word.collapsed) os << t << ",";
    os << "]";
  }
  os << ";c:";
  auto it = cofaceSigs.find(id);
  if (it != cofaceSigs.end()) {
    auto sigs = it->second;
    std::sort(sigs.begin(), sigs.end());
    for (const auto& s : sigs) os << s << "/";
  }
  return os.str();
}

bool refine_colors(const SimplicialSet& X, const SimplicialSet& Y, ColorState& cx,
                   ColorState& cy) {
  // shared dictionary keeps classes aligned between the two complexes; each
  // signature embeds the old color, so classes only ever split -- a round
  // that doesn't grow the class count is a fixpoint
  size_t classes = 0;
  {
    std::set<int> seen;
    for (const auto& [id, col] : cx.color) seen.insert(col);
    classes = seen.size();
  }
  for (;;) {
    auto cofaces = [](const SimplicialSet& Z, const ColorState& st) {
      std::map<CellId, std::vector<std::string>> out;
      for (int d = 1; d <= Z.maxDim(); ++d)
        for (int c = 0; c < Z.cellCount(d); ++c) {
          const Cell& cell = Z.cell(CellId{d, c});
          for (int i = 0; i <= d; ++i) {
            std::ostringstream os;
            os << st.color.at(CellId{d, c}) << "@" << i << "[";
            for (int t : cell.faces[i].word.collapsed) os << t << ",";
            os << "]";
            out[cell.faces[i].cell].push_back(os.str());
          }
        }
      return out;
    };
    auto cfx = cofaces(X, cx);
    auto cfy = cofaces(Y, cy);
    std::map<std::string, int> dict;
    std::map<CellId, int> nx, ny;
    std::map<int, int> histX, histY;
    for (int d = 0; d <= X.maxDim(); ++d)
      for (int c = 0; c < X.cellCount(d); ++c) {
        CellId id{d, c};
        std::string sig = cell_signature(X, id, cx, cfx);
        auto [it, fresh] = dict.emplace(sig, static_cast<int>(dict.size()));
        (void)fresh;
        nx[id] = it->second;
        histX[it->second]++;
      }
    for (int d = 0; d <= Y.maxDim(); ++d)
      for (int c = 0; c < Y.cellCount(d); ++c) {
        CellId id{d, c};
        std::string sig = cell_signature(Y, id, cy, cfy);
        auto it = dict.find(sig);
        if (it == dict.end()) return false;
        ny[id] = it->second;
        histY[it->second]++;
      }
    if (histX != histY) return false;
    cx.color = std::move(nx);
    cy.color = std::move(ny);
    if (dict.size() == classes) return true;
    classes = dict.size();
  }
}

struct IsoSearch {
  const SimplicialSet& X;
  const SimplicialSet& Y;
  const ColorState& cx;
  const ColorState& cy;
  std::map<CellId, CellId> fwd;
  std::vector<std::vector<char>> used;

  bool run(int d, int c) {
    if (d > X.maxDim()) return true;
    if (c >= X.cellCount(d)) return run(d + 1, 0);
    CellId id{d, c};
    const Cell& cell = X.cell(id);
    for (int t = 0; t < Y.cellCount(d); ++t) {
      if (used[d][t]) continue;
      CellId cand{d, t};
      if (cy.color.at(cand) != cx.color.at(id)) continue;
      bool ok = true;
      const Cell& ycell = Y.cell(cand);
      for (int i = 0; i <= d && ok && d >= 1; ++i) {
        const SimplexRef& f = cell.faces[i];
        SimplexRef mapped{fwd.at(f.cell), f.word};
        if (!(mapped == ycell.faces[i])) ok = false;
      }
      if (!ok) continue;
      fwd[id] = cand;
      used[d][t] = 1;
      if (run(d, c + 1)) return true;
      used[d][t] = 0;
      fwd.erase(id);
    }
    return false;
  }
};

}  // namespace

std::optional<SSetMap> find_isomorphism(SSetPtr X, SSetPtr Y) {
  if (X->maxDim() != Y->maxDim()) return std::nullopt;
  for (int d = 0; d <= X->maxDim(); ++d)
    if (X->cellCount(d) != Y->cellCount(d)) return std::nullopt;
  ColorState cx, cy;
  for (int d = 0; d <= X->maxDim(); ++d) {
    for (int c = 0; c < X->cellCount(d); ++c) cx.color[CellId{d, c}] = d;
    for (int c = 0; c < Y->cellCount(d); ++c) cy.color[CellId{d, c}] = d;
  }
  if (!refine_colors(*X, *Y, cx, cy)) return std::nullopt;
  IsoSearch search{*X, *Y, cx, cy, {}, {}};
  search.used.resize(X->maxDim() + 1);
  for (int d = 0; d <= X->maxDim(); ++d) search.used[d].assign(Y->cellCount(d), 0);
  if (!search.run(0, 0)) return std::nullopt;
  SSetMap m;
  m.dom = X;
  m.cod = Y;
  m.images.resize(X->dims.size());
  for (int d = 0; d <= X->maxDim(); ++d)
    for (int c = 0; c < X->cellCount(d); ++c)
      m.images[d].push_back(SimplexRef{search.fwd.at(CellId{d, c}), word_identity(d)});
  return m;
}

bool is_isomorphic(SSetPtr X, SSetPtr Y) { return find_isomorphism(X, Y).has_value(); }

}  // namespace fibdual
