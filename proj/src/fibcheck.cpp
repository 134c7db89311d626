#include "fibdual/fibcheck.hpp"

#include <cassert>
#include <sstream>

namespace fibdual {

SSetMap to_point(SSetPtr X) {
  return constant_map(X, standard_simplex(0), vertex_ref(CellId{0, 0}));
}

namespace {

// every solution of the outer square for one horn shape, with the lift search
CheckReport lifting_check(const SSetMap& p, int nMax, const std::string& family,
                          int minN, const std::function<std::vector<int>(int)>& ks) {
  CheckReport rep;
  rep.maxDim = nMax;
  SSetPtr X = p.dom;
  SSetPtr S = p.cod;
  for (int n = minN; n <= nMax && rep.pass; ++n) {
    if (!X->hasSimplicesAt(n) || !S->hasSimplicesAt(n))
      throw std::invalid_argument("lifting_check: spaces not materialized through dim " +
                                  std::to_string(n));
    SSetPtr ambient = standard_simplex(n);
    for (int k : ks(n)) {
      if (!rep.pass) break;
      std::set<CellId> keep = (k < 0) ? boundary_cells(n) : horn_cells(n, {k});
      SubcomplexResult sub = subcomplex(ambient, keep);

      MapProblem tops;
      tops.dom = sub.sset;
      tops.cod = X;
      for_each_map(tops, [&](const SSetMap& top) {
        // the base square is pinned wherever the horn sits
        std::map<CellId, SimplexRef> pins;
        for (const auto& [subId, ambId] : sub.toAmbient)
          pins[ambId] = map_ref(p, top.image(subId));
        MapProblem bottoms;
        bottoms.dom = ambient;
        bottoms.cod = S;
        bottoms.pinned = std::move(pins);
        bool go = true;
        for_each_map(bottoms, [&](const SSetMap& bottom) {
          ++rep.problems;
          MapProblem lift;
          lift.dom = ambient;
          lift.cod = X;
          for (const auto& [subId, ambId] : sub.toAmbient)
            lift.pinned[ambId] = top.image(subId);
          lift.proj = &p;
          lift.over = &bottom;
          if (!find_map(lift).has_value()) {
            rep.pass = false;
            HornProblem ce;
            ce.n = n;
            ce.k = k;
            ce.family = family;
            ce.top = top;
            ce.bottom = bottom;
            rep.counterexample = std::move(ce);
            std::ostringstream os;
            os << family << " lift missing at n=" << n;
            if (k >= 0) os << " k=" << k;
            rep.detail = os.str();
            go = false;
          }
          return go;
        });
        return go;
      });
    }
  }
  return rep;
}

}  // namespace

CheckReport is_inner_fibration(const SSetMap& p, int nMax) {
  return lifting_check(p, nMax, "inner", 2, [](int n) {
    std::vector<int> ks;
    for (int k = 1; k < n; ++k) ks.push_back(k);
    return ks;
  });
}

CheckReport is_left_fibration(const SSetMap& p, int nMax) {
  return lifting_check(p, nMax, "left", 1, [](int n) {
    std::vector<int> ks;
    for (int k = 0; k < n; ++k) ks.push_back(k);
    return ks;
  });
}

CheckReport is_right_fibration(const SSetMap& p, int nMax) {
  return lifting_check(p, nMax, "right", 1, [](int n) {
    std::vector<int> ks;
    for (int k = 1; k <= n; ++k) ks.push_back(k);
    return ks;
  });
}

CheckReport is_trivial_fibration(const SSetMap& p, int nMax) {
  return lifting_check(p, nMax, "trivial", 0, [](int) { return std::vector<int>{-1}; });
}

bool is_quasicategory(SSetPtr X, int bound) {
  return is_inner_fibration(to_point(X), bound).pass;
}

bool replay_has_lift(const SSetMap& p, const HornProblem& pb) {
  SSetPtr ambient = standard_simplex(pb.n);
  std::set<CellId> keep = (pb.k < 0) ? boundary_cells(pb.n) : horn_cells(pb.n, {pb.k});
  SubcomplexResult sub = subcomplex(ambient, keep);
  // the stored top lives on an equal copy of the horn; rebuild pins by cell id
  MapProblem lift;
  lift.dom = ambient;
  lift.cod = p.dom;
  for (const auto& [subId, ambId] : sub.toAmbient) lift.pinned[ambId] = pb.top.image(subId);
  lift.proj = &p;
  SSetMap bottom = pb.bottom;
  bottom.dom = ambient;
  bottom.cod = p.cod;
  lift.over = &bottom;
  return find_map(lift).has_value();
}

namespace {

bool edge_lifting_condition(const SSetMap& p, const SimplexRef& e, int nMax, bool initial) {
  SSetPtr X = p.dom;
  SSetPtr S = p.cod;
  for (int n = 2; n <= nMax; ++n) {
    if (!X->hasSimplicesAt(n) || !S->hasSimplicesAt(n))
      throw std::invalid_argument("edge condition: spaces not materialized through dim " +
                                  std::to_string(n));
    SSetPtr ambient = standard_simplex(n);
    int k = initial ? 0 : n;
    SubcomplexResult sub = subcomplex(ambient, horn_cells(n, {k}));
    CellId pinnedEdge =
        sub.fromAmbient.at(simplex_word_ref(n, initial ? std::vector<int>{0, 1}
                                                       : std::vector<int>{n - 1, n}).cell);
    MapProblem tops;
    tops.dom = sub.sset;
    tops.cod = X;
    tops.pinned[pinnedEdge] = e;
    bool ok = true;
    for_each_map(tops, [&](const SSetMap& top) {
      std::map<CellId, SimplexRef> pins;
      for (const auto& [subId, ambId] : sub.toAmbient)
        pins[ambId] = map_ref(p, top.image(subId));
      MapProblem bottoms;
      bottoms.dom = ambient;
      bottoms.cod = S;
      bottoms.pinned = std::move(pins);
      for_each_map(bottoms, [&](const SSetMap& bottom) {
        MapProblem lift;
        lift.dom = ambient;
        lift.cod = X;
        for (const auto& [subId, ambId] : sub.toAmbient)
          lift.pinned[ambId] = top.image(subId);
        lift.proj = &p;
        lift.over = &bottom;
        if (!find_map(lift).has_value()) ok = false;
        return ok;
      });
      return ok;
    });
    if (!ok) return false;
  }
  return true;
}

}  // namespace

bool is_cartesian_edge(const SSetMap& p, const SimplexRef& e, int nMax) {
  return edge_lifting_condition(p, e, nMax, false);
}

bool is_cocartesian_edge(const SSetMap& p, const SimplexRef& e, int nMax) {
  return edge_lifting_condition(p, e, nMax, true);
}

bool EdgeOracle::operator()(const SimplexRef& e) {
  auto it = memo.find(e);
  if (it != memo.end()) return it->second;
  bool ans = cocartesian ? is_cocartesian_edge(*p, e, nMax) : is_cartesian_edge(*p, e, nMax);
  memo.emplace(e, ans);
  return ans;
}

namespace {

FibrationReport fibration_check(const SSetMap& p, int nMax, bool cocartesian) {
  FibrationReport rep;
  rep.inner = is_inner_fibration(p, nMax);
  if (!rep.inner.pass) {
    rep.pass = false;
    return rep;
  }
  SSetPtr X = p.dom;
  SSetPtr S = p.cod;
  EdgeOracle oracle{&p, nMax, cocartesian, {}};
  for (const auto& eta : S->simplices(1)) {
    // anchored vertex: target for cartesian lifts, source for cocartesian
    SimplexRef anchor = cocartesian ? face(*S, eta, 1) : face(*S, eta, 0);
    for (int v = 0; v < X->cellCount(0); ++v) {
      SimplexRef x = vertex_ref(CellId{0, v});
      if (!(map_ref(p, x) == anchor)) continue;
      ++rep.edgesChecked;
      bool found = false;
      for (const auto& cand : X->simplices(1)) {
        if (!(map_ref(p, cand) == eta)) continue;
        SimplexRef end = cocartesian ? face(*X, cand, 1) : face(*X, cand, 0);
        if (!(end == x)) continue;
        if (oracle(cand)) {
          found = true;
          break;
        }
      }
      if (!found) {
        rep.pass = false;
        rep.missing = std::make_pair(x, eta);
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace

FibrationReport is_cartesian_fibration(const SSetMap& p, int nMax) {
  return fibration_check(p, nMax, false);
}

FibrationReport is_cocartesian_fibration(const SSetMap& p, int nMax) {
  return fibration_check(p, nMax, true);
}

PullbackResult vertex_fiber(const SSetMap& p, const SimplexRef& baseVertex, int maxDim) {
  SSetMap pt = simplex_as_map(p.cod, baseVertex);
  return pullback(p, pt, maxDim);
}

std::vector<long> hom_left_counts(SSetPtr X, const SimplexRef& a, const SimplexRef& b,
                                  int bound) {
  std::vector<long> counts(bound + 1, 0);
  for (int n = 0; n <= bound; ++n) {
    if (!X->hasSimplicesAt(n + 1))
      throw std::invalid_argument("hom_left_counts: need simplices at dim " +
                                  std::to_string(n + 1));
    for (const auto& sigma : X->simplices(n + 1)) {
      if (!(vertex_of(*X, sigma, 0) == a)) continue;
      if (!(apply(*X, sigma, mono_interval(n + 1, 1, n + 1)) == degenerate_to(b, n))) continue;
      // degenerate as a mapping-space cell iff some direction 1..n collapses
      bool mappingDegenerate = false;
      for (int t : sigma.word.collapsed)
        if (t >= 1 && t <= n) mappingDegenerate = true;
      if (!mappingDegenerate || n == 0) ++counts[n];
    }
  }
  return counts;
}

namespace {

// A fiber cut out of a truncated total is materialized through fiberDim but
// carries complete=false, which homotopy_category rejects outright when the
// fiber happens to have no nondegenerate cells above dim 0 or 1.  Re-house the
// cells in a standalone set marked complete; sound for any reader that stays
// at or below the materialized depth.
SSetPtr seal_fiber(const SSetPtr& X) {
  if (X->complete) return X;
  auto Y = std::make_shared<SimplicialSet>();
  Y->name = X->name;
  for (int v = 0; v < X->cellCount(0); ++v) Y->addVertex(X->cell(CellId{0, v}).label);
  for (int d = 1; d <= X->maxDim(); ++d)
    for (int c = 0; c < X->cellCount(d); ++c) {
      const Cell& cl = X->cell(CellId{d, c});
      Y->addCell(cl.label, cl.faces);
    }
  Y->complete = true;
  return Y;
}

}  // namespace

FiberwiseReport fiberwise_equivalence(
    const SSetMap& p, const SSetMap& q,
    const std::function<SimplexRef(const SimplexRef&)>& vertexMatch, int fiberDim, int hoBound) {
  if (fiberDim < 2)
    throw std::invalid_argument("fiberwise_equivalence: fibers must be cut at dim >= 2");
  FiberwiseReport rep;
  for (int v = 0; v < p.cod->cellCount(0); ++v) {
    SimplexRef b = vertex_ref(CellId{0, v});
    PullbackResult fibP = vertex_fiber(p, b, fiberDim);
    PullbackResult fibQ = vertex_fiber(q, vertexMatch(b), fiberDim);
    HoCategory hoP = homotopy_category(seal_fiber(fibP.sset), std::min(fiberDim, hoBound));
    HoCategory hoQ = homotopy_category(seal_fiber(fibQ.sset), std::min(fiberDim, hoBound));
    if (!cat_equivalent(hoP.cat, hoQ.cat)) {
      rep.pass = false;
      std::ostringstream os;
      os << "fibers over vertex " << p.cod->cell(b.cell).label << " are not equivalent";
      rep.failure = os.str();
      return rep;
    }
    std::ostringstream os;
    os << "vertex " << p.cod->cell(b.cell).label << ": fiber ho-categories equivalent ("
       << hoP.cat.size() << " objects ~ " << hoQ.cat.size() << ")";
    rep.notes.push_back(os.str());
  }
  return rep;
}

}  // namespace fibdual
