#include "fibdual/sset_map.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace fibdual {

SimplexRef map_ref(const SSetMap& f, const SimplexRef& r) {
  const SimplexRef& img = f.images[r.cell.dim][r.cell.idx];
  if (r.word.identity()) return img;
  return SimplexRef{img.cell, word_compose(img.word, r.word)};
}

SSetMap identity_map(SSetPtr X) {
  SSetMap f;
  f.dom = X;
  f.cod = X;
  f.images.resize(X->dims.size());
  for (int d = 0; d <= X->maxDim(); ++d)
    for (int c = 0; c < X->cellCount(d); ++c)
      f.images[d].push_back(SimplexRef{CellId{d, c}, word_identity(d)});
  return f;
}

SSetMap compose_maps(const SSetMap& outer, const SSetMap& inner) {
  assert(inner.cod.get() == outer.dom.get());
  SSetMap f;
  f.dom = inner.dom;
  f.cod = outer.cod;
  f.images.resize(inner.images.size());
  for (size_t d = 0; d < inner.images.size(); ++d)
    for (const auto& r : inner.images[d]) f.images[d].push_back(map_ref(outer, r));
  return f;
}

SSetMap constant_map(SSetPtr X, SSetPtr Y, const SimplexRef& vertex) {
  assert(vertex.dim() == 0);
  SSetMap f;
  f.dom = X;
  f.cod = Y;
  f.images.resize(X->dims.size());
  for (int d = 0; d <= X->maxDim(); ++d) {
    SurjectionWord all{d, {}};
    for (int t = 0; t < d; ++t) all.collapsed.push_back(t);
    for (int c = 0; c < X->cellCount(d); ++c)
      f.images[d].push_back(SimplexRef{vertex.cell, all});
  }
  return f;
}

bool maps_equal(const SSetMap& f, const SSetMap& g) {
  return f.dom.get() == g.dom.get() && f.cod.get() == g.cod.get() && f.images == g.images;
}

std::string validate_map(const SSetMap& f) {
  if (!f.dom || !f.cod) return "map missing endpoints";
  if (f.images.size() != f.dom->dims.size()) return "image table has wrong shape";
  for (int d = 0; d <= f.dom->maxDim(); ++d) {
    if (static_cast<int>(f.images[d].size()) != f.dom->cellCount(d))
      return "image table has wrong shape";
    for (int c = 0; c < f.dom->cellCount(d); ++c) {
      const SimplexRef& img = f.images[d][c];
      if (img.dim() != d) return "image of wrong dimension";
      if (img.cell.dim > f.cod->maxDim() || img.cell.idx >= f.cod->cellCount(img.cell.dim))
        return "image refers to missing cell";
      for (int i = 0; i <= d && d >= 1; ++i) {
        SimplexRef lhs = map_ref(f, f.dom->cell(CellId{d, c}).faces[i]);
        SimplexRef rhs = face(*f.cod, img, i);
        if (!(lhs == rhs)) {
          std::ostringstream os;
          os << "face mismatch at cell (" << d << "," << c << ") facet " << i;
          return os.str();
        }
      }
    }
  }
  return "";
}

namespace {

// one assignment slot per nondegenerate domain cell, in search order
struct Slot {
  CellId id;
};

struct Searcher {
  const MapProblem& pb;
  const SimplicialSet& A;
  const SimplicialSet& X;
  std::vector<Slot> slots;
  std::vector<std::vector<SimplexRef>> assigned;  // same shape as images
  std::vector<std::vector<char>> done;
  const std::function<bool(const SSetMap&)>& visit;
  bool stopped = false;

  Searcher(const MapProblem& p, const std::function<bool(const SSetMap&)>& v)
      : pb(p), A(*p.dom), X(*p.cod), visit(v) {
    assigned.resize(A.dims.size());
    done.resize(A.dims.size());
    for (int d = 0; d <= A.maxDim(); ++d) {
      assigned[d].resize(A.cellCount(d));
      done[d].assign(A.cellCount(d), 0);
    }
    orderSlots();
  }

  void orderSlots() {
    // vertices first, pinned ones leading, then spreading along edges
    int nv = A.cellCount(0);
    std::vector<char> placed(nv, 0);
    std::deque<int> queue;
    for (int v = 0; v < nv; ++v)
      if (pb.pinned.count(CellId{0, v})) {
        queue.push_back(v);
        placed[v] = 1;
      }
    // adjacency from nondegenerate edges
    std::vector<std::vector<int>> adj(nv);
    for (int e = 0; e < A.cellCount(1); ++e) {
      const Cell& edge = A.dims[1][e];
      int tgt = edge.faces[0].cell.idx;
      int src = edge.faces[1].cell.idx;
      adj[src].push_back(tgt);
      adj[tgt].push_back(src);
    }
    size_t next = 0;
    std::vector<int> order;
    while (order.size() < static_cast<size_t>(nv)) {
      if (next == queue.size()) {
        for (int v = 0; v < nv; ++v)
          if (!placed[v]) {
            queue.push_back(v);
            placed[v] = 1;
            break;
          }
      }
      int v = queue[next++];
      order.push_back(v);
      for (int u : adj[v])
        if (!placed[u]) {
          queue.push_back(u);
          placed[u] = 1;
        }
    }
    for (int v : order) slots.push_back(Slot{CellId{0, v}});
    for (int d = 1; d <= A.maxDim(); ++d)
      for (int c = 0; c < A.cellCount(d); ++c) slots.push_back(Slot{CellId{d, c}});
  }

  SSetMap snapshot() const {
    SSetMap f;
    f.dom = pb.dom;
    f.cod = pb.cod;
    f.images = assigned;
    return f;
  }

  bool admissible(CellId id, const SimplexRef& cand) {
    if (auto it = pb.pinned.find(id); it != pb.pinned.end() && !(it->second == cand)) return false;
    if (pb.proj) {
      SimplexRef over = map_ref(*pb.proj, cand);
      if (!(over == pb.over->images[id.dim][id.idx])) return false;
    }
    if (pb.admit && !pb.admit(id, cand)) return false;
    return true;
  }

  // consistency of a candidate vertex image with already-assigned neighbours
  bool vertexConsistent(int v, const SimplexRef& cand) {
    for (int e = 0; e < A.cellCount(1); ++e) {
      const Cell& edge = A.dims[1][e];
      int tgt = edge.faces[0].cell.idx;
      int src = edge.faces[1].cell.idx;
      if (src != v && tgt != v) continue;
      int other = (src == v) ? tgt : src;
      if (!done[0][other] && other != v) continue;
      SimplexRef si = (src == v) ? cand : assigned[0][src];
      SimplexRef ti = (tgt == v) ? cand : assigned[0][tgt];
      if (!X.hasSimplicesAt(1)) continue;
      auto& table = X.byFacets(1);
      if (table.find({ti, si}) == table.end()) return false;
    }
    return true;
  }

  void run(size_t at) {
    if (stopped) return;
    if (at == slots.size()) {
      if (!visit(snapshot())) stopped = true;
      return;
    }
    CellId id = slots[at].id;
    if (id.dim == 0) {
      auto tryCand = [&](const SimplexRef& cand) {
        if (!admissible(id, cand) || !vertexConsistent(id.idx, cand)) return;
        assigned[0][id.idx] = cand;
        done[0][id.idx] = 1;
        run(at + 1);
        done[0][id.idx] = 0;
      };
      if (auto it = pb.pinned.find(id); it != pb.pinned.end()) {
        tryCand(it->second);
      } else {
        for (int v = 0; v < X.cellCount(0); ++v) {
          if (stopped) return;
          tryCand(vertex_ref(CellId{0, v}));
        }
      }
      return;
    }
    // dim >= 1: candidates share the mapped facet tuple
    const Cell& cell = A.cell(id);
    std::vector<SimplexRef> mapped;
    mapped.reserve(id.dim + 1);
    for (const auto& f : cell.faces) {
      SimplexRef img = assigned[f.cell.dim][f.cell.idx];
      mapped.push_back(f.word.identity() ? img
                                         : SimplexRef{img.cell, word_compose(img.word, f.word)});
    }
    if (!X.hasSimplicesAt(id.dim))
      throw std::runtime_error("map search: codomain not materialized deep enough");
    auto& table = X.byFacets(id.dim);
    auto it = table.find(mapped);
    if (it == table.end()) return;
    for (const auto& cand : it->second) {
      if (stopped) return;
      if (!admissible(id, cand)) continue;
      assigned[id.dim][id.idx] = cand;
      done[id.dim][id.idx] = 1;
      run(at + 1);
      done[id.dim][id.idx] = 0;
    }
  }
};

}  // namespace

void for_each_map(const MapProblem& problem, const std::function<bool(const SSetMap&)>& visit) {
  assert((problem.proj == nullptr) == (problem.over == nullptr));
  if (problem.proj) {
    assert(problem.proj->dom.get() == problem.cod.get());
    assert(problem.over->dom.get() == problem.dom.get());
    assert(problem.over->cod.get() == problem.proj->cod.get());
  }
  Searcher s(problem, visit);
  s.run(0);
}

std::optional<SSetMap> find_map(const MapProblem& problem) {
  std::optional<SSetMap> out;
  for_each_map(problem, [&](const SSetMap& f) {
    out = f;
    return false;
  });
  return out;
}

std::vector<SSetMap> all_maps(const MapProblem& problem) {
  std::vector<SSetMap> out;
  for_each_map(problem, [&](const SSetMap& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

long count_maps(const MapProblem& problem) {
  long n = 0;
  for_each_map(problem, [&](const SSetMap&) {
    ++n;
    return true;
  });
  return n;
}

}  // namespace fibdual
