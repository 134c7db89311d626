#include "fibdual/anodyne.hpp"

#include <algorithm>
#include <stdexcept>

namespace fibdual {

std::set<CellId> closure_cells(const SimplicialSet& X, const std::set<CellId>& top) {
  std::set<CellId> out;
  std::vector<CellId> work(top.begin(), top.end());
  while (!work.empty()) {
    CellId id = work.back();
    work.pop_back();
    if (id.dim < 0 || id.dim > X.maxDim() || id.idx < 0 || id.idx >= X.cellCount(id.dim))
      throw std::invalid_argument("closure_cells: cell out of range");
    if (!out.insert(id).second) continue;
    for (const SimplexRef& f : X.cell(id).faces) work.push_back(f.cell);
  }
  return out;
}

MarkedSSet realize_sub(SSetPtr host, const MarkedSub& sub) {
  SubcomplexResult r = subcomplex(host, sub.cells);
  MarkedSSet M{r.sset, {}};
  for (CellId e : sub.marked) M.marked.insert(r.fromAmbient.at(e));
  return M;
}

// ------------------------------------------------------------------ replay ----

namespace {

using Kind = CertStep::Kind;

std::string cell_str(CellId id) {
  return "(" + std::to_string(id.dim) + "," + std::to_string(id.idx) + ")";
}

bool in_range(const SimplicialSet& X, CellId id) {
  return id.dim >= 0 && id.dim <= X.maxDim() && id.idx >= 0 && id.idx < X.cellCount(id.dim);
}

// diagnostic or "": ids in range, face-closed, marks are edges of the subcomplex
std::string sub_diag(const SimplicialSet& X, const MarkedSub& S) {
  for (CellId id : S.cells) {
    if (!in_range(X, id)) return "cell " + cell_str(id) + " out of range";
    for (const SimplexRef& f : X.cell(id).faces)
      if (!S.cells.count(f.cell)) return "not face-closed at " + cell_str(id);
  }
  for (CellId e : S.marked) {
    if (e.dim != 1) return "marked cell " + cell_str(e) + " is not an edge";
    if (!S.cells.count(e)) return "marked edge " + cell_str(e) + " absent";
  }
  return "";
}

bool subset_of(const std::set<CellId>& a, const std::set<CellId>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

CertVerdict fail_at(std::string at, std::string detail) {
  return {false, std::move(at), std::move(detail)};
}

CertVerdict replay(const AnodyneCertificate& c) {
  if (!c.host) return fail_at("preamble", "certificate has no host");
  const SimplicialSet& X = *c.host;
  if (auto d = sub_diag(X, c.src); !d.empty()) return fail_at("source", d);
  if (auto d = sub_diag(X, c.tgt); !d.empty()) return fail_at("target", d);
  if (!subset_of(c.src.cells, c.tgt.cells) || !subset_of(c.src.marked, c.tgt.marked))
    return fail_at("preamble", "source is not contained in target");

  MarkedSub cur = c.src;
  for (size_t si = 0; si < c.steps.size(); ++si) {
    const CertStep& st = c.steps[si];
    std::string at = "step " + std::to_string(si + 1);
    switch (st.kind) {
      case Kind::InnerHorn: {
        if (!in_range(X, st.simplex) || st.simplex.dim < 2)
          return fail_at(at, "horn fill needs a present-host simplex of dimension >= 2");
        int d = st.simplex.dim;
        if (st.horn <= 0 || st.horn >= d) return fail_at(at, "horn index is not inner");
        if (cur.cells.count(st.simplex)) return fail_at(at, "simplex already present");
        const Cell& cl = X.cell(st.simplex);
        for (int i = 0; i <= d; ++i) {
          if (!cl.faces[i].nondegenerate()) return fail_at(at, "degenerate facet");
          bool have = cur.cells.count(cl.faces[i].cell) > 0;
          if (i == st.horn && have)
            return fail_at(at, "face " + std::to_string(i) + " already present");
          if (i != st.horn && !have)
            return fail_at(at, "face " + std::to_string(i) + " missing");
        }
        cur.cells.insert(st.simplex);
        cur.cells.insert(cl.faces[st.horn].cell);
        break;
      }
      case Kind::MarkedTriangle: {
        if (!in_range(X, st.simplex) || st.simplex.dim != 2)
          return fail_at(at, "marked fill needs a triangle");
        if (cur.cells.count(st.simplex)) return fail_at(at, "triangle already present");
        const Cell& cl = X.cell(st.simplex);
        for (int i = 0; i < 3; ++i)
          if (!cl.faces[i].nondegenerate()) return fail_at(at, "degenerate facet");
        CellId d0 = cl.faces[0].cell, d1 = cl.faces[1].cell, d2 = cl.faces[2].cell;
        if (!cur.cells.count(d1)) return fail_at(at, "long edge missing");
        if (cur.cells.count(d0) || cur.cells.count(d2))
          return fail_at(at, "side edge already present");
        CellId mid = X.cell(d2).faces[0].cell;  // target of d2
        if (cur.cells.count(mid)) return fail_at(at, "middle vertex already present");
        cur.cells.insert({st.simplex, d0, d2, mid});
        cur.marked.insert(d0);
        break;
      }
      case Kind::MarkComposite: {
        if (!in_range(X, st.simplex) || st.simplex.dim != 2)
          return fail_at(at, "mark composition needs a triangle");
        if (!cur.cells.count(st.simplex)) return fail_at(at, "triangle missing");
        const Cell& cl = X.cell(st.simplex);
        for (int i = 0; i < 3; ++i)
          if (!cl.faces[i].nondegenerate()) return fail_at(at, "degenerate facet");
        CellId d0 = cl.faces[0].cell, d1 = cl.faces[1].cell, d2 = cl.faces[2].cell;
        if (!cur.marked.count(d0) || !cur.marked.count(d2))
          return fail_at(at, "side edges are not both marked");
        if (cur.marked.count(d1)) return fail_at(at, "long edge already marked");
        cur.marked.insert(d1);
        break;
      }
      case Kind::Pushout: {
        if (!st.a) return fail_at(at, "no certificate to glue");
        if (st.a->host != c.host) return fail_at(at, "glued certificate lives on another host");
        if (!subset_of(st.a->src.cells, cur.cells) || !subset_of(st.a->src.marked, cur.marked))
          return fail_at(at, "gluing source not present");
        for (CellId id : st.a->tgt.cells)
          if (!st.a->src.cells.count(id) && cur.cells.count(id))
            return fail_at(at, "gluing not exact at " + cell_str(id));
        if (CertVerdict sub = replay(*st.a); !sub.pass)
          return fail_at(at + " / " + sub.at, sub.detail);
        cur.cells.insert(st.a->tgt.cells.begin(), st.a->tgt.cells.end());
        cur.marked.insert(st.a->tgt.marked.begin(), st.a->tgt.marked.end());
        break;
      }
      case Kind::TwoOutOfThree: {
        if (!st.a || !st.b) return fail_at(at, "needs two certified legs");
        if (st.a->host != c.host || st.b->host != c.host)
          return fail_at(at, "legs live on another host");
        if (st.conclude != 1 && st.conclude != 2)
          return fail_at(at, "conclude must name leg 1 or 2");
        if (CertVerdict sub = replay(*st.a); !sub.pass)
          return fail_at(at + " / " + sub.at, sub.detail);
        if (CertVerdict sub = replay(*st.b); !sub.pass)
          return fail_at(at + " / " + sub.at, sub.detail);
        if (st.conclude == 2) {
          // a: A -> B, b: A -> C with B = cur; conclude B -> C
          if (!(st.a->src == st.b->src)) return fail_at(at, "legs start apart");
          if (st.a->tgt.cells != cur.cells)
            return fail_at(at, "first leg does not land on the current subcomplex");
          if (!subset_of(st.a->tgt.marked, cur.marked))
            return fail_at(at, "first leg carries marks not yet present");
          if (!subset_of(cur.cells, st.b->tgt.cells))
            return fail_at(at, "composite leg misses current cells");
          cur.cells = st.b->tgt.cells;
          cur.marked.insert(st.b->tgt.marked.begin(), st.b->tgt.marked.end());
        } else {
          // a: B -> C, b: A -> C with A = cur; conclude A -> B
          if (st.a->tgt.cells != st.b->tgt.cells || st.a->tgt.marked != st.b->tgt.marked)
            return fail_at(at, "legs end apart");
          if (st.b->src.cells != cur.cells)
            return fail_at(at, "composite leg does not start at the current subcomplex");
          if (!subset_of(st.b->src.marked, cur.marked))
            return fail_at(at, "composite leg carries marks not yet present");
          if (!subset_of(cur.cells, st.a->src.cells))
            return fail_at(at, "destination misses current cells");
          cur.cells = st.a->src.cells;
          cur.marked.insert(st.a->src.marked.begin(), st.a->src.marked.end());
        }
        break;
      }
    }
  }
  if (cur.cells != c.tgt.cells) return fail_at("final", "cells differ from the stated target");
  if (cur.marked != c.tgt.marked) return fail_at("final", "marks differ from the stated target");
  return {true, "", ""};
}

}  // namespace

CertVerdict check_certificate(const AnodyneCertificate& cert) { return replay(cert); }

// ---------------------------------------------------------------- emitters ----

namespace {

// all nonempty subchains of a strict chain, as host cells
std::set<CellId> subchain_cells(const PosetNerve& N, const std::vector<int>& chain) {
  std::set<CellId> out;
  int len = static_cast<int>(chain.size());
  for (unsigned mask = 1; mask < (1u << len); ++mask) {
    std::vector<int> sub;
    for (int p = 0; p < len; ++p)
      if (mask & (1u << p)) sub.push_back(chain[p]);
    out.insert(N.byChain.at(sub));
  }
  return out;
}

std::vector<int> drop_at(const std::vector<int>& chain, int r) {
  std::vector<int> sub = chain;
  sub.erase(sub.begin() + r);
  return sub;
}

// Inner-horn filling order for the absent cells of `wanted`, found by
// repeated sweeps in dimension order; extends `have` as it goes.  Throws if
// no horn applies — callers only ask for fills that exist.
std::vector<CertStep> greedy_inner_fill(const SimplicialSet& X, const std::set<CellId>& wanted,
                                        std::set<CellId>& have) {
  std::vector<CertStep> steps;
  std::set<CellId> absent;
  for (CellId id : wanted)
    if (!have.count(id)) absent.insert(id);
  while (!absent.empty()) {
    bool progress = false;
    for (auto it = absent.begin(); it != absent.end();) {
      CellId id = *it;
      if (id.dim < 2) {
        ++it;
        continue;
      }
      const Cell& cl = X.cell(id);
      int miss = -1;
      bool usable = true;
      for (int p = 0; p <= id.dim && usable; ++p) {
        if (!have.count(cl.faces[p].cell)) {
          if (miss >= 0) usable = false;
          else miss = p;
        }
      }
      if (usable && miss > 0 && miss < id.dim) {
        steps.push_back({.kind = Kind::InnerHorn, .simplex = id, .horn = miss});
        have.insert(id);
        have.insert(cl.faces[miss].cell);
        absent.erase(cl.faces[miss].cell);
        it = absent.erase(it);
        progress = true;
      } else {
        ++it;
      }
    }
    if (!progress) throw std::logic_error("greedy_inner_fill: stalled");
  }
  return steps;
}

// flat certificate filling `chain` from the union of the facets dropped at
// `present` (a generalized horn when present has >= 2 positions)
CertPtr horn_fill_cert(const PosetNerve& N, const std::vector<int>& chain,
                       const std::vector<int>& present, std::string note) {
  auto c = std::make_shared<AnodyneCertificate>();
  c->note = std::move(note);
  c->host = N.sset;
  for (int r : present) {
    auto part = subchain_cells(N, drop_at(chain, r));
    c->src.cells.insert(part.begin(), part.end());
  }
  c->tgt.cells = subchain_cells(N, chain);
  std::set<CellId> have = c->src.cells;
  c->steps = greedy_inner_fill(*N.sset, c->tgt.cells, have);
  return c;
}

std::string set_note(const std::vector<int>& I) {
  std::string s = "{";
  for (size_t i = 0; i < I.size(); ++i) s += (i ? "," : "") + std::to_string(I[i]);
  return s + "}";
}

// Emission context: certificates about the arrow complex of the simplex on
// a vertex subset I, inside the host nerve of arrow_poset(n).
struct ArrowEmit {
  const PosetNerve& N;
  int n;

  int hv(int a, int b) const { return arrow_vertex(n, a, b); }

  std::vector<int> path_chain(const std::vector<int>& I, const StaircasePath& x) const {
    std::vector<int> c;
    for (auto [i, j] : x.verts) c.push_back(hv(I[i], I[j]));
    return c;
  }

  std::vector<int> diag_chain(const std::vector<int>& I) const {
    std::vector<int> c;
    for (int a : I) c.push_back(hv(a, a));
    return c;
  }

  CellId cell(const std::vector<int>& chain) const { return N.byChain.at(chain); }
  CellId edge(int u, int v) const { return N.byChain.at({u, v}); }

  // all cells of the arrow complex over I: chains whose pairs draw on I only
  std::set<CellId> all_cells(const std::vector<int>& I) const {
    std::set<int> in(I.begin(), I.end());
    std::set<CellId> out;
    for (int d = 0; d < static_cast<int>(N.chains.size()); ++d)
      for (int idx = 0; idx < static_cast<int>(N.chains[d].size()); ++idx) {
        bool ok = true;
        for (int v : N.chains[d][idx]) {
          auto [a, b] = arrow_pair(n, v);
          if (!in.count(a) || !in.count(b)) ok = false;
        }
        if (ok) out.insert(CellId{d, idx});
      }
    return out;
  }

  // edges with constant target component, the marked class
  std::set<CellId> jconst_marks(const std::set<CellId>& cells) const {
    std::set<CellId> out;
    for (CellId id : cells) {
      if (id.dim != 1) continue;
      const auto& ch = N.chains[1][id.idx];
      if (arrow_pair(n, ch[0]).second == arrow_pair(n, ch[1]).second) out.insert(id);
    }
    return out;
  }

  // apply a marked-triangle step to a tracked subcomplex
  void apply_triangle(MarkedSub& cur, const std::vector<int>& t) const {
    cur.cells.insert(cell(t));
    cur.cells.insert(edge(t[1], t[2]));
    cur.cells.insert(edge(t[0], t[1]));
    cur.cells.insert(CellId{0, t[1]});
    cur.marked.insert(edge(t[1], t[2]));
  }

  AnodyneCertificate emit_long(const std::vector<int>& I) const;
  AnodyneCertificate emit_iota(const std::vector<int>& I) const;
  AnodyneCertificate emit_iota_skeleton(const std::vector<int>& I) const;
};

AnodyneCertificate ArrowEmit::emit_long(const std::vector<int>& I) const {
  const int L = static_cast<int>(I.size()) - 1;
  AnodyneCertificate c;
  c.note = "long simplex on " + set_note(I);
  c.host = N.sset;
  c.src = {subchain_cells(N, diag_chain(I)), {}};
  MarkedSub cur = c.src;

  // stairs: one marked triangle per unit square on the diagonal
  for (int p = 0; p < L; ++p) {
    std::vector<int> t{hv(I[p], I[p]), hv(I[p], I[p + 1]), hv(I[p + 1], I[p + 1])};
    c.steps.push_back({.kind = Kind::MarkedTriangle, .simplex = cell(t)});
    apply_triangle(cur, t);
  }

  // y = diagonal + stairs triangles is built from the stairs spine by inner
  // fills, as is the full stairs simplex; two-out-of-three closes the gap
  StaircasePath x0 = stairs_path(L);
  std::vector<int> x0c = path_chain(I, x0);
  MarkedSub spine;
  for (int v : x0c) spine.cells.insert(CellId{0, v});
  for (size_t p = 0; p + 1 < x0c.size(); ++p) spine.cells.insert(edge(x0c[p], x0c[p + 1]));

  auto legA = std::make_shared<AnodyneCertificate>();
  legA->note = "spine fill of the stairs neighborhood";
  legA->host = N.sset;
  legA->src = spine;
  legA->tgt = {cur.cells, {}};
  {
    std::set<CellId> have = spine.cells;
    legA->steps = greedy_inner_fill(*N.sset, legA->tgt.cells, have);
  }
  auto legB = std::make_shared<AnodyneCertificate>();
  legB->note = "spine fill of the stairs simplex";
  legB->host = N.sset;
  legB->src = spine;
  legB->tgt = {subchain_cells(N, x0c), {}};
  {
    std::set<CellId> have = spine.cells;
    legB->steps = greedy_inner_fill(*N.sset, legB->tgt.cells, have);
  }
  c.steps.push_back({.kind = Kind::TwoOutOfThree, .conclude = 2, .a = legA, .b = legB});
  cur.cells = legB->tgt.cells;

  // attach the remaining paths by area
  std::vector<StaircasePath> paths = enumerate_paths(L);
  int top = L * (L - 1) / 2;
  for (int k = 1; k <= top; ++k) {
    for (const StaircasePath& x : paths) {
      if (area(x) != k) continue;
      std::vector<int> ch = path_chain(I, x);
      auto fv = flipvertices(x);
      std::vector<int> rs;
      for (int r = 0; r <= 2 * L; ++r)
        if (std::find(fv.begin(), fv.end(), x.verts[r]) != fv.end()) rs.push_back(r);

      if (rs.size() > 1) {
        c.steps.push_back({.kind = Kind::Pushout,
                           .a = horn_fill_cert(N, ch, rs, "attach a path of area " +
                                                              std::to_string(k))});
        auto clos = subchain_cells(N, ch);
        cur.cells.insert(clos.begin(), clos.end());
        continue;
      }

      // single flipvertex: marked triangle at the corner, then the fills of
      // the contiguity argument, one contiguous vertex at a time
      int r = rs[0];
      auto sub = std::make_shared<AnodyneCertificate>();
      sub->note = "attach a path of area " + std::to_string(k) + " along one face";
      sub->host = N.sset;
      sub->src = {subchain_cells(N, drop_at(ch, r)), {}};
      std::vector<int> t{ch[r - 1], ch[r], ch[r + 1]};
      sub->steps.push_back({.kind = Kind::MarkedTriangle, .simplex = cell(t)});
      MarkedSub local = sub->src;
      apply_triangle(local, t);
      auto stage = [&](int lo, int hi, int tpos) {
        std::set<CellId> want;
        for (unsigned mask = 0; mask < (1u << (hi - lo + 1)); ++mask) {
          std::vector<int> chain;
          for (int p = lo; p <= hi; ++p)
            if (mask & (1u << (p - lo))) chain.push_back(ch[p]);
          auto has = [&](int p) { return (mask & (1u << (p - lo))) != 0; };
          if (has(r) && has(tpos)) want.insert(cell(chain));
        }
        auto more = greedy_inner_fill(*N.sset, want, local.cells);
        sub->steps.insert(sub->steps.end(), more.begin(), more.end());
      };
      for (int tpos = r + 2; tpos <= 2 * L; ++tpos) stage(r - 1, tpos, tpos);
      for (int tpos = r - 2; tpos >= 0; --tpos) stage(tpos, 2 * L, tpos);
      sub->tgt = {subchain_cells(N, ch), {edge(ch[r], ch[r + 1])}};
      c.steps.push_back({.kind = Kind::Pushout, .a = sub});
      cur.cells.insert(sub->tgt.cells.begin(), sub->tgt.cells.end());
      cur.marked.insert(edge(ch[r], ch[r + 1]));
    }
  }

  // longer constant-target edges are composites of marked ones
  for (int q = 0; q <= L; ++q) {
    std::vector<int> row;
    for (int p = 0; p <= q; ++p) row.push_back(hv(I[p], I[q]));
    for (int s = 2; s <= q; ++s)
      for (int p = 0; p + s <= q; ++p) {
        std::vector<int> t{row[p], row[p + 1], row[p + s]};
        c.steps.push_back({.kind = Kind::MarkComposite, .simplex = cell(t)});
        cur.marked.insert(edge(row[p], row[p + s]));
      }
  }

  c.tgt.cells = all_cells(I);
  c.tgt.marked = jconst_marks(c.tgt.cells);
  if (!(cur == c.tgt)) throw std::logic_error("emit_long: did not land on the arrow complex");
  return c;
}

AnodyneCertificate ArrowEmit::emit_iota_skeleton(const std::vector<int>& I) const {
  AnodyneCertificate c;
  c.note = "boundary arrow complex over " + set_note(I) + " from the long simplex";
  c.host = N.sset;
  c.src = {subchain_cells(N, diag_chain(I)), {}};
  MarkedSub cur = c.src;
  int sz = static_cast<int>(I.size());
  for (int take = 2; take < sz; ++take) {
    std::vector<int> pick(take);
    auto rec = [&](auto&& self, int from, int got) -> void {
      if (got == take) {
        std::vector<int> J;
        for (int p = 0; p < take; ++p) J.push_back(I[pick[p]]);
        auto sub = std::make_shared<AnodyneCertificate>(emit_iota(J));
        c.steps.push_back({.kind = Kind::Pushout, .a = sub});
        cur.cells.insert(sub->tgt.cells.begin(), sub->tgt.cells.end());
        cur.marked.insert(sub->tgt.marked.begin(), sub->tgt.marked.end());
        return;
      }
      for (int p = from; p < sz; ++p) {
        pick[got] = p;
        self(self, p + 1, got + 1);
      }
    };
    rec(rec, 0, 0);
  }
  c.tgt = cur;
  return c;
}

AnodyneCertificate ArrowEmit::emit_iota(const std::vector<int>& I) const {
  AnodyneCertificate c;
  c.note = "iota on " + set_note(I);
  c.host = N.sset;
  if (I.size() == 2) {
    int a = I[0], b = I[1];
    c.src = {subchain_cells(N, {hv(a, a), hv(b, b)}), {}};
    std::vector<int> t{hv(a, a), hv(a, b), hv(b, b)};
    c.steps.push_back({.kind = Kind::MarkedTriangle, .simplex = cell(t)});
    c.tgt.cells = all_cells(I);
    c.tgt.marked = {edge(hv(a, b), hv(b, b))};
    return c;
  }
  auto skel = std::make_shared<AnodyneCertificate>(emit_iota_skeleton(I));
  auto lng = std::make_shared<AnodyneCertificate>(emit_long(I));
  c.src = skel->tgt;
  c.tgt.cells = all_cells(I);
  c.tgt.marked = jconst_marks(c.tgt.cells);
  c.steps.push_back({.kind = Kind::TwoOutOfThree, .conclude = 2, .a = skel, .b = lng});
  return c;
}

}  // namespace

// -------------------------------------------------------------- filtration ----

Filtration filtration(int n) {
  if (n < 1 || n > 4) throw std::invalid_argument("filtration: n must be in [1, 4]");
  Filtration F;
  F.n = n;
  F.host = poset_nerve(arrow_poset(n), "O(Delta^" + std::to_string(n) + ")");
  F.paths = enumerate_paths(n);
  for (const StaircasePath& x : F.paths) F.areas.push_back(area(x));
  ArrowEmit em{F.host, n};
  std::vector<int> I(n + 1);
  for (int a = 0; a <= n; ++a) I[a] = a;

  std::set<CellId> diag = subchain_cells(F.host, em.diag_chain(I));
  MarkedSub lvl{diag, {}};
  F.levels.push_back(lvl);
  int top = n * (n - 1) / 2;
  F.attachments.assign(top + 1, {});
  for (int k = 0; k <= top; ++k) {
    for (size_t idx = 0; idx < F.paths.size(); ++idx) {
      if (F.areas[idx] != k) continue;
      const StaircasePath& x = F.paths[idx];
      std::vector<int> ch = em.path_chain(I, x);
      std::set<CellId> clos = subchain_cells(F.host, ch);
      auto fv = flipvertices(x);

      std::set<CellId> expect;
      if (k == 0) {
        expect = diag;
      } else {
        for (int r = 0; r <= 2 * n; ++r)
          if (std::find(fv.begin(), fv.end(), x.verts[r]) != fv.end()) {
            auto part = subchain_cells(F.host, drop_at(ch, r));
            expect.insert(part.begin(), part.end());
          }
      }
      std::set<CellId> inter;
      std::set_intersection(clos.begin(), clos.end(), lvl.cells.begin(), lvl.cells.end(),
                            std::inserter(inter, inter.begin()));
      if (inter != expect)
        throw std::logic_error("filtration: a path of area " + std::to_string(k) +
                               " meets the previous stage off its flip faces");
      lvl.cells.insert(clos.begin(), clos.end());
      F.attachments[k].push_back({x, F.host.byChain.at(ch), fv, fv.size() == 1});
    }
    lvl.marked = em.jconst_marks(lvl.cells);
    F.levels.push_back(lvl);
  }
  return F;
}

// ------------------------------------------------------------ entry points ----

AnodyneCertificate certify_long_simplex(int n) {
  if (n < 1 || n > 3) throw std::invalid_argument("certify_long_simplex: n must be in [1, 3]");
  PosetNerve N = poset_nerve(arrow_poset(n), "O(Delta^" + std::to_string(n) + ")");
  ArrowEmit em{N, n};
  std::vector<int> I(n + 1);
  for (int a = 0; a <= n; ++a) I[a] = a;
  return em.emit_long(I);
}

AnodyneCertificate certify_iota(int n) {
  if (n < 1 || n > 3) throw std::invalid_argument("certify_iota: n must be in [1, 3]");
  PosetNerve N = poset_nerve(arrow_poset(n), "O(Delta^" + std::to_string(n) + ")");
  ArrowEmit em{N, n};
  std::vector<int> I(n + 1);
  for (int a = 0; a <= n; ++a) I[a] = a;
  return em.emit_iota(I);
}

AnodyneCertificate contiguity_certificate(int m, int s, const std::set<int>& F) {
  if (m < 1 || s <= 0 || s >= m) throw std::invalid_argument("contiguity_certificate: s must be interior to [m]");
  if (F.empty() || *F.begin() < 0 || *F.rbegin() > m)
    throw std::invalid_argument("contiguity_certificate: F must be a subset of [m]");
  if (static_cast<int>(F.size()) != *F.rbegin() - *F.begin() + 1)
    throw std::invalid_argument("contiguity_certificate: F must be contiguous");
  if (s <= *F.begin() || s >= *F.rbegin())
    throw std::invalid_argument("contiguity_certificate: s must be interior to F");

  FinPoset P;
  for (int a = 0; a <= m; ++a) P.labels.push_back(std::to_string(a));
  P.leq.assign(m + 1, std::vector<char>(m + 1, 0));
  for (int a = 0; a <= m; ++a)
    for (int b = a; b <= m; ++b) P.leq[a][b] = 1;
  PosetNerve N = poset_nerve(P, "Delta^" + std::to_string(m));

  AnodyneCertificate c;
  c.note = "face at " + std::to_string(s) + " extended along " +
           set_note(std::vector<int>(F.begin(), F.end()));
  c.host = N.sset;
  std::vector<int> full(m + 1);
  for (int a = 0; a <= m; ++a) full[a] = a;
  auto fsrc = subchain_cells(N, drop_at(full, s));
  c.src.cells = fsrc;
  std::vector<int> Fc(F.begin(), F.end());
  auto fpart = subchain_cells(N, Fc);
  c.src.cells.insert(fpart.begin(), fpart.end());
  c.tgt.cells = subchain_cells(N, full);

  auto extend = [&](int t) {
    std::vector<int> Fx = Fc;
    Fx.insert(std::lower_bound(Fx.begin(), Fx.end(), t), t);
    int spos = static_cast<int>(std::lower_bound(Fx.begin(), Fx.end(), s) - Fx.begin());
    int tpos = static_cast<int>(std::lower_bound(Fx.begin(), Fx.end(), t) - Fx.begin());
    c.steps.push_back({.kind = Kind::Pushout,
                       .a = horn_fill_cert(N, Fx, {spos, tpos},
                                           "extend to " + set_note(Fx))});
    Fc = Fx;
  };
  for (int t = *F.rbegin() + 1; t <= m; ++t) extend(t);
  for (int t = *F.begin() - 1; t >= 0; --t) extend(t);
  return c;
}

}  // namespace fibdual
