#include "fibdual/twist.hpp"

#include <stdexcept>

namespace fibdual {

namespace {

// Subdivision combinatorics, parameterized by stride: 2 for the single twist,
// 4 for the two-fold one.  A level-n cell is carried by an X-simplex of
// dimension stride*n + stride - 1; the face/degeneracy operators act on
// position blocks symmetrically around the block boundaries.

// positions of the carrier simplex removed by face i at level n
std::vector<int> removed_positions(int stride, int n, int i) {
  int top = stride * n + stride - 1;
  if (stride == 2) return {n - i, n + 1 + i};
  (void)top;
  return {n - i, n + 1 + i, 3 * n + 2 - i, 3 * n + 3 + i};
}

// positions collapsed by the carrier word of the level-n degeneracy s_j
// (applied to a level-(n-1) simplex)
std::vector<int> degeneracy_collapses(int stride, int n, int j) {
  if (stride == 2) return {n - 1 - j, n + 1 + j};
  return {n - 1 - j, n + 1 + j, 3 * n + 1 - j, 3 * n + 3 + j};
}

bool subdiv_nondegenerate(int stride, int n, const SimplexRef& y) {
  for (int j = 0; j < n; ++j) {
    bool all = true;
    for (int p : degeneracy_collapses(stride, n, j))
      if (!y.word.collapses(p)) { all = false; break; }
    if (all) return false;
  }
  return true;
}

MonotoneMap skipping(int dom, int cod, const std::vector<int>& missing) {
  MonotoneMap f;
  f.dom = dom;
  f.cod = cod;
  for (int t = 0; t <= cod; ++t) {
    bool skip = false;
    for (int p : missing)
      if (t == p) { skip = true; break; }
    if (!skip) f.values.push_back(t);
  }
  return f;
}

MonotoneMap face_inclusion(int stride, int n, int i) {
  return skipping(stride * n - 1, stride * n + stride - 1, removed_positions(stride, n, i));
}

// peel subdivision-level degeneracies off an arbitrary carrier simplex;
// returns the level word and the fully peeled carrier
std::pair<SurjectionWord, SimplexRef> subdiv_normalize(int stride, const SimplicialSet& X,
                                                       int n, SimplexRef y) {
  for (int j = 0; j < n; ++j) {
    bool all = true;
    auto collapses = degeneracy_collapses(stride, n, j);
    for (int p : collapses)
      if (!y.word.collapses(p)) { all = false; break; }
    if (!all) continue;
    // y factors through the level degeneracy s_j; peel it
    std::vector<int> skipped;
    for (int p : collapses) skipped.push_back(p + 1);
    SimplexRef z =
        apply(X, y, skipping(stride * n - 1, stride * n + stride - 1, skipped));
    auto [w, core] = subdiv_normalize(stride, X, n - 1, z);
    return {word_compose(w, word_degeneracy(n - 1, j)), core};
  }
  return {word_identity(n), y};
}

struct SubdivBuild {
  std::shared_ptr<SimplicialSet> total;
  std::vector<std::vector<SimplexRef>> cellSimplex;
  std::map<SimplexRef, CellId> bySimplex;
};

SimplexRef locate(const SubdivBuild& B, int stride, const SimplicialSet& X, int n,
                  const SimplexRef& y) {
  auto [w, core] = subdiv_normalize(stride, X, n, y);
  return SimplexRef{B.bySimplex.at(core), w};
}

SubdivBuild build_subdivision(int stride, SSetPtr X, int maxDim, const std::string& tag) {
  if (maxDim < 0) throw std::invalid_argument(tag + ": maxDim must be >= 0");
  int need = stride * maxDim + stride - 1;
  if (!X->hasSimplicesAt(need))
    throw std::runtime_error(tag + ": source is truncated below dimension " +
                             std::to_string(need));
  SubdivBuild B;
  B.total = std::make_shared<SimplicialSet>();
  B.total->name = tag + "(" + X->name + ")";
  for (int n = 0; n <= maxDim; ++n) {
    B.cellSimplex.emplace_back();
    for (const SimplexRef& y : X->simplices(stride * n + stride - 1)) {
      if (!subdiv_nondegenerate(stride, n, y)) continue;
      CellId id;
      if (n == 0) {
        id = B.total->addVertex(ref_label(*X, y));
      } else {
        std::vector<SimplexRef> faces;
        for (int i = 0; i <= n; ++i)
          faces.push_back(locate(B, stride, *X, n - 1, apply(*X, y, face_inclusion(stride, n, i))));
        id = B.total->addCell(ref_label(*X, y), std::move(faces));
      }
      B.cellSimplex[n].push_back(y);
      B.bySimplex[y] = id;
    }
  }
  B.total->complete = X->complete && maxDim >= X->maxDim();
  return B;
}

}  // namespace

TwistedArrow twisted_arrow(SSetPtr X, int maxDim) {
  SubdivBuild B = build_subdivision(2, X, maxDim, "twist");
  TwistedArrow T;
  T.source = X;
  T.total = B.total;
  T.cellSimplex = std::move(B.cellSimplex);
  T.bySimplex = std::move(B.bySimplex);
  T.sourceOp = opposite(X);
  T.range = product(T.sourceOp, X, X->complete ? -1 : maxDim);

  SSetMap proj;
  proj.dom = T.total;
  proj.cod = T.range.sset;
  for (int n = 0; n <= T.total->maxDim(); ++n) {
    proj.images.emplace_back();
    for (const SimplexRef& y : T.cellSimplex[n]) {
      SimplexRef left = apply(*X, y, mono_interval(2 * n + 1, 0, n));
      SimplexRef right = apply(*X, y, mono_interval(2 * n + 1, n + 1, 2 * n + 1));
      proj.images[n].push_back(product_ref(T.range, op_ref(left), right));
    }
  }
  T.proj = std::move(proj);
  return T;
}

SimplexRef twist_ref(const TwistedArrow& T, int n, const SimplexRef& y) {
  if (y.dim() != 2 * n + 1)
    throw std::invalid_argument("twist_ref: dimension mismatch");
  auto [w, core] = subdiv_normalize(2, *T.source, n, y);
  return SimplexRef{T.bySimplex.at(core), w};
}

CheckReport twisted_arrow_projection_check(const TwistedArrow& T, int nMax) {
  return is_left_fibration(T.proj, nMax);
}

SSetPtr two_fold_twist(SSetPtr X, int maxDim) {
  return build_subdivision(4, std::move(X), maxDim, "twist2").total;
}

ArrowSSet arrow_sset(SSetPtr X, int maxDim) {
  ArrowSSet A;
  A.source = X;
  A.exp = exponential(X, standard_simplex(1), maxDim);
  A.total = A.exp.sset;
  A.src = exponential_eval(A.exp, 0);
  A.tgt = exponential_eval(A.exp, 1);
  return A;
}

}  // namespace fibdual
