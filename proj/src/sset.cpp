#include "fibdual/sset.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace fibdual {

int SimplicialSet::totalCells() const {
  int t = 0;
  for (const auto& level : dims) t += static_cast<int>(level.size());
  return t;
}

CellId SimplicialSet::addVertex(std::string label) {
  if (dims.empty()) dims.emplace_back();
  dims[0].push_back(Cell{std::move(label), {}});
  return CellId{0, static_cast<int>(dims[0].size()) - 1};
}

CellId SimplicialSet::addCell(std::string label, std::vector<SimplexRef> faces) {
  int d = static_cast<int>(faces.size()) - 1;
  if (d < 1) throw std::invalid_argument("addCell: need at least two facets");
  while (maxDim() < d) dims.emplace_back();
  for (const auto& f : faces) {
    if (f.dim() != d - 1) throw std::invalid_argument("addCell: facet of wrong dimension");
    if (f.cell.dim > maxDim() || f.cell.idx >= cellCount(f.cell.dim))
      throw std::invalid_argument("addCell: facet refers to missing cell");
  }
  dims[d].push_back(Cell{std::move(label), std::move(faces)});
  return CellId{d, static_cast<int>(dims[d].size()) - 1};
}

const std::vector<SimplexRef>& SimplicialSet::simplices(int d) const {
  std::lock_guard<std::mutex> lock(cacheMutex_);
  auto it = simplexCache_.find(d);
  if (it != simplexCache_.end()) return it->second;

  std::vector<SimplexRef> out;
  for (int m = 0; m <= std::min(d, maxDim()); ++m) {
    int drop = d - m;
    // all degeneracy words [d] ->> [m]: (d choose drop) collapsed sets
    std::vector<int> sel(drop);
    for (int i = 0; i < drop; ++i) sel[i] = i;
    for (int c = 0; c < static_cast<int>(dims[m].size()); ++c) {
      if (drop == 0) {
        out.push_back(SimplexRef{CellId{m, c}, word_identity(d)});
        continue;
      }
      std::vector<int> pick = sel;
      while (true) {
        out.push_back(SimplexRef{CellId{m, c}, SurjectionWord{d, pick}});
        // next subset of {0..d-1} of size drop
        int i = drop - 1;
        while (i >= 0 && pick[i] == d - drop + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < drop; ++j) pick[j] = pick[j - 1] + 1;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return simplexCache_.emplace(d, std::move(out)).first->second;
}

const std::map<std::vector<SimplexRef>, std::vector<SimplexRef>>& SimplicialSet::byFacets(
    int d) const {
  assert(d >= 1);
  const auto& all = simplices(d);
  std::lock_guard<std::mutex> lock(cacheMutex_);
  auto it = facetCache_.find(d);
  if (it != facetCache_.end()) return it->second;

  std::map<std::vector<SimplexRef>, std::vector<SimplexRef>> table;
  for (const auto& r : all) {
    std::vector<SimplexRef> fs;
    fs.reserve(d + 1);
    for (int i = 0; i <= d; ++i) fs.push_back(face(*this, r, i));
    table[std::move(fs)].push_back(r);
  }
  return facetCache_.emplace(d, std::move(table)).first->second;
}

SimplexRef vertex_ref(CellId id) {
  assert(id.dim == 0);
  return SimplexRef{id, word_identity(0)};
}

SimplexRef cell_ref(const SimplicialSet& X, CellId id) {
  (void)X;
  return SimplexRef{id, word_identity(id.dim)};
}

SimplexRef face(const SimplicialSet& X, const SimplexRef& r, int i) {
  int n = r.dim();
  assert(n >= 1 && i >= 0 && i <= n);
  const SurjectionWord& w = r.word;
  if (w.collapses(i - 1) || w.collapses(i)) {
    // still a degeneracy word after skipping i
    std::vector<int> vals = word_values(w);
    vals.erase(vals.begin() + i);
    return SimplexRef{r.cell, word_from_values(n - 1, vals)};
  }
  // skipping i drops the value w(i); route through the stored facet
  int j = w(i);
  std::vector<int> vals = word_values(w);
  vals.erase(vals.begin() + i);
  for (int& v : vals)
    if (v > j) --v;
  SurjectionWord v2 = word_from_values(n - 1, vals);
  assert(r.cell.dim > 0);  // words onto [0] collapse every position
  const SimplexRef& stored = X.cell(r.cell).faces[j];
  return SimplexRef{stored.cell, word_compose(stored.word, v2)};
}

SimplexRef degenerate(const SimplexRef& r, int j) {
  return SimplexRef{r.cell, word_compose(r.word, word_degeneracy(r.dim(), j))};
}

SimplexRef apply(const SimplicialSet& X, const SimplexRef& r, const MonotoneMap& alpha) {
  assert(alpha.cod == r.dim());
  MonotoneMap f = mono_compose(mono_from_word(r.word), alpha);
  EpiMonoFactorization em = epi_mono_factor(f);
  // peel the missing values of the image as faces, largest first
  SimplexRef cur{r.cell, word_identity(r.cell.dim)};
  int expected = r.cell.dim;
  std::vector<int> missing;
  {
    size_t at = 0;
    for (int v = 0; v <= expected; ++v) {
      if (at < em.image.size() && em.image[at] == v) ++at;
      else missing.push_back(v);
    }
  }
  for (auto it = missing.rbegin(); it != missing.rend(); ++it) cur = face(X, cur, *it);
  return SimplexRef{cur.cell, word_compose(cur.word, em.epi)};
}

SimplexRef vertex_of(const SimplicialSet& X, const SimplexRef& r, int v) {
  return apply(X, r, mono_vertex(r.dim(), v));
}

std::vector<SimplexRef> facets(const SimplicialSet& X, const SimplexRef& r) {
  std::vector<SimplexRef> fs;
  fs.reserve(r.dim() + 1);
  for (int i = 0; i <= r.dim(); ++i) fs.push_back(face(X, r, i));
  return fs;
}

std::string validate(const SimplicialSet& X) {
  for (int d = 1; d <= X.maxDim(); ++d) {
    for (int c = 0; c < X.cellCount(d); ++c) {
      const Cell& cell = X.dims[d][c];
      if (static_cast<int>(cell.faces.size()) != d + 1) {
        std::ostringstream os;
        os << "cell (" << d << "," << c << ") has " << cell.faces.size() << " facets";
        return os.str();
      }
      for (int i = 0; i <= d; ++i) {
        const SimplexRef& f = cell.faces[i];
        if (f.dim() != d - 1 || f.cell.dim > X.maxDim() || f.cell.idx >= X.cellCount(f.cell.dim)) {
          std::ostringstream os;
          os << "cell (" << d << "," << c << ") facet " << i << " malformed";
          return os.str();
        }
      }
      if (d < 2) continue;
      SimplexRef self{CellId{d, c}, word_identity(d)};
      for (int j = 1; j <= d; ++j) {
        for (int i = 0; i < j; ++i) {
          SimplexRef a = face(X, cell.faces[j], i);
          SimplexRef b = face(X, cell.faces[i], j - 1);
          if (!(a == b)) {
            std::ostringstream os;
            os << "simplicial identity fails at cell (" << d << "," << c << "): d" << i << " d"
               << j << " != d" << (j - 1) << " d" << i;
            return os.str();
          }
        }
      }
      (void)self;
    }
  }
  return "";
}

bool same_cells(const SimplicialSet& A, const SimplicialSet& B) {
  return A.dims == B.dims && A.complete == B.complete;
}

}  // namespace fibdual
