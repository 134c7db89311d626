#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "fibdual/surjection.hpp"

namespace fibdual {

struct CellId {
  int dim = 0;
  int idx = 0;
  auto operator<=>(const CellId&) const = default;
};

// A (possibly degenerate) simplex: a nondegenerate cell pushed forward along a
// degeneracy word.  word: [n] ->> [cell.dim].  Nondegenerate iff word.identity().
struct SimplexRef {
  CellId cell;
  SurjectionWord word;

  int dim() const { return word.n; }
  bool nondegenerate() const { return word.identity(); }
  auto operator<=>(const SimplexRef&) const = default;
};

struct Cell {
  std::string label;
  std::vector<SimplexRef> faces;  // facet i = faces[i]; empty for vertices
  bool operator==(const Cell&) const = default;
};

class SimplicialSet {
 public:
  // dims[d] = the nondegenerate d-cells.  `complete` means no nondegenerate
  // cells exist above maxDim(); otherwise this is a truncation.
  std::vector<std::vector<Cell>> dims;
  bool complete = true;
  std::string name;

  int maxDim() const { return static_cast<int>(dims.size()) - 1; }
  const Cell& cell(CellId id) const { return dims[id.dim][id.idx]; }
  int cellCount(int d) const {
    return (d >= 0 && d <= maxDim()) ? static_cast<int>(dims[d].size()) : 0;
  }
  int totalCells() const;

  CellId addVertex(std::string label);
  CellId addCell(std::string label, std::vector<SimplexRef> faces);

  // all d-simplices, degenerate ones included; cached
  const std::vector<SimplexRef>& simplices(int d) const;
  // d-simplices keyed by their facet tuple; cached.  d >= 1.
  const std::map<std::vector<SimplexRef>, std::vector<SimplexRef>>& byFacets(int d) const;

  bool hasSimplicesAt(int d) const { return complete || d <= maxDim(); }

 private:
  mutable std::mutex cacheMutex_;
  mutable std::map<int, std::vector<SimplexRef>> simplexCache_;
  mutable std::map<int, std::map<std::vector<SimplexRef>, std::vector<SimplexRef>>> facetCache_;
};

using SSetPtr = std::shared_ptr<const SimplicialSet>;

SimplexRef vertex_ref(CellId id);
SimplexRef cell_ref(const SimplicialSet& X, CellId id);

// facet i of r, in normal form (nondegenerate cell + word)
SimplexRef face(const SimplicialSet& X, const SimplexRef& r, int i);
SimplexRef degenerate(const SimplexRef& r, int j);
// r pulled back along an arbitrary monotone alpha: [k] -> [r.dim()]
SimplexRef apply(const SimplicialSet& X, const SimplexRef& r, const MonotoneMap& alpha);
SimplexRef vertex_of(const SimplicialSet& X, const SimplexRef& r, int v);
std::vector<SimplexRef> facets(const SimplicialSet& X, const SimplexRef& r);

// simplicial identity check on every stored cell; returns a diagnostic or ""
std::string validate(const SimplicialSet& X);

// same cells in the same order (labels and facet tables); ignores caches/name
bool same_cells(const SimplicialSet& A, const SimplicialSet& B);

}  // namespace fibdual
