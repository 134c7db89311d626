#include "fibdual/marked.hpp"

#include <stdexcept>

namespace fibdual {

MarkedSSet flat_marked(SSetPtr X) { return MarkedSSet{std::move(X), {}}; }

MarkedSSet sharp_marked(SSetPtr X) {
  MarkedSSet M{std::move(X), {}};
  for (int i = 0; i < M.space->cellCount(1); ++i) M.marked.insert(CellId{1, i});
  return M;
}

bool edge_marked(const MarkedSSet& X, const SimplexRef& e) {
  if (e.dim() != 1) throw std::invalid_argument("edge_marked: not an edge");
  return !e.nondegenerate() || X.marked.count(e.cell) > 0;
}

MarkedSSet restrict_marking(const MarkedSSet& ambient, const SubcomplexResult& sub) {
  MarkedSSet M{sub.sset, {}};
  for (int i = 0; i < sub.sset->cellCount(1); ++i) {
    CellId id{1, i};
    if (ambient.marked.count(sub.toAmbient.at(id))) M.marked.insert(id);
  }
  return M;
}

std::string validate_marked_map(const MarkedSSet& dom, const MarkedSSet& cod,
                                const SSetMap& f) {
  if (auto err = validate_map(f); !err.empty()) return err;
  if (f.dom != dom.space || f.cod != cod.space) return "marked map: space mismatch";
  for (CellId id : dom.marked) {
    if (!edge_marked(cod, f.image(id)))
      return "marked edge (1," + std::to_string(id.idx) + ") lands on an unmarked edge";
  }
  return "";
}

}  // namespace fibdual
