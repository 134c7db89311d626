#pragma once

#include <functional>
#include <map>
#include <optional>

#include "fibdual/sset.hpp"

namespace fibdual {

// A simplicial map, recorded on nondegenerate cells of the domain.
struct SSetMap {
  SSetPtr dom;
  SSetPtr cod;
  std::vector<std::vector<SimplexRef>> images;  // images[d][i] for cell (d,i)

  const SimplexRef& image(CellId id) const { return images[id.dim][id.idx]; }
};

SimplexRef map_ref(const SSetMap& f, const SimplexRef& r);
SSetMap identity_map(SSetPtr X);
SSetMap compose_maps(const SSetMap& outer, const SSetMap& inner);
SSetMap constant_map(SSetPtr X, SSetPtr Y, const SimplexRef& vertex);
bool maps_equal(const SSetMap& f, const SSetMap& g);
std::string validate_map(const SSetMap& f);  // diagnostic or ""

// Search for maps dom -> cod subject to:
//  - pinned: required images for selected cells;
//  - over:   proj . result = over  (proj: cod -> base, over: dom -> base).
// Deterministic order; visit returns false to stop early.
struct MapProblem {
  SSetPtr dom;
  SSetPtr cod;
  std::map<CellId, SimplexRef> pinned;
  const SSetMap* proj = nullptr;
  const SSetMap* over = nullptr;
  // optional extra filter on a candidate image for a given domain cell
  std::function<bool(CellId, const SimplexRef&)> admit;
};

void for_each_map(const MapProblem& problem, const std::function<bool(const SSetMap&)>& visit);
std::optional<SSetMap> find_map(const MapProblem& problem);
std::vector<SSetMap> all_maps(const MapProblem& problem);
long count_maps(const MapProblem& problem);

}  // namespace fibdual
