#pragma once

#include "fibdual/sset_ops.hpp"

namespace fibdual {

// A simplicial set with distinguished edges.  Degenerate edges count as
// marked whether or not they are listed, so `marked` only stores
// nondegenerate 1-cells.
struct MarkedSSet {
  SSetPtr space;
  std::set<CellId> marked;
};

MarkedSSet flat_marked(SSetPtr X);   // degenerate edges only
MarkedSSet sharp_marked(SSetPtr X);  // every edge

bool edge_marked(const MarkedSSet& X, const SimplexRef& e);

// marking pulled back along a subcomplex inclusion
MarkedSSet restrict_marking(const MarkedSSet& ambient, const SubcomplexResult& sub);

// marked edges of dom must land on marked edges of cod; diagnostic or ""
std::string validate_marked_map(const MarkedSSet& dom, const MarkedSSet& cod, const SSetMap& f);

}  // namespace fibdual
