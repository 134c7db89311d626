#pragma once

#include <memory>

#include "fibdual/marked.hpp"
#include "fibdual/staircase.hpp"

namespace fibdual {

// A face-closed set of nondegenerate cells of a host simplicial set, with a
// chosen set of marked edges.  The in-host analogue of MarkedSSet.
struct MarkedSub {
  std::set<CellId> cells;
  std::set<CellId> marked;  // a subset of the 1-cells in `cells`
  bool operator==(const MarkedSub&) const = default;
};

// closure of `top` under faces; nondegenerate cells only
std::set<CellId> closure_cells(const SimplicialSet& X, const std::set<CellId>& top);

// cut a MarkedSub out of its host as a standalone marked simplicial set
MarkedSSet realize_sub(SSetPtr host, const MarkedSub& sub);

struct AnodyneCertificate;
using CertPtr = std::shared_ptr<const AnodyneCertificate>;

// One step of an anodyne certificate.  The generator templates:
//
//   InnerHorn       fill simplex `simplex` whose facets are all present
//                   except the one at inner index `horn`; adds the simplex
//                   and that facet.  (flat inner-horn pushout)
//   MarkedTriangle  given the long edge d1 of triangle `simplex`, add the
//                   other two edges, the middle vertex and the triangle,
//                   marking d0.  (outer-horn-with-marked-edge pushout)
//   MarkComposite   triangle `simplex` fully present with d0 and d2 marked:
//                   mark d1.  (marked edges compose)
//   Pushout         glue certificate `a` along its source, which must lie in
//                   the current subcomplex; nothing else `a` adds may be
//                   present yet (the gluing is exact).
//   TwoOutOfThree   conclude the missing leg of a composite from two
//                   certified legs `a` and `b`.  conclude == 2: a certifies
//                   the first leg out of the current subcomplex, b the
//                   composite; the step concludes the second leg and jumps
//                   to b's target.  conclude == 1 is the mirror.  Marks
//                   already present ride along; the concluded leg adds the
//                   target's marks.
struct CertStep {
  enum class Kind { InnerHorn, MarkedTriangle, MarkComposite, Pushout, TwoOutOfThree };
  Kind kind{};
  CellId simplex{};  // InnerHorn / MarkedTriangle / MarkComposite
  int horn = -1;     // InnerHorn: index of the facet the fill provides
  int conclude = 0;  // TwoOutOfThree: which leg is concluded (1 or 2)
  CertPtr a, b;
};

// A replayable witness that src -> tgt (as marked subcomplexes of host) is
// effectively anodyne: in the class generated by the templates above and
// closed under two-out-of-three.
struct AnodyneCertificate {
  std::string note;
  SSetPtr host;
  MarkedSub src, tgt;
  std::vector<CertStep> steps;
};

struct CertVerdict {
  bool pass = false;
  std::string at;      // failing step, e.g. "step 3 / step 1" into nested certificates
  std::string detail;
  explicit operator bool() const { return pass; }
};

// replay a certificate from its source; trusts nothing
CertVerdict check_certificate(const AnodyneCertificate& cert);

// ------------------------------------------------------------- filtration ----

struct LevelAttach {
  StaircasePath path;
  CellId cell;                            // its (2n)-simplex in the host
  std::vector<std::pair<int, int>> flips;
  bool singleFace;                        // meets the previous stage in one facet only
};

// The arrow simplicial set of Delta^n filtered by path area.  levels[0] is
// the long simplex (the diagonal chain); levels[k+1] adds the paths of area
// k.  Marks are the edges with constant target component that the level
// contains.  Construction verifies that each path meets the previous level
// in exactly the faces at its flipvertices.
struct Filtration {
  int n = 0;
  PosetNerve host;
  std::vector<StaircasePath> paths;
  std::vector<int> areas;  // parallel to paths
  std::vector<MarkedSub> levels;
  std::vector<std::vector<LevelAttach>> attachments;  // [k] = the area-k gluings
};

Filtration filtration(int n);  // n in [1, 4]

// ------------------------------------------------------------ certificates ----

// the long n-simplex (diagonal chain) into the full arrow complex of Delta^n
AnodyneCertificate certify_long_simplex(int n);  // n in [1, 3]

// boundary arrow complex glued with the flat long simplex, into the full
// arrow complex; certified against certify_long_simplex by two-out-of-three
AnodyneCertificate certify_iota(int n);  // n in [1, 3]

// d_s Delta^m union Delta^F into Delta^m, for F a contiguous subset of [m]
// with s interior to both F and [m]; one pushout per vertex missing from F
AnodyneCertificate contiguity_certificate(int m, int s, const std::set<int>& F);

}  // namespace fibdual
