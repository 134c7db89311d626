#pragma once

#include <array>

#include "fibdual/fibcheck.hpp"

namespace fibdual {

// ------------------------------------------------------------ diagram shapes ----

// Pairs (i,j) with 0 <= i <= j <= n, ordered by (i,j) <= (k,l) iff i <= k and
// l <= j.  Its nerve indexes span diagrams: an edge either drops j with i
// fixed (`back`, the leg that faces the base) or raises i with j fixed
// (`fwd`); `mixed` edges move both.  `squares` lists quadruples i < k <= l < j
// whose four corners (i,j), (k,j), (i,l), (k,l) form the rectangles that the
// categorical mode tests for pullbacks.
struct SpanShape {
  int n = 0;
  PosetNerve nerve;
  std::vector<std::pair<int, int>> verts;
  std::vector<std::vector<int>> vertAt;     // [i][j] -> vertex id
  std::vector<CellId> back, fwd, mixed;     // nondegenerate edge cells
  std::vector<std::array<int, 4>> squares;  // (i, k, l, j)
};
const SpanShape& span_shape(int n);  // cached; pointer-stable

// Componentwise-ordered pairs (i,j), i <= j <= n: the shape of one-step
// square diagrams over Delta^n.  `srcOnly` lists the nondegenerate edges that
// move i with j fixed.
struct GridShape {
  int n = 0;
  PosetNerve nerve;
  std::vector<std::pair<int, int>> verts;
  std::vector<std::vector<int>> vertAt;
  std::vector<CellId> srcOnly;
};
const GridShape& grid_shape(int n);

// Quadruples a <= b <= c <= d <= n ordered covariantly in a, c and
// contravariantly in b, d: the shape obtained by unrolling a span of spans.
struct DoubleSpanShape {
  int n = 0;
  PosetNerve nerve;
  std::vector<std::array<int, 4>> verts;
  std::map<std::array<int, 4>, int> vertAt;
};
const DoubleSpanShape& double_span_shape(int n);

// ----------------------------------------------------------- marked triples ----

// A space with two distinguished classes of edges, out of which span
// categories are built.  Categorical mode carries the presenting category and
// morphism-level predicates so that pullback conditions can be decided
// 1-categorically; fibration mode gets its classes from a projection and
// leaves square conditions to the projection's own lifting structure.
struct AdequateTriple {
  enum class Mode { Categorical, Fibration };
  Mode mode = Mode::Categorical;
  SSetPtr space;
  std::function<bool(const SimplexRef&)> ingressive;  // fwd-leg class
  std::function<bool(const SimplexRef&)> egressive;   // back-leg class
  int bound = 3;

  std::shared_ptr<const FinCategory> cat;         // categorical mode only
  std::shared_ptr<const NerveResult> nerveData;   //
  std::function<bool(int)> ingMor, egMor;         // morphism-level classes
};

AdequateTriple categorical_triple(std::shared_ptr<const FinCategory> C, int maxDim,
                                  const std::function<bool(int)>& ingMor,
                                  const std::function<bool(int)>& egMor, int bound = 3);

// both classes contain the degenerate edges and the equivalences and are
// closed under composition of 2-simplices; categorical mode also demands
// base change: pullbacks of ingressives along egressives staying ingressive
// and symmetrically
CheckReport triple_audit(const AdequateTriple& T);

// the triple a cartesian fibration induces on its total space: ingressives
// are the edges over equivalences of the base, egressives the p-cartesian
// edges.  Throws std::invalid_argument if p fails the fibration check.
AdequateTriple marked_subcats(const SSetMap& p, int nMax);

// -------------------------------------------------------- span category ----

struct BurnsideResult {
  SSetPtr sset;
  std::vector<std::vector<SSetMap>> cellDiagram;  // span shape -> space, per cell
  std::map<std::string, CellId> index;            // serialized diagram -> cell

  // wide subcategories on the two classes, with their nerve inclusions
  std::shared_ptr<const FinCategory> ingCat, egCat;
  SSetPtr ingNerve, egNerveOp;
  SSetMap inclIng;   // nerve(ingCat) -> sset
  SSetMap inclEgOp;  // nerve(egCat)^op -> sset
};

// n-simplices are span-shape diagrams in the space sending fwd edges into the
// ingressive class, back edges into the egressive class, and squares to
// pullbacks.  Categorical mode only; fibration-mode triples are consumed by
// dualize_cartesian directly and produce an std::invalid_argument here.
BurnsideResult eff_burnside(const AdequateTriple& T, int maxDim);

// ------------------------------------------------------------ dualization ----

// Total space of the base-opposite dual of a cartesian (or cocartesian)
// fibration, materialized through maxDim, together with the construction
// trace: each cell is a base simplex plus a span-shape diagram over it.  For
// fromCocartesian the trace describes the inner cartesian-mode run on
// input^op and total == opposite(innerTotal) with matching cell indices.
struct DualFibration {
  SSetPtr total;
  SSetPtr baseOp;
  SSetMap proj;    // total -> baseOp
  SSetMap input;   // the projection that was dualized
  bool fromCocartesian = false;
  int maxDim = 0;
  int nMax = 3;    // lifting depth used while classifying edges

  SSetPtr innerTotal;
  SSetMap inputUsed;                               // projection fed to the engine
  std::vector<std::vector<SimplexRef>> cellBase;   // in inputUsed.cod
  std::vector<std::vector<SSetMap>> cellDiagram;   // span shape -> inputUsed.dom
  std::map<std::string, CellId> index;
};

// cells over a base simplex tau are diagrams m on the span shape with
// p . m pinned to the back-to-front reading of tau and back edges cartesian.
// Throws std::invalid_argument when the fibration check fails, and
// std::runtime_error when the input is too truncated to materialize maxDim.
DualFibration dualize_cartesian(const SSetMap& p, int maxDim, int nMax = -1);

// dual of a cocartesian fibration: runs the cartesian engine on input^op and
// flips the result back, so the output projection is cartesian over base^op
DualFibration dualize_cocartesian(const SSetMap& q, int maxDim, int nMax = -1);

// normal form of a (base, diagram) pair as a simplex of innerTotal;
// throws std::out_of_range if the pair is not a cell of the dual
SimplexRef dual_simplex(const DualFibration& D, const SimplexRef& base, const SSetMap& diag);

// back and fwd legs of an edge cell, as edges of the input total space
std::pair<SimplexRef, SimplexRef> dual_edge_legs(const DualFibration& D, int edgeIdx);

// an edge of the dual is cocartesian over baseOp exactly when its fwd leg is
// an equivalence (degenerate edges included)
CheckReport cocartesian_edge_characterization(const DualFibration& D, int nMax);

// ------------------------------------------------------------- double dual ----

// Dualizing twice, with the comparison zig-zag through the square model:
// prime's n-cells are grid-shape diagrams x over a base simplex whose
// j-fixed edges are cartesian; alpha restricts x to the diagonal, beta
// repackages x as a cell of the double dual.
struct DoubleDualResult {
  DualFibration dual;   // over base^op
  DualFibration ddual;  // dual of dual.proj, back over (a copy of) the base
  SSetPtr prime;
  SSetMap primeProj;    // prime -> base
  SSetMap alpha;        // prime -> input total
  SSetMap beta;         // prime -> ddual.total
  std::vector<std::vector<SimplexRef>> primeBase;
  std::vector<std::vector<SSetMap>> primeDiagram;  // grid shape -> input total
  std::vector<int> vertexToDdual;                  // input vertex -> ddual vertex
};

DoubleDualResult double_dual_prime(const SSetMap& p, int maxDim, int nMax = -1);

// unroll one cell of the double dual into a single diagram on the
// double-span shape, valued in the original total space
SSetMap flatten_ddual_cell(const DoubleDualResult& R, CellId cell);

struct DoubleDualAudit {
  bool pass = true;
  bool coversBase = true;         // constant-a chains sit over degenerate base
  bool aEdgesCartesian = true;    // a moves alone -> p-cartesian
  bool bEdgesEquivalence = true;  // b moves alone -> equivalence
  bool dEdgesEquivalence = true;  // d moves alone -> equivalence
  std::string detail;
};

// structural conditions satisfied by every unrolled double-dual cell;
// flat must be a valid double-span diagram into p's total space
DoubleDualAudit double_dual_cell_audit(const SSetMap& p, const SSetMap& flat, int nMax);

}  // namespace fibdual
