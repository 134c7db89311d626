#pragma once

#include "fibdual/fincat.hpp"
#include "fibdual/sset_ops.hpp"

namespace fibdual {

// one lifting square: `top` on a horn/boundary against `bottom` on the simplex
struct HornProblem {
  int n = 0;
  int k = 0;  // horn vertex; -1 for a boundary problem
  std::string family;
  SSetMap top;     // horn (or boundary) -> X
  SSetMap bottom;  // Delta^n -> S
};

struct CheckReport {
  bool pass = true;
  int maxDim = 0;
  long problems = 0;
  std::optional<HornProblem> counterexample;
  std::string detail;
};

SSetMap to_point(SSetPtr X);

CheckReport is_inner_fibration(const SSetMap& p, int nMax);
CheckReport is_left_fibration(const SSetMap& p, int nMax);
CheckReport is_right_fibration(const SSetMap& p, int nMax);
CheckReport is_trivial_fibration(const SSetMap& p, int nMax);
bool is_quasicategory(SSetPtr X, int bound = 3);

// re-run a stored counterexample; true when the lift exists after all
bool replay_has_lift(const SSetMap& p, const HornProblem& pb);

// final-edge / initial-edge lifting conditions, checked through dimension nMax
bool is_cartesian_edge(const SSetMap& p, const SimplexRef& e, int nMax);
bool is_cocartesian_edge(const SSetMap& p, const SimplexRef& e, int nMax);

// memoized per-edge answers for one fixed projection
struct EdgeOracle {
  const SSetMap* p = nullptr;
  int nMax = 3;
  bool cocartesian = false;
  std::map<SimplexRef, bool> memo;
  bool operator()(const SimplexRef& e);
};

struct FibrationReport {
  bool pass = true;
  CheckReport inner;
  long edgesChecked = 0;
  // vertex of the total space + base edge with no (co)cartesian lift
  std::optional<std::pair<SimplexRef, SimplexRef>> missing;
};

FibrationReport is_cartesian_fibration(const SSetMap& p, int nMax);
FibrationReport is_cocartesian_fibration(const SSetMap& p, int nMax);

// fiber over a base vertex, materialized through maxDim (-1: total space bound)
PullbackResult vertex_fiber(const SSetMap& p, const SimplexRef& baseVertex, int maxDim = -1);

// simplices with initial vertex a whose remaining face is constant at b,
// counted by mapping-space dimension 0..bound (nondegenerate there only)
std::vector<long> hom_left_counts(SSetPtr X, const SimplexRef& a, const SimplexRef& b, int bound);

struct FiberwiseReport {
  bool pass = true;
  std::vector<std::string> notes;
  std::string failure;
};

// fibers of p and q over matched base vertices have equivalent homotopy
// categories; vertexMatch maps vertex cells of p's base to q's base
FiberwiseReport fiberwise_equivalence(
    const SSetMap& p, const SSetMap& q,
    const std::function<SimplexRef(const SimplexRef&)>& vertexMatch, int fiberDim, int hoBound);

}  // namespace fibdual
