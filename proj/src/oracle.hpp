#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "decomposition.hpp"
#include "types.hpp"

namespace gctuf {

// Brute-force reference solvers. Deterministic, independent of every solver
// mode; used for derived expected values, cross-validation, and as the
// fallback when structural search gives up.

struct BoundedBox {
  std::vector<Int> lo, hi;
  Int volume() const;
};

struct BoxResult {
  bool feasible = false;  // relaxation feasibility
  BoundedBox box;
};

// Exact per-coordinate LP extremes of {x : t x <= b}. Errors with
// errc::invalid when the polyhedron is unbounded in some coordinate and no
// user box bounds it.
BoxResult derive_box(const IntMatrix& t, const std::vector<Int>& b,
                     const std::optional<Box>& user_box);

// Exactly the integer points of {x : t x <= b} within the box, in
// lexicographic order.
std::vector<std::vector<Int>> enumerate_points(const IntMatrix& t, const std::vector<Int>& b,
                                               const BoundedBox& box,
                                               const Int& budget = Int(10'000'000));

struct OracleOutcome {
  bool feasible = false;
  std::vector<Int> witness;
};

OracleOutcome brute_gctuf(const GctufInstance& inst, const Int& budget = Int(10'000'000));
std::vector<std::vector<Int>> brute_gctuf_all(const GctufInstance& inst,
                                              const Int& budget = Int(10'000'000));

// Windowed enumeration around an integral relaxation point. A feasible
// instance always has a solution within `depth` steps of such a point per
// coordinate (conformal decomposition of TU solutions plus interval
// trimming), so the window decides feasibility exactly. Serves as the
// base-block solver for core-derived matrices and as the fallback elsewhere.
OracleOutcome proximity_window_solve(const GctufInstance& inst,
                                     const Int& budget = Int(10'000'000));

// Exact patterns of a three-sum split: for every (alpha, beta) with a joint
// integer solution, the full achievable group-element sets on both sides with
// one witness per element.
struct ExactPatterns {
  std::vector<std::pair<Int, Int>> pairs;
  std::map<std::pair<Int, Int>, std::set<GroupElement>> pi_a, pi_b;
  std::map<std::pair<Int, Int>, std::vector<std::vector<Int>>> sols_a, sols_b;
};
ExactPatterns brute_pattern(const GctufInstance& inst, const ThreeSumSplit& split,
                            const Int& budget = Int(10'000'000));

// All predecessor-closed subsets, as sorted index lists.
std::vector<std::vector<int>> all_lattice_members(const LatticeDag& dag,
                                                  int64_t budget = int64_t(1) << 22);
OracleOutcome brute_gclf_members(const GclfInstance& inst,
                                 std::vector<std::vector<int>>* members = nullptr);

// All circulations (flows within capacity satisfying conservation).
std::vector<Circulation> all_circulations(const CirculationInstance& inst,
                                          const Int& budget = Int(10'000'000));

struct GccOutcome {
  bool feasible = false;
  Circulation flow;
  Int length;  // with respect to the instance lengths
};
GccOutcome brute_gcc(const CirculationInstance& inst, const Int& budget = Int(10'000'000));

}  // namespace gctuf
