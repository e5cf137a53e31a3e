#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "decomposition.hpp"
#include "netflow.hpp"
#include "types.hpp"

namespace gctuf {

struct SolveOptions {
  bool paper_shape = false;  // width-clamped shape heuristic instead of full safe shape
  bool force_oracle = false;
  uint64_t seed = 0;  // recorded in reports; all backends are deterministic
  SearchCaps caps;
  Int enumeration_budget = Int(10'000'000);
  Int xlc_budget = Int(20'000'000);
  Int gclf_budget = Int(5'000'000);
  int max_depth = 3;
  double budget_factor = 10.0;  // hard cap on base calls: factor * call bound
};

struct SolveStats {
  int64_t base_block_calls = 0;
  std::map<int64_t, int64_t> base_calls_by_depth;
  int64_t recursive_solves = 0;
  int64_t coset_reductions = 0;
  int64_t pattern_probes = 0;       // recursive A-/B-problem solves
  int64_t variable_reductions = 0;  // linear-pattern reductions taken
  int64_t shape_shrinks = 0;
  int64_t pivot_steps = 0;
  bool used_fallback = false;
  std::vector<std::string> notes;
  double call_bound = 0.0;  // (d+1)^{3d} n^{d + 3 log2(d+1) + 2}
};

struct SolverResult {
  bool feasible = false;
  std::vector<Int> witness;
  SolveStats stats;
  std::string dispatch;  // root-level route taken
};

SolverResult solve(const GctufInstance& inst, const SolveOptions& opts = {});

double call_count_bound(int64_t n, int64_t d);

// ---------------------------------------------------------------------------
// exposed pieces (pattern command, tests)

// Hexagonal index set: l0 <= a+b <= u0, l1 <= a <= u1, l2 <= b <= u2.
struct PatternShape {
  Int l0, u0, l1, u1, l2, u2;

  bool contains(const Int& a, const Int& b) const;
  std::vector<std::pair<Int, Int>> pairs() const;  // lexicographic
  static std::optional<PatternShape> hull_of(const std::vector<std::pair<Int, Int>>& pairs);
};

enum class PairClass { interior, border, vertex };
enum class PatternType { one, two, three, four };

using PairSet = std::set<std::pair<Int, Int>>;

// Classification per the direction set D = {+-(1,0), +-(0,1), +-(1,-1)}:
// interior if every one-step neighbor is present, border if exactly one
// antiparallel direction pair is, vertex otherwise.
PairClass classify_pair(const PairSet& shape, const std::pair<Int, Int>& p);

// Partial patterns: per pair, achieved group elements with one witness each
// (witness over that side's columns).
struct Pattern {
  std::map<std::pair<Int, Int>, std::vector<std::pair<GroupElement, std::vector<Int>>>> at;

  int64_t size_at(const std::pair<Int, Int>& p) const {
    auto it = at.find(p);
    return it == at.end() ? 0 : int64_t(it->second.size());
  }
};

struct CombineHit {
  std::pair<Int, Int> pair;
  GroupElement ra, rb;
  std::vector<Int> xa, xb;
};
std::optional<CombineHit> combine_check(const Pattern& pa, const Pattern& pb,
                                        const AbelianGroup& g, const TargetSet& targets);

// Union-of-cosets reduction: quotient instance when R = R + H for a
// nontrivial proper subgroup H. Feasible x vectors are unchanged.
std::optional<GctufInstance> coset_reduce(const GctufInstance& inst);

// Equivalent instance over the pivoted matrix: one redundant variable bound
// is added, the unimodular substitution is recorded, and the old pivot row
// becomes a variable upper bound. The instance box is folded into the matrix
// across the transformation.
struct PivotTransform {
  GctufInstance inst;
  int row = -1, col = -1;
  Int eps;
  std::vector<Int> pivot_row_coeffs;  // original matrix row at `row`

  std::vector<Int> to_original(const std::vector<Int>& y) const;
};
std::optional<PivotTransform> pivot_transform(const GctufInstance& inst, int row, int col);

// Assembled sub-instance builders for a three-sum split.
GctufInstance side_a_problem(const GctufInstance& inst, const ThreeSumSplit& split,
                             const Int& alpha, const Int& beta, const TargetSet& targets);
GctufInstance side_b_problem(const GctufInstance& inst, const ThreeSumSplit& split,
                             const Int& alpha, const Int& beta, const TargetSet& targets);

// Pattern analysis of a three-sum split at solver fidelity (the partial
// pi-bar computation with recursive probes).
struct ShapeAnalysis {
  std::vector<std::pair<Int, Int>> shape;  // all pairs used, lexicographic
  Pattern pi_bar_a, pi_bar_b;
  bool paper_mode = false;
};
ShapeAnalysis analyze_patterns(const GctufInstance& inst, const ThreeSumSplit& split,
                               const SolveOptions& opts = {});

}  // namespace gctuf
