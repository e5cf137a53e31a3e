#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "decomposition.hpp"
#include "types.hpp"

namespace gctuf {

// Network-matrix base block: group-constrained TU feasibility as a
// group-constrained circulation on the realization digraph, solved through
// the exact-length-circulation encoding.

struct SolveOutcome {
  bool feasible = false;
  std::vector<Int> witness;
};

// Deviation form around an integral point x0 of the relaxation: each column
// becomes a forward/backward arc pair with proximity capacities, each tree
// row a forward/backward pair whose backward capacity enforces the row slack.
struct GccReduction {
  bool relaxation_feasible = false;
  std::vector<Int> x0;
  CirculationInstance base;  // target left at zero; filled per probe
  int n_cols = 0;
  int n_rows = 0;
};
GccReduction gctuf_network_to_gcc(const GctufInstance& inst, const NetworkRealization& real);
std::vector<Int> gcc_solution_to_x(const GccReduction& red, const Circulation& f);

// Group labels folded into arc lengths at separated orders of magnitude.
// With m = |G| and factors m_1..m_k:
//   lengths[a] = len(a) * m^{2k} |A|^k + sum_i m^{2i-2} |A|^{i-1} phi_i(eta(a))
struct XlcEncoding {
  std::vector<Int> lengths;
  Int scale;                    // m^{2k} |A|^k
  std::vector<Int> digit_base;  // m^{2i-2} |A|^{i-1}, i = 1..k
  std::vector<Int> digit_max;   // sum_a phi_i(eta(a)) * cap(a)
};
XlcEncoding gcc_to_xlc_lengths(const CirculationInstance& gcc);

struct XlcDecoded {
  Int true_length;
  std::vector<Int> digit_sums;  // sum_a phi_i(eta(a)) f(a)
};
XlcDecoded xlc_decode(const XlcEncoding& enc, const Int& encoded);

// All encoded targets representing "length L and group value = gcc.target".
std::vector<Int> xlc_targets(const XlcEncoding& enc, const CirculationInstance& gcc, const Int& l);

// Exhaustive exact-length circulation: simple-cycle multisets with capacity
// bookkeeping. Returns a circulation of encoded length in `targets` together
// with the attained value, or nullopt after certified exhaustion.
struct XlcHit {
  Circulation flow;
  Int value;
};
std::optional<XlcHit> solve_xlc(int nv, const std::vector<GArc>& arcs,
                                const std::vector<Int>& lengths, const std::set<Int>& targets,
                                const Int& budget = Int(20'000'000));

// Group-constrained circulation via the encoding. With minimize_length the
// returned circulation has minimum length among feasible ones.
std::optional<Circulation> solve_gcc(const CirculationInstance& gcc, bool minimize_length,
                                     const Int& budget = Int(20'000'000));

SolveOutcome solve_network_gctuf(const GctufInstance& inst, const NetworkRealization& real,
                                 const Int& budget = Int(20'000'000));

}  // namespace gctuf
