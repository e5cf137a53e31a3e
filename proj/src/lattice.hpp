#pragma once

#include <optional>
#include <vector>

#include "decomposition.hpp"
#include "netflow.hpp"
#include "types.hpp"

namespace gctuf {

// Lattice members are the predecessor-closed vertex sets of the DAG.
bool is_member(const LatticeDag& dag, const std::vector<bool>& x);

// Canonical code of a member: elements all of whose out-arcs leave the set.
std::vector<int> c_set(const LatticeDag& dag, const std::vector<bool>& x);

// Smallest member containing c (ancestor closure).
std::vector<bool> closure(const LatticeDag& dag, const std::vector<int>& c);

// Feasibility by enumerating codes of size < |G|: every feasible instance has
// a feasible member whose code is that small (remove a vanishing subset from
// the code of a minimal feasible member otherwise).
struct GclfOutcome {
  bool feasible = false;
  std::vector<int> member;       // sorted element list
  int64_t codes_tried = 0;
};
GclfOutcome solve_gclf(const GclfInstance& inst, const Int& budget = Int(5'000'000));

// Transposed-network base block: the system is a difference system on tree
// vertex potentials; levels below the componentwise-maximal potential within
// proximity |G|-1 form a lattice, solved per target element through GCLF.
// Falls back to windowed enumeration when the potential construction does not
// apply (unbounded potentials).
SolveOutcome solve_transposed_network_gctuf(const GctufInstance& inst,
                                            const NetworkRealization& transpose_real,
                                            const Int& budget = Int(5'000'000));

// The GCLF instance built for one target probe, exposed for tests. Level
// implications that force each other (equality constraints) are condensed
// into single ground elements, so the encoding digraph is acyclic.
struct PotentialReduction {
  bool applicable = false;  // false: fall back to enumeration
  bool relaxation_feasible = false;
  GclfInstance gclf;              // target left at zero; filled per probe
  std::vector<Int> p_star;        // maximal potential per vertex (root = 0)
  std::vector<std::vector<int>> element_vertices;  // ground element -> vertices to lower
  GroupElement base_value;        // group value of the potential p_star
};
PotentialReduction transposed_network_to_gclf(const GctufInstance& inst,
                                              const NetworkRealization& transpose_real);

// Weighted lattice optimization interface (brute-force backend only).
struct GcloOutcome {
  bool feasible = false;
  std::vector<int> member;
  Int weight;
};
GcloOutcome solve_gclo(const GclfInstance& inst, const std::vector<Int>& weights,
                       int64_t budget = int64_t(1) << 22);

}  // namespace gctuf
