#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "groups.hpp"
#include "matrix.hpp"
#include "support.hpp"

namespace gctuf {

struct DecompNode;
using DecompPtr = std::shared_ptr<const DecompNode>;

// Per-variable integer bounds. When attached to an instance they are part of
// the constraint system (kept separate from the matrix so structure
// recognition sees the unpadded matrix; every algorithm folds them in).
struct Box {
  std::vector<Int> lo, hi;

  int size() const { return int(lo.size()); }
  Box restricted(const std::vector<int>& cols) const {
    Box out;
    for (int c : cols) {
      out.lo.push_back(lo[c]);
      out.hi.push_back(hi[c]);
    }
    return out;
  }
};

// TU feasibility instance with a relaxed group constraint gamma^T x in R.
// |R| == 1 is the plain group-constrained problem; R == G is an
// unconstrained TU problem.
struct GctufInstance {
  IntMatrix t;
  std::vector<Int> b;
  AbelianGroup group;
  std::vector<GroupElement> labels;  // one per column
  TargetSet targets;
  std::optional<Box> box;
  DecompPtr decomposition_hint;  // optional, supplied by instance files

  int64_t depth() const { return group.order() - targets.size(); }

  // Constraint system with box rows folded in.
  std::pair<IntMatrix, std::vector<Int>> full_system() const;

  void validate() const;
  bool satisfied_by(const std::vector<Int>& x) const;   // Tx <= b, box, group
  bool relaxation_ok(const std::vector<Int>& x) const;  // Tx <= b and box only
};

struct IpInstance {
  IntMatrix a;
  std::vector<Int> b;
  std::optional<std::vector<Int>> c;
  std::optional<Box> box;

  std::pair<IntMatrix, std::vector<Int>> full_system() const;
  void validate() const;
};

struct Congruency {
  std::vector<Int> gamma;
  Int r;
  Int m;  // modulus >= 1
};

struct McctuInstance {
  IntMatrix t;
  std::vector<Int> b;
  std::optional<std::vector<Rat>> cbar;
  std::vector<Congruency> congruencies;
  std::optional<Box> box;
  std::optional<IntMatrix> bijection;  // the matrix h with y = h x when reduced from an IP

  std::pair<IntMatrix, std::vector<Int>> full_system() const;
  bool congruent(const std::vector<Int>& x) const;
};

// Digraph with capacities, lengths, and group labels on arcs; parallel arcs
// and loops allowed.
struct GArc {
  int tail = 0, head = 0;
  Int cap;
  Int len;
  GroupElement label;
};

struct CirculationInstance {
  int nv = 0;
  std::vector<GArc> arcs;
  AbelianGroup group;
  GroupElement target;

  void validate() const;
};

using Circulation = std::vector<Int>;  // flow per arc, parallel to `arcs`

bool is_circulation(const CirculationInstance& inst, const Circulation& f);
GroupElement group_value(const CirculationInstance& inst, const Circulation& f);
Int length_of(const std::vector<Int>& lengths, const Circulation& f);

// Acyclic digraph encoding a lattice set family: X is a member iff no arc
// enters X from outside, i.e. X is closed under predecessors.
struct LatticeDag {
  int n = 0;
  std::vector<std::pair<int, int>> arcs;

  void validate() const;  // checks acyclicity and index ranges
};

struct GclfInstance {
  LatticeDag dag;
  AbelianGroup group;
  std::vector<GroupElement> gamma;  // one per ground element
  GroupElement target;

  void validate() const;
};

}  // namespace gctuf
