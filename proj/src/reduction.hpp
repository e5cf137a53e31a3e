#pragma once

#include "types.hpp"

namespace gctuf {

// n x n row-submatrix with maximal absolute determinant. Exhaustive minor
// enumeration up to the budget; beyond it a greedy rational row-pivot pick,
// whose determinant the caller must check against the expected delta.
struct MaxMinor {
  IntMatrix h;
  std::vector<int> rows;
  Int det;
  bool exhaustive = true;
};
MaxMinor find_max_minor_submatrix(const IntMatrix& a, const Int& minor_budget = Int(2'000'000));

// Strictly delta-modular IP -> congruency-constrained TU problem, with the
// bijection x -> h x between feasible sets. The returned moduli multiply to
// delta and all congruency targets are zero.
struct Reduction {
  McctuInstance mcctu;
  IntMatrix h;
  Int delta;
};
Reduction reduce_ip(const IpInstance& ip);

// Congruency view -> group view (factors with modulus > 1 only).
GctufInstance congruencies_to_group(const McctuInstance& m);

// x = h^{-1} y; errors when the preimage is not integral.
std::vector<Int> lift_solution(const std::vector<Int>& y, const IntMatrix& h);

// Rewrites min{c x : a x <= b} with a totally delta-modular matrix into the
// full-column-rank form over x = x+ - x- (preprocessing flag support).
IpInstance split_variables(const IpInstance& ip);

}  // namespace gctuf
