#pragma once

#include <optional>
#include <vector>

#include "matrix.hpp"
#include "support.hpp"

namespace gctuf {

// Exact determinant via fraction-free (Bareiss) elimination.
Int determinant(const IntMatrix& m);

// Smith normal form with transforms: m == s * d * u, s and u unimodular,
// d diagonal with non-negative entries forming a divisibility chain.
// Pivot selection: smallest nonzero absolute value, ties broken by lowest
// (row, col) index, so transforms are reproducible.
struct SnfResult {
  IntMatrix s;
  IntMatrix d;
  IntMatrix u;
};
SnfResult smith_normal_form(const IntMatrix& m);

// Exact total-unimodularity test via the Ghouila-Houri criterion applied to
// the smaller dimension. `exhaustive` is false when min(rows, cols) exceeds
// `cap` and the verdict came from randomized square-submatrix sampling.
struct TuVerdict {
  bool tu = false;
  bool exhaustive = true;
};
TuVerdict check_totally_unimodular(const IntMatrix& m, int cap = 14, uint64_t sample_seed = 1,
                                   int samples = 2000);
bool is_totally_unimodular(const IntMatrix& m, int cap = 14);

// Largest absolute n x n minor of a full-column-rank matrix, plus whether
// every nonzero n x n minor attains that value.
struct DeltaVerdict {
  Int delta;
  bool strict = false;
};
DeltaVerdict delta_modularity(const IntMatrix& a, int cap = 18);

int rank_of(const IntMatrix& m);

// Particular rational solution of a*x = rhs (free variables set to zero), or
// nullopt if the system is inconsistent.
std::optional<std::vector<Rat>> solve_linear(const IntMatrix& a, const std::vector<Rat>& rhs);

// Rational basis of the null space of a.
std::vector<std::vector<Rat>> null_space(const IntMatrix& a);

// Exact inverse of a square nonsingular matrix.
std::optional<std::vector<std::vector<Rat>>> inverse(const IntMatrix& a);

// Integral solution of a*x = rhs via the Smith normal form, or nullopt if none
// exists over the integers.
std::optional<std::vector<Int>> solve_integral(const IntMatrix& a, const std::vector<Int>& rhs);

}  // namespace gctuf
