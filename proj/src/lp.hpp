#pragma once

#include <optional>
#include <vector>

#include "matrix.hpp"
#include "support.hpp"

namespace gctuf {

// Exact rational linear programming over systems t*x <= b with free x.
// Two-phase simplex with Bland's rule; every number is an exact rational, so
// results are certificates, not approximations.

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  std::vector<Rat> x;  // defined when status == optimal
  Rat value;
};

LpResult lp_optimize(const IntMatrix& t, const std::vector<Int>& b, const std::vector<Rat>& c,
                     bool minimize);

std::optional<std::vector<Rat>> lp_feasible_point(const IntMatrix& t, const std::vector<Int>& b);

// A vertex of {x : t x <= b} when the polyhedron is pointed and nonempty;
// otherwise any feasible point with `vertex == false`.
struct VertexResult {
  bool feasible = false;
  bool vertex = false;
  std::vector<Rat> x;
};
VertexResult lp_feasible_vertex(const IntMatrix& t, const std::vector<Int>& b);

// Integral feasible point of a TU system, or nullopt if infeasible. Works on
// unbounded and non-pointed systems by crashing to a vertex of the
// intersection with a unit box around a rational feasible point.
std::optional<std::vector<Int>> integral_feasible_point(const IntMatrix& t,
                                                        const std::vector<Int>& b);

// Integer range of w^T x over the integer points of a TU system: bounds are
// ceil(min) and floor(max) of the rational optima. nullopt bound = unbounded.
struct RangeResult {
  bool feasible = false;
  std::optional<Int> lo, hi;
};
RangeResult range_of(const IntMatrix& t, const std::vector<Int>& b, const std::vector<Int>& w);

}  // namespace gctuf
