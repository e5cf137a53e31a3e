#include <doctest.h>

#include "lp.hpp"

using namespace gctuf;

namespace {

IntMatrix mk(std::vector<std::vector<int>> rows) {
  std::vector<std::vector<Int>> conv;
  for (auto& r : rows) conv.emplace_back(r.begin(), r.end());
  return IntMatrix::from_rows(conv);
}

std::vector<Int> iv(std::vector<int> v) { return std::vector<Int>(v.begin(), v.end()); }

}  // namespace

TEST_CASE("feasibility basics") {
  // x <= 0 componentwise: x = 0 works
  VertexResult v = lp_feasible_vertex(IntMatrix::identity(3), iv({0, 0, 0}));
  CHECK(v.feasible);
  CHECK(v.vertex);
  for (const auto& xi : v.x) CHECK(xi == 0);

  // x <= 0 and x >= 1: empty
  VertexResult inf = lp_feasible_vertex(mk({{1}, {-1}}), iv({0, -1}));
  CHECK_FALSE(inf.feasible);
}

TEST_CASE("optimization and ranges") {
  // 0 <= x <= 5
  IntMatrix t = mk({{1}, {-1}});
  RangeResult r = range_of(t, iv({5, 0}), iv({1}));
  CHECK(r.feasible);
  CHECK(*r.lo == 0);
  CHECK(*r.hi == 5);

  // x unbounded above
  RangeResult u = range_of(mk({{-1}}), iv({0}), iv({1}));
  CHECK(u.feasible);
  CHECK(*u.lo == 0);
  CHECK_FALSE(u.hi.has_value());

  // fractional LP optimum floors correctly: 2x <= 5, x >= 0 -> max x = 5/2
  RangeResult f = range_of(mk({{2}, {-1}}), iv({5, 0}), iv({1}));
  CHECK(*f.hi == 2);
  CHECK(*f.lo == 0);
}

TEST_CASE("integral points of TU systems") {
  // planted-point systems: digraph incidence rows stay TU
  Rng rng(99);
  for (int it = 0; it < 100; ++it) {
    int n = int(rng.uniform(1, 5));
    int k = int(rng.uniform(1, 6));
    IntMatrix t(k, n);
    for (int i = 0; i < k; ++i) {
      int a = int(rng.uniform(0, n - 1));
      int b = int(rng.uniform(0, n - 1));
      if (a != b) {
        t.at(i, a) = 1;
        t.at(i, b) = -1;
      } else {
        t.at(i, a) = rng.coin() ? 1 : -1;
      }
    }
    std::vector<Int> x_star(n);
    for (int j = 0; j < n; ++j) x_star[j] = rng.uniform(-3, 3);
    std::vector<Int> b = mat_vec(t, x_star);
    for (int i = 0; i < k; ++i) b[i] += rng.uniform(0, 2);

    auto x = integral_feasible_point(t, b);
    REQUIRE(x.has_value());
    CHECK(satisfies(t, b, *x));
  }

  // non-pointed but feasible: single row over two variables
  auto x = integral_feasible_point(mk({{1, 1}}), iv({3}));
  REQUIRE(x.has_value());
  CHECK((*x)[0] + (*x)[1] <= 3);

  CHECK_FALSE(integral_feasible_point(mk({{1}, {-1}}), iv({0, -1})).has_value());
}

TEST_CASE("vertices of TU systems are integral") {
  Rng rng(5);
  for (int it = 0; it < 100; ++it) {
    int n = int(rng.uniform(1, 4));
    int k = int(rng.uniform(n, 6));
    IntMatrix t(k, n);
    for (int i = 0; i < k; ++i) {
      int a = int(rng.uniform(0, n - 1));
      int b = int(rng.uniform(0, n - 1));
      if (a != b) {
        t.at(i, a) = 1;
        t.at(i, b) = -1;
      } else {
        t.at(i, a) = rng.coin() ? 1 : -1;
      }
    }
    // bound everything so the polyhedron is pointed
    std::vector<std::vector<Int>> extra;
    std::vector<Int> b;
    for (int i = 0; i < k; ++i) b.push_back(rng.uniform(0, 4));
    for (int j = 0; j < n; ++j) {
      std::vector<Int> up(n, Int(0)), down(n, Int(0));
      up[j] = 1;
      down[j] = -1;
      extra.push_back(up);
      extra.push_back(down);
    }
    IntMatrix t2 = t.with_rows_appended(extra);
    for (int j = 0; j < n; ++j) {
      b.push_back(5);
      b.push_back(5);
    }
    VertexResult v = lp_feasible_vertex(t2, b);
    if (!v.feasible) continue;
    REQUIRE(v.vertex);
    for (const auto& xi : v.x) CHECK(rat_is_integer(xi));
  }
}
