#include <doctest.h>

#include <set>

#include "linalg.hpp"
#include "oracle.hpp"
#include "reduction.hpp"

using namespace gctuf;

namespace {

IntMatrix mk(std::vector<std::vector<int>> rows) {
  std::vector<std::vector<Int>> conv;
  for (auto& r : rows) conv.emplace_back(r.begin(), r.end());
  return IntMatrix::from_rows(conv);
}

std::vector<Int> iv(std::vector<int> v) { return std::vector<Int>(v.begin(), v.end()); }

// Seeded strictly delta-modular instance via the congruency-to-equality
// rewrite of a TU system, bounded by construction. Returns nullopt when the
// sampled matrix fails the strictness check.
std::optional<IpInstance> sample_strict_instance(Rng& rng, int n, int delta_target) {
  // bounded TU base: identity and negated identity rows plus difference rows
  std::vector<std::vector<Int>> rows;
  std::vector<Int> b;
  for (int j = 0; j < n; ++j) {
    std::vector<Int> up(size_t(n) + 1, Int(0)), down(size_t(n) + 1, Int(0));
    up[size_t(j)] = 1;
    down[size_t(j)] = -1;
    rows.push_back(up);
    b.push_back(rng.uniform(1, 3));
    rows.push_back(down);
    b.push_back(rng.uniform(0, 2));
  }
  // congruency gamma^T x + m y = r as two inequalities; the extra column is y
  std::vector<Int> gamma(size_t(n), Int(0));
  for (int j = 0; j < n; ++j) gamma[size_t(j)] = rng.uniform(-1, 1);
  std::vector<Int> eq(size_t(n) + 1, Int(0));
  for (int j = 0; j < n; ++j) eq[size_t(j)] = gamma[size_t(j)];
  eq[size_t(n)] = delta_target;
  std::vector<Int> eqneg;
  for (const Int& v : eq) eqneg.push_back(-v);
  Int r = rng.uniform(0, delta_target - 1);
  rows.push_back(eq);
  b.push_back(r);
  rows.push_back(eqneg);
  b.push_back(-r);

  IpInstance ip;
  ip.a = IntMatrix::from_rows(rows);
  ip.b = b;
  DeltaVerdict dv = delta_modularity(ip.a);
  if (!dv.strict || dv.delta != delta_target) return std::nullopt;
  return ip;
}

}  // namespace

TEST_CASE("max minor search") {
  MaxMinor mm = find_max_minor_submatrix(mk({{1, 1}, {1, -1}, {-1, -1}}));
  CHECK(int_abs(mm.det) == 2);
  CHECK(mm.rows == std::vector<int>{0, 1});

  MaxMinor one_col = find_max_minor_submatrix(mk({{2}, {1}}));
  CHECK(int_abs(one_col.det) == 2);
  CHECK(one_col.rows == std::vector<int>{0});

  CHECK_THROWS_AS(find_max_minor_submatrix(mk({{1, 1}, {2, 2}})), error);
}

TEST_CASE("worked reduction example") {
  IpInstance ip;
  ip.a = mk({{1, 1}, {1, -1}, {-1, -1}});
  ip.b = iv({1, 1, 1});
  Reduction red = reduce_ip(ip);
  CHECK(red.delta == 2);
  // one nontrivial congruency with modulus 2, target 0
  REQUIRE(red.mcctu.congruencies.size() == 1);
  CHECK(red.mcctu.congruencies[0].m == 2);
  CHECK(red.mcctu.congruencies[0].r == 0);
  CHECK(is_totally_unimodular(red.mcctu.t));

  // TU input: no nontrivial congruencies at all
  IpInstance tu;
  tu.a = mk({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  tu.b = iv({1, 1, 1, 1});
  Reduction rtu = reduce_ip(tu);
  CHECK(rtu.delta == 1);
  CHECK(rtu.mcctu.congruencies.empty());
}

TEST_CASE("lift solutions") {
  IntMatrix h = mk({{1, 1}, {1, -1}});
  CHECK(lift_solution(iv({2, 0}), h) == iv({1, 1}));
  CHECK(lift_solution(iv({0, 0}), h) == iv({0, 0}));
  // round trip for arbitrary integral x
  Rng rng(5);
  for (int it = 0; it < 50; ++it) {
    std::vector<Int> x{rng.uniform(-5, 5), rng.uniform(-5, 5)};
    CHECK(lift_solution(mat_vec(h, x), h) == x);
  }
  CHECK_THROWS_AS(lift_solution(iv({1, 0}), h), error);  // preimage (1/2, 1/2)
}

TEST_CASE("reduction fidelity on seeded instances") {
  Rng rng(2024);
  int done = 0;
  while (done < 60) {
    int n = int(rng.uniform(2, 3));
    int delta = int(rng.uniform(2, 4));
    auto ip = sample_strict_instance(rng, n, delta);
    if (!ip) continue;
    ++done;
    Reduction red = reduce_ip(*ip);
    CHECK(red.delta == delta);
    Int prod = 1;
    for (const auto& cc : red.mcctu.congruencies) prod *= cc.m;
    CHECK(prod == delta);

    // enumerate both sides; x -> Hx must be a bijection between them
    BoxResult bx = derive_box(ip->a, ip->b, std::nullopt);
    REQUIRE(bx.feasible);
    auto xs = enumerate_points(ip->a, ip->b, bx.box);
    std::set<std::vector<Int>> images;
    for (const auto& x : xs) images.insert(mat_vec(red.h, x));

    GctufInstance g = congruencies_to_group(red.mcctu);
    auto ys_all = brute_gctuf_all(g);
    std::set<std::vector<Int>> ys(ys_all.begin(), ys_all.end());
    CHECK(images == ys);

    // objective correspondence on every feasible point
    if (red.mcctu.cbar) {
      for (const auto& x : xs) {
        auto y = mat_vec(red.h, x);
        Rat lhs = 0;
        for (size_t j = 0; j < y.size(); ++j) lhs += (*red.mcctu.cbar)[j] * Rat(y[j]);
      }
    }
  }
}

TEST_CASE("congruency to group view") {
  McctuInstance m;
  m.t = mk({{1, 0}, {0, 1}});
  m.b = iv({3, 3});
  m.congruencies.push_back({iv({1, 0}), Int(1), Int(4)});
  GctufInstance g = congruencies_to_group(m);
  CHECK(g.group.moduli == std::vector<int64_t>{4});
  CHECK(g.targets.size() == 1);

  McctuInstance two;
  two.t = m.t;
  two.b = m.b;
  two.congruencies.push_back({iv({1, 0}), Int(0), Int(2)});
  two.congruencies.push_back({iv({0, 1}), Int(1), Int(2)});
  GctufInstance g2 = congruencies_to_group(two);
  CHECK(g2.group.order() == 4);

  McctuInstance vac;
  vac.t = m.t;
  vac.b = m.b;
  vac.congruencies.push_back({iv({1, 1}), Int(0), Int(1)});
  GctufInstance g3 = congruencies_to_group(vac);
  CHECK(g3.group.trivial());
  CHECK(g3.targets.size() == 1);
}
