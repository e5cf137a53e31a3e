#include <doctest.h>

#include <set>

#include "generate.hpp"
#include "oracle.hpp"
#include "solver.hpp"

using namespace gctuf;

namespace {

GroupElement el(const AbelianGroup& g, int64_t idx) { return g.element_at(idx); }

Pattern table(const AbelianGroup& g,
              const std::vector<std::pair<std::pair<int, int>, std::vector<int64_t>>>& cells) {
  Pattern p;
  for (const auto& [pair, elems] : cells) {
    auto key = std::make_pair(Int(pair.first), Int(pair.second));
    for (int64_t e : elems) p.at[key].push_back({el(g, e), {}});
  }
  return p;
}

}  // namespace

TEST_CASE("figure-2 pattern tables: combination found exactly at (0,0)") {
  AbelianGroup z4({4});
  Pattern pa = table(z4, {{{0, 0}, {0, 1, 2}}, {{1, 0}, {0, 1}}, {{2, 0}, {0}}});
  Pattern pb = table(z4, {{{0, 0}, {1}}, {{1, 0}, {0, 1}}, {{2, 0}, {0}}});
  TargetSet r3 = TargetSet::of(z4, {el(z4, 3)});

  auto hit = combine_check(pa, pb, z4, r3);
  REQUIRE(hit.has_value());
  CHECK(hit->pair == std::make_pair(Int(0), Int(0)));
  CHECK(hit->ra == el(z4, 2));
  CHECK(hit->rb == el(z4, 1));

  // the two right cells alone admit no combination into {3}
  Pattern pa_right = table(z4, {{{1, 0}, {0, 1}}, {{2, 0}, {0}}});
  Pattern pb_right = table(z4, {{{1, 0}, {0, 1}}, {{2, 0}, {0}}});
  CHECK_FALSE(combine_check(pa_right, pb_right, z4, r3).has_value());

  // empty target set never combines
  CHECK_FALSE(combine_check(pa, pb, z4, TargetSet{}).has_value());
}

TEST_CASE("figure-3 table breaks the propagation bound at depth 4") {
  AbelianGroup z5({5});
  Pattern pa = table(z5, {{{0, 0}, {0, 1, 2, 3, 4}}, {{1, 0}, {0, 1, 2}}, {{2, 0}, {0}}});
  int64_t d = 4;
  // |pi_A(0,0)| = 5 >= d+1 and (2,0) lies two steps away, yet |pi_A(1,0)| = 3 < d
  CHECK(pa.size_at({Int(0), Int(0)}) >= d + 1);
  CHECK(pa.size_at({Int(2), Int(0)}) >= 1);
  CHECK(pa.size_at({Int(1), Int(0)}) == 3);
  CHECK(pa.size_at({Int(1), Int(0)}) < d);
}

TEST_CASE("propagation bound holds exhaustively at depth <= 3 on seeded splits") {
  const std::vector<std::pair<Int, Int>> dirs{{Int(1), Int(0)}, {Int(-1), Int(0)},
                                              {Int(0), Int(1)}, {Int(0), Int(-1)},
                                              {Int(1), Int(-1)}, {Int(-1), Int(1)}};
  int checked = 0;
  for (uint64_t seed = 0; seed < 40; ++seed) {
    GctufGenParams p;
    p.kind = MatrixKind::three_sum;
    p.size_hint = 5;
    p.depth = int(seed % 3) + 1;
    p.attach_structure = true;
    GctufInstance inst = gen_gctuf(p, 9100 + seed);
    const ThreeSumSplit& split = inst.decomposition_hint->split;
    ExactPatterns ex = brute_pattern(inst, split);
    int64_t d = inst.depth();
    std::set<std::pair<Int, Int>> pairs(ex.pairs.begin(), ex.pairs.end());
    for (const auto& pr : ex.pairs) {
      if (int64_t(ex.pi_a[pr].size()) < d + 1) continue;
      for (const auto& v : dirs) {
        std::pair<Int, Int> two{pr.first + 2 * v.first, pr.second + 2 * v.second};
        std::pair<Int, Int> one{pr.first + v.first, pr.second + v.second};
        if (!pairs.count(two)) continue;
        REQUIRE(pairs.count(one));
        CHECK(int64_t(ex.pi_a[one].size()) >= d);
        ++checked;
      }
    }
  }
  CHECK(checked > 10);
}

TEST_CASE("pair classification matches the displayed shape") {
  // 3x3 grid minus its top-right corner: i at the middle, b left/below it
  PairSet shape;
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b)
      if (a + b <= 3) shape.insert({Int(a), Int(b)});
  CHECK(classify_pair(shape, {Int(1), Int(1)}) == PairClass::interior);
  CHECK(classify_pair(shape, {Int(1), Int(0)}) == PairClass::border);
  CHECK(classify_pair(shape, {Int(0), Int(1)}) == PairClass::border);
  for (auto p : std::vector<std::pair<int, int>>{{0, 0}, {2, 0}, {2, 1}, {0, 2}, {1, 2}})
    CHECK(classify_pair(shape, {Int(p.first), Int(p.second)}) == PairClass::vertex);

  // a single pair is a vertex pair
  PairSet one{{Int(0), Int(0)}};
  CHECK(classify_pair(one, {Int(0), Int(0)}) == PairClass::vertex);
}

TEST_CASE("shapes without interior pairs have at most four vertex pairs") {
  // all shapes with widths <= 3 up to translation
  for (int u1 = 0; u1 <= 3; ++u1)
    for (int u2 = 0; u2 <= 3; ++u2)
      for (int l0 = 0; l0 <= u1 + u2; ++l0)
        for (int u0 = l0; u0 <= u1 + u2 && u0 - l0 <= 3; ++u0) {
          PatternShape s{Int(l0), Int(u0), Int(0), Int(u1), Int(0), Int(u2)};
          auto pairs = s.pairs();
          if (pairs.empty()) continue;
          PairSet set(pairs.begin(), pairs.end());
          bool interior = false;
          int vertices = 0;
          for (const auto& p : set) {
            PairClass c = classify_pair(set, p);
            if (c == PairClass::interior) interior = true;
            if (c == PairClass::vertex) ++vertices;
          }
          if (!interior) CHECK(vertices <= 4);
        }
}

TEST_CASE("coset reduction") {
  GctufInstance inst;
  inst.t = IntMatrix::identity(2);
  inst.b = {Int(1), Int(1)};
  inst.group = AbelianGroup({4});
  inst.labels = {el(inst.group, 1), el(inst.group, 2)};
  inst.targets = TargetSet::of(inst.group, {el(inst.group, 1), el(inst.group, 3)});

  auto red = coset_reduce(inst);
  REQUIRE(red.has_value());
  CHECK(red->group.order() == 2);
  CHECK(red->targets.size() == 1);
  CHECK(red->depth() == 1);
  // feasible x vectors are identical
  Box box{{Int(-2), Int(-2)}, {Int(2), Int(2)}};
  inst.box = box;
  auto before = brute_gctuf_all(inst);
  GctufInstance after = *red;
  after.box = box;
  CHECK(brute_gctuf_all(after) == before);

  // not a coset union: unchanged
  inst.targets = TargetSet::of(inst.group, {el(inst.group, 1), el(inst.group, 2)});
  CHECK_FALSE(coset_reduce(inst).has_value());

  // R = G reduces to the trivial group
  inst.targets = TargetSet::of(
      inst.group, {el(inst.group, 0), el(inst.group, 1), el(inst.group, 2), el(inst.group, 3)});
  auto full = coset_reduce(inst);
  REQUIRE(full.has_value());
  GctufInstance iter = *full;
  while (auto again = coset_reduce(iter)) iter = *again;
  CHECK(iter.group.trivial());
}

TEST_CASE("pivot transform preserves the feasible set through the recorded map") {
  int preserved = 0;
  for (uint64_t seed = 0; seed < 60; ++seed) {
    GctufGenParams p;
    p.kind = seed % 2 ? MatrixKind::network : MatrixKind::three_sum;
    p.size_hint = 4;
    p.depth = 1 + int(seed % 2);
    GctufInstance inst = gen_gctuf(p, 501 + seed);
    // first +-1 position
    int pi = -1, pj = -1;
    for (int i = 0; i < inst.t.rows() && pi < 0; ++i)
      for (int j = 0; j < inst.t.cols() && pi < 0; ++j)
        if (inst.t.at(i, j) == 1 || inst.t.at(i, j) == -1) {
          pi = i;
          pj = j;
        }
    if (pi < 0) continue;
    auto pt = pivot_transform(inst, pi, pj);
    REQUIRE(pt.has_value());

    std::set<std::vector<Int>>原;
    auto orig = brute_gctuf_all(inst);
    std::set<std::vector<Int>> lhs(orig.begin(), orig.end());
    std::set<std::vector<Int>> rhs;
    for (const auto& y : brute_gctuf_all(pt->inst)) rhs.insert(pt->to_original(y));
    CHECK(lhs == rhs);
    if (lhs == rhs) ++preserved;
  }
  CHECK(preserved >= 50);
}

TEST_CASE("solver dispatch basics") {
  // depth 0: plain LP solve, zero base-block calls
  GctufInstance d0;
  d0.t = IntMatrix::identity(2);
  d0.b = {Int(3), Int(3)};
  d0.group = AbelianGroup({2});
  d0.labels = {el(d0.group, 1), el(d0.group, 0)};
  d0.targets = TargetSet::of(d0.group, {el(d0.group, 0), el(d0.group, 1)});
  SolverResult r0 = solve(d0);
  CHECK(r0.feasible);
  CHECK(r0.dispatch == "lp");
  CHECK(r0.stats.base_block_calls == 0);

  // base-block network instance: routed to the circulation solver, one call
  GctufGenParams p;
  p.kind = MatrixKind::network;
  p.size_hint = 4;
  p.depth = 1;
  GctufInstance net = gen_gctuf(p, 7);
  SolverResult rn = solve(net);
  CHECK(rn.dispatch == "network");
  CHECK(rn.stats.base_block_calls == 1);

  // depth above the guarantee is rejected with a distinct error
  GctufInstance deep;
  deep.t = IntMatrix::identity(1);
  deep.b = {Int(1)};
  deep.group = AbelianGroup({5});
  deep.labels = {el(deep.group, 1)};
  deep.targets = TargetSet::of(deep.group, {el(deep.group, 0)});
  bool unsupported = false;
  try {
    solve(deep);
  } catch (const error& e) {
    unsupported = e.kind() == errc::unsupported;
  }
  CHECK(unsupported);

  // non-TU input is rejected
  GctufInstance bad = d0;
  bad.t = IntMatrix::from_rows({{Int(1), Int(1)}, {Int(-1), Int(1)}});
  CHECK_THROWS_AS(solve(bad), error);
}

TEST_CASE("solver matches the oracle on a mixed corpus") {
  MatrixKind kinds[] = {MatrixKind::network, MatrixKind::transposed_network, MatrixKind::core,
                        MatrixKind::three_sum, MatrixKind::pivot};
  int64_t reductions = 0;
  int feas = 0, infeas = 0;
  for (uint64_t seed = 0; seed < 120; ++seed) {
    GctufGenParams p;
    p.kind = kinds[seed % 5];
    p.size_hint = 3 + int(seed % 5);
    p.depth = 1 + int(seed % 3);
    p.plant = (seed % 3) != 0;
    GctufInstance inst = gen_gctuf(p, 31000 + seed);
    OracleOutcome expect = brute_gctuf(inst);
    SolverResult got = solve(inst);
    REQUIRE(got.feasible == expect.feasible);
    if (got.feasible) {
      CHECK(inst.satisfied_by(got.witness));
      ++feas;
    } else {
      ++infeas;
    }
    // call accounting: zero at depth zero, exactly one on base blocks, and
    // always within the analytic bound
    if (inst.depth() == 0) CHECK(got.stats.base_block_calls == 0);
    if (got.stats.call_bound > 0)
      CHECK(double(got.stats.base_block_calls) <= got.stats.call_bound);
    if (inst.t.cols() <= 3 && inst.depth() > 0) CHECK(got.stats.base_block_calls == 1);
    reductions += got.stats.variable_reductions;
  }
  CHECK(feas > 30);
  CHECK(infeas > 10);
}

TEST_CASE("averaging: solution sums are reachable through the midpoint pair") {
  const std::vector<std::pair<Int, Int>> dirs{{Int(1), Int(0)}, {Int(0), Int(1)},
                                              {Int(1), Int(-1)}};
  int applications = 0;
  for (uint64_t seed = 0; seed < 25; ++seed) {
    GctufGenParams p;
    p.kind = MatrixKind::three_sum;
    p.size_hint = 5;
    p.depth = 1 + int(seed % 3);
    p.attach_structure = true;
    GctufInstance inst = gen_gctuf(p, 8800 + seed);
    const ThreeSumSplit& split = inst.decomposition_hint->split;
    ExactPatterns ex = brute_pattern(inst, split);
    std::set<std::pair<Int, Int>> pairs(ex.pairs.begin(), ex.pairs.end());
    for (int side = 0; side < 2; ++side) {
      auto& sols = side == 0 ? ex.sols_a : ex.sols_b;
      for (const auto& pr : ex.pairs) {
        for (const auto& v : dirs) {
          std::pair<Int, Int> two{pr.first + 2 * v.first, pr.second + 2 * v.second};
          std::pair<Int, Int> one{pr.first + v.first, pr.second + v.second};
          if (!pairs.count(two)) continue;
          REQUIRE(pairs.count(one));
          if (sols[pr].size() > 25 || sols[two].size() > 25) continue;
          std::set<std::vector<Int>> mid_sums;
          for (const auto& x3 : sols[one])
            for (const auto& x4 : sols[one]) {
              std::vector<Int> s(x3.size());
              for (size_t i = 0; i < s.size(); ++i) s[i] = x3[i] + x4[i];
              mid_sums.insert(std::move(s));
            }
          for (const auto& x1 : sols[pr])
            for (const auto& x2 : sols[two]) {
              std::vector<Int> s(x1.size());
              for (size_t i = 0; i < s.size(); ++i) s[i] = x1[i] + x2[i];
              CHECK(mid_sums.count(s) == 1);
              ++applications;
            }
        }
      }
    }
  }
  CHECK(applications > 100);
}

TEST_CASE("missed combinations only hide behind singleton B-patterns") {
  int hidden_cases = 0, examined = 0;
  for (uint64_t seed = 0; seed < 40; ++seed) {
    GctufGenParams p;
    p.kind = MatrixKind::three_sum;
    p.size_hint = 5;
    p.depth = 1 + int(seed % 3);
    p.plant = (seed % 2) == 0;
    p.attach_structure = true;
    GctufInstance inst = gen_gctuf(p, 60000 + seed);
    const ThreeSumSplit& split = inst.decomposition_hint->split;
    int64_t d = inst.depth();
    ShapeAnalysis an = analyze_patterns(inst, split);
    ExactPatterns ex = brute_pattern(inst, split);
    for (const auto& pr : an.shape) {
      ++examined;
      // solution exists at this pair?
      bool exists = false;
      for (const auto& ra : ex.pi_a[pr])
        for (const auto& rb : ex.pi_b[pr])
          if (inst.targets.contains(add(inst.group, ra, rb))) exists = true;
      // detected by the partial patterns?
      bool detected = false;
      for (const auto& [ra, xa] : an.pi_bar_a.at[pr])
        for (const auto& [rb, xb] : an.pi_bar_b.at[pr])
          if (inst.targets.contains(add(inst.group, ra, rb))) detected = true;
      if (exists && !detected) {
        ++hidden_cases;
        CHECK(int64_t(ex.pi_b[pr].size()) == 1);
        CHECK(int64_t(ex.pi_a[pr].size()) >= d + 1);
      }
    }
  }
  CHECK(examined > 100);
}

TEST_CASE("paper-mode shape stays within width d and agrees with the oracle") {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    GctufGenParams p;
    p.kind = MatrixKind::three_sum;
    p.size_hint = 5;
    p.depth = 1 + int(seed % 3);
    GctufInstance inst = gen_gctuf(p, 92000 + seed);
    SolveOptions opts;
    opts.paper_shape = true;
    SolverResult paper = solve(inst, opts);
    OracleOutcome expect = brute_gctuf(inst);
    CHECK(paper.feasible == expect.feasible);
    if (paper.feasible) CHECK(inst.satisfied_by(paper.witness));
  }

  // width bound on the clamped shape itself
  for (uint64_t seed = 0; seed < 20; ++seed) {
    GctufGenParams p;
    p.kind = MatrixKind::three_sum;
    p.size_hint = 5;
    p.depth = 1 + int(seed % 3);
    p.attach_structure = true;
    GctufInstance inst = gen_gctuf(p, 95000 + seed);
    SolveOptions opts;
    opts.paper_shape = true;
    ShapeAnalysis an = analyze_patterns(inst, inst.decomposition_hint->split, opts);
    if (an.shape.empty()) continue;
    auto hull = PatternShape::hull_of(an.shape);
    if (!hull) continue;
    Int d = inst.depth();
    CHECK(hull->u0 - hull->l0 <= d);
    CHECK(hull->u1 - hull->l1 <= d);
    CHECK(hull->u2 - hull->l2 <= d);
  }
}
