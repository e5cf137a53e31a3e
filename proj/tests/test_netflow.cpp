#include <doctest.h>

#include "netflow.hpp"
#include "oracle.hpp"

using namespace gctuf;

namespace {

std::vector<Int> iv(std::vector<int> v) { return std::vector<Int>(v.begin(), v.end()); }

AbelianGroup random_group(Rng& rng, int max_order) {
  switch (rng.uniform(0, 3)) {
    case 0:
      return AbelianGroup({2});
    case 1:
      return AbelianGroup({3});
    case 2:
      return AbelianGroup({int64_t(rng.uniform(2, max_order))});
    default:
      return AbelianGroup({2, 2});
  }
}

CirculationInstance random_gcc(Rng& rng) {
  CirculationInstance inst;
  inst.nv = int(rng.uniform(2, 4));
  inst.group = random_group(rng, 4);
  int arcs = int(rng.uniform(2, 6));
  for (int i = 0; i < arcs; ++i) {
    GArc a;
    a.tail = int(rng.uniform(0, inst.nv - 1));
    a.head = int(rng.uniform(0, inst.nv - 1));
    a.cap = rng.uniform(0, 3);
    a.len = rng.uniform(-2, 3);
    a.label = inst.group.element_at(rng.uniform(0, inst.group.order() - 1));
    inst.arcs.push_back(a);
  }
  inst.target = inst.group.element_at(rng.uniform(0, inst.group.order() - 1));
  return inst;
}

NetworkRealization random_realization(Rng& rng, int k, int n) {
  NetworkRealization real;
  real.nv = k + 1;
  for (int u = 0; u < k; ++u) {
    int attach = u == 0 ? 0 : int(rng.uniform(0, u));
    if (rng.coin())
      real.row_arcs.push_back({attach, u + 1});
    else
      real.row_arcs.push_back({u + 1, attach});
  }
  for (int c = 0; c < n; ++c)
    real.col_arcs.push_back({int(rng.uniform(0, k)), int(rng.uniform(0, k))});
  return real;
}

}  // namespace

TEST_CASE("length encoding formula") {
  // k=1, m=2, |A|=3, len 1, label 1: 1*4*3 + 1 = 13
  CirculationInstance inst;
  inst.nv = 2;
  inst.group = AbelianGroup({2});
  inst.target = inst.group.zero();
  inst.arcs = {{0, 1, Int(1), Int(1), inst.group.element_at(1)},
               {1, 0, Int(1), Int(0), inst.group.zero()},
               {0, 0, Int(1), Int(0), inst.group.zero()}};
  XlcEncoding enc = gcc_to_xlc_lengths(inst);
  CHECK(enc.scale == 12);
  CHECK(enc.lengths[0] == 13);

  // zero labels: pure scaling, decode recovers the length
  CirculationInstance plain = inst;
  for (auto& a : plain.arcs) a.label = plain.group.zero();
  XlcEncoding enc0 = gcc_to_xlc_lengths(plain);
  for (size_t i = 0; i < plain.arcs.size(); ++i)
    CHECK(enc0.lengths[i] == plain.arcs[i].len * enc0.scale);
}

TEST_CASE("encoding decodes exactly on enumerated circulations") {
  Rng rng(71);
  for (int it = 0; it < 120; ++it) {
    CirculationInstance inst = random_gcc(rng);
    XlcEncoding enc = gcc_to_xlc_lengths(inst);
    std::vector<Int> lengths;
    for (const auto& a : inst.arcs) lengths.push_back(a.len);
    for (const Circulation& f : all_circulations(inst)) {
      Int encoded = 0;
      for (size_t i = 0; i < f.size(); ++i) encoded += enc.lengths[i] * f[i];
      XlcDecoded dec = xlc_decode(enc, encoded);
      CHECK(dec.true_length == length_of(lengths, f));
      for (int i = 0; i < inst.group.k(); ++i) {
        Int tally = 0;
        for (size_t a = 0; a < f.size(); ++a) tally += Int(inst.arcs[a].label.r[i]) * f[a];
        CHECK(dec.digit_sums[i] == tally);
        CHECK(tally < inst.group.order() * inst.group.order() * Int(inst.arcs.size()));
      }
    }
  }
}

TEST_CASE("exact length search on a two-cycle") {
  std::vector<GArc> arcs = {{0, 1, Int(1), Int(0), GroupElement{{}}},
                            {1, 0, Int(1), Int(0), GroupElement{{}}}};
  auto hit5 = solve_xlc(2, arcs, iv({2, 3}), {Int(5)});
  REQUIRE(hit5.has_value());
  CHECK(hit5->flow == iv({1, 1}));

  auto hit0 = solve_xlc(2, arcs, iv({2, 3}), {Int(0)});
  REQUIRE(hit0.has_value());
  CHECK(hit0->flow == iv({0, 0}));

  CHECK_FALSE(solve_xlc(2, arcs, iv({2, 3}), {Int(4)}).has_value());
}

TEST_CASE("gcc via encoding matches brute force") {
  // single 2-cycle, group Z/2, labels (1,0), target 1
  CirculationInstance inst;
  inst.nv = 2;
  inst.group = AbelianGroup({2});
  inst.arcs = {{0, 1, Int(1), Int(0), inst.group.element_at(1)},
               {1, 0, Int(1), Int(0), inst.group.zero()}};
  inst.target = inst.group.element_at(1);
  auto f = solve_gcc(inst, false);
  REQUIRE(f.has_value());
  CHECK(*f == iv({1, 1}));

  // zero target with nonnegative lengths: zero circulation is optimal
  inst.target = inst.group.zero();
  for (auto& a : inst.arcs) a.len = 1;
  auto z = solve_gcc(inst, true);
  REQUIRE(z.has_value());
  CHECK(*z == iv({0, 0}));

  Rng rng(1234);
  for (int it = 0; it < 150; ++it) {
    CirculationInstance probe = random_gcc(rng);
    GccOutcome expect = brute_gcc(probe);
    auto got = solve_gcc(probe, true);
    CHECK(got.has_value() == expect.feasible);
    if (got && expect.feasible) {
      std::vector<Int> lengths;
      for (const auto& a : probe.arcs) lengths.push_back(a.len);
      CHECK(is_circulation(probe, *got));
      CHECK(group_value(probe, *got) == probe.target);
      CHECK(length_of(lengths, *got) == expect.length);
    }
  }
}

TEST_CASE("network base block solver") {
  Rng rng(4321);
  int feasible_seen = 0, infeasible_seen = 0;
  for (int it = 0; it < 120; ++it) {
    int k = int(rng.uniform(1, 4));
    int n = int(rng.uniform(1, 4));
    NetworkRealization real = random_realization(rng, k, n);
    GctufInstance inst;
    inst.t = real.derive();
    inst.group = random_group(rng, 4);
    for (int j = 0; j < n; ++j)
      inst.labels.push_back(inst.group.element_at(rng.uniform(0, inst.group.order() - 1)));
    // planted point with box and slack
    std::vector<Int> x_star(size_t(n), Int(0));
    for (int j = 0; j < n; ++j) x_star[size_t(j)] = rng.uniform(-2, 2);
    inst.b = mat_vec(inst.t, x_star);
    for (auto& bi : inst.b) bi += rng.uniform(0, 2);
    Box box;
    for (int j = 0; j < n; ++j) {
      box.lo.push_back(x_star[size_t(j)] - rng.uniform(0, 2));
      box.hi.push_back(x_star[size_t(j)] + rng.uniform(0, 2));
    }
    inst.box = box;
    int64_t keep = rng.uniform(1, inst.group.order());
    std::vector<GroupElement> targets;
    for (int64_t i = 0; i < keep; ++i)
      targets.push_back(inst.group.element_at(rng.uniform(0, inst.group.order() - 1)));
    inst.targets = TargetSet::of(inst.group, targets);

    OracleOutcome expect = brute_gctuf(inst);
    SolveOutcome got = solve_network_gctuf(inst, real);
    CHECK(got.feasible == expect.feasible);
    if (got.feasible) {
      CHECK(inst.satisfied_by(got.witness));
      ++feasible_seen;
    } else {
      ++infeasible_seen;
    }
  }
  CHECK(feasible_seen > 10);
  CHECK(infeasible_seen > 10);

  // infeasible relaxation propagates
  GctufInstance bad;
  bad.t = IntMatrix::from_rows({{Int(1)}, {Int(-1)}});
  bad.b = iv({0, -1});
  bad.group = AbelianGroup({2});
  bad.labels = {bad.group.element_at(1)};
  bad.targets = TargetSet::of(bad.group, {bad.group.zero()});
  NetworkRealization triv;
  triv.nv = 3;
  triv.row_arcs = {{0, 1}, {1, 2}};
  triv.col_arcs = {{0, 1}};
  // t for this realization is a single column (1,0); rebuild b accordingly
  bad.t = triv.derive();
  CHECK_FALSE(solve_network_gctuf(bad, triv).feasible);
}
