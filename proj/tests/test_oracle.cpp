#include <doctest.h>

#include "oracle.hpp"

using namespace gctuf;

namespace {

IntMatrix mk(std::vector<std::vector<int>> rows) {
  std::vector<std::vector<Int>> conv;
  for (auto& r : rows) conv.emplace_back(r.begin(), r.end());
  return IntMatrix::from_rows(conv);
}

std::vector<Int> iv(std::vector<int> v) { return std::vector<Int>(v.begin(), v.end()); }

}  // namespace

TEST_CASE("point enumeration") {
  // 0 <= x <= 2
  BoxResult box = derive_box(mk({{1}, {-1}}), iv({2, 0}), std::nullopt);
  REQUIRE(box.feasible);
  auto pts = enumerate_points(mk({{1}, {-1}}), iv({2, 0}), box.box);
  REQUIRE(pts.size() == 3);
  CHECK(pts[0][0] == 0);
  CHECK(pts[2][0] == 2);

  // infeasible system
  BoxResult none = derive_box(mk({{1}, {-1}}), iv({0, -1}), std::nullopt);
  CHECK_FALSE(none.feasible);

  // unbounded without a box errors
  CHECK_THROWS_AS(derive_box(mk({{-1}}), iv({0}), std::nullopt), error);
  // ... but a user box repairs it
  Box user;
  user.lo = iv({0});
  user.hi = iv({5});
  BoxResult fixed = derive_box(mk({{-1}}), iv({0}), user);
  REQUIRE(fixed.feasible);
  CHECK(fixed.box.hi[0] == 5);
}

TEST_CASE("brute gctuf") {
  GctufInstance inst;
  inst.t = mk({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  inst.b = iv({2, 2, 0, 0});
  inst.group = AbelianGroup({2});
  inst.labels = {inst.group.element_at(1), inst.group.element_at(1)};
  inst.targets = TargetSet::of(inst.group, {inst.group.element_at(1)});

  OracleOutcome r = brute_gctuf(inst);
  REQUIRE(r.feasible);
  CHECK(inst.satisfied_by(r.witness));

  // R = G with feasible relaxation is feasible
  inst.targets = TargetSet::of(inst.group, {inst.group.element_at(0), inst.group.element_at(1)});
  CHECK(brute_gctuf(inst).feasible);

  // unreachable target set makes it infeasible
  GctufInstance hard;
  hard.t = mk({{1}, {-1}});
  hard.b = iv({0, 0});  // x == 0
  hard.group = AbelianGroup({3});
  hard.labels = {hard.group.element_at(1)};
  hard.targets = TargetSet::of(hard.group, {hard.group.element_at(2)});
  CHECK_FALSE(brute_gctuf(hard).feasible);
}

TEST_CASE("lattice member enumeration") {
  LatticeDag path;
  path.n = 3;
  path.arcs = {{0, 1}, {1, 2}};  // a -> b -> c
  auto members = all_lattice_members(path);
  // predecessor-closed subsets of a path: prefixes
  REQUIRE(members.size() == 4);
  CHECK(members[0].empty());
  CHECK(members[1] == std::vector<int>{0});
  CHECK(members[2] == std::vector<int>{0, 1});
  CHECK(members[3] == std::vector<int>{0, 1, 2});
}

TEST_CASE("circulation enumeration") {
  CirculationInstance inst;
  inst.nv = 2;
  inst.group = AbelianGroup({2});
  inst.arcs = {{0, 1, Int(1), Int(2), inst.group.element_at(1)},
               {1, 0, Int(1), Int(3), inst.group.element_at(0)}};
  inst.target = inst.group.element_at(0);

  auto all = all_circulations(inst);
  REQUIRE(all.size() == 2);  // zero flow and the full 2-cycle

  inst.target = inst.group.element_at(1);
  GccOutcome r = brute_gcc(inst);
  REQUIRE(r.feasible);
  CHECK(r.flow[0] == 1);
  CHECK(r.flow[1] == 1);
  CHECK(r.length == 5);

  // zero target with nonnegative lengths: zero circulation is optimal
  inst.target = inst.group.element_at(0);
  GccOutcome z = brute_gcc(inst);
  REQUIRE(z.feasible);
  CHECK(z.length == 0);
}
