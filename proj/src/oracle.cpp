#include "oracle.hpp"

#include <algorithm>
#include <functional>

#include "lp.hpp"

namespace gctuf {

Int BoundedBox::volume() const {
  Int v = 1;
  for (size_t i = 0; i < lo.size(); ++i) {
    if (hi[i] < lo[i]) return 0;
    v *= hi[i] - lo[i] + 1;
  }
  return v;
}

BoxResult derive_box(const IntMatrix& t, const std::vector<Int>& b,
                     const std::optional<Box>& user_box) {
  int n = t.cols();
  BoxResult out;
  // fold the user box into the system before probing
  IntMatrix tt = t;
  std::vector<Int> bb = b;
  if (user_box) {
    require(user_box->size() == n, errc::invalid, "box arity mismatch");
    std::vector<std::vector<Int>> extra;
    for (int j = 0; j < n; ++j) {
      std::vector<Int> up(n, Int(0)), down(n, Int(0));
      up[j] = 1;
      down[j] = -1;
      extra.push_back(up);
      extra.push_back(down);
      bb.push_back(user_box->hi[j]);
      bb.push_back(-user_box->lo[j]);
    }
    tt = t.with_rows_appended(extra);
  }
  out.box.lo.resize(n);
  out.box.hi.resize(n);
  for (int j = 0; j < n; ++j) {
    std::vector<Int> dir(n, Int(0));
    dir[j] = 1;
    RangeResult r = range_of(tt, bb, dir);
    if (!r.feasible) {
      out.feasible = false;
      return out;
    }
    require(r.lo.has_value() && r.hi.has_value(), errc::invalid,
            "relaxation is unbounded and no variable box was given");
    out.box.lo[j] = *r.lo;
    out.box.hi[j] = *r.hi;
  }
  out.feasible = true;
  return out;
}

std::vector<std::vector<Int>> enumerate_points(const IntMatrix& t, const std::vector<Int>& b,
                                               const BoundedBox& box,
                                               const Int& budget) {
  int n = t.cols();
  require(int(box.lo.size()) == n, errc::invalid, "box arity mismatch");
  std::vector<std::vector<Int>> out;
  if (box.volume() == 0) return out;
  require(box.volume() <= budget, errc::budget, "enumeration box exceeds budget");
  std::vector<Int> x = box.lo;
  while (true) {
    if (satisfies(t, b, x)) out.push_back(x);
    int j = n - 1;
    while (j >= 0 && x[j] == box.hi[j]) {
      x[j] = box.lo[j];
      --j;
    }
    if (j < 0) break;
    x[j] += 1;
  }
  return out;
}

namespace {

std::vector<std::vector<Int>> instance_points(const GctufInstance& inst, const Int& budget,
                                              bool* relaxation_feasible) {
  auto [t, b] = inst.full_system();
  if (t.cols() == 0) {
    bool ok = true;
    for (const Int& bi : b)
      if (bi < 0) ok = false;
    *relaxation_feasible = ok;
    if (ok) return {std::vector<Int>{}};
    return {};
  }
  BoxResult box = derive_box(t, b, std::nullopt);
  *relaxation_feasible = box.feasible;
  if (!box.feasible) return {};
  return enumerate_points(t, b, box.box, budget);
}

}  // namespace

OracleOutcome brute_gctuf(const GctufInstance& inst, const Int& budget) {
  inst.validate();
  OracleOutcome out;
  bool relax_ok = false;
  for (const auto& x : instance_points(inst, budget, &relax_ok)) {
    if (inst.targets.contains(combination(inst.group, inst.labels, x))) {
      out.feasible = true;
      out.witness = x;
      return out;
    }
  }
  return out;
}

std::vector<std::vector<Int>> brute_gctuf_all(const GctufInstance& inst, const Int& budget) {
  inst.validate();
  std::vector<std::vector<Int>> out;
  bool relax_ok = false;
  for (const auto& x : instance_points(inst, budget, &relax_ok))
    if (inst.targets.contains(combination(inst.group, inst.labels, x))) out.push_back(x);
  return out;
}

OracleOutcome proximity_window_solve(const GctufInstance& inst, const Int& budget) {
  inst.validate();
  OracleOutcome out;
  auto [t, b] = inst.full_system();
  auto x0 = integral_feasible_point(t, b);
  if (!x0) return out;
  if (inst.targets.contains(combination(inst.group, inst.labels, *x0))) {
    out.feasible = true;
    out.witness = *x0;
    return out;
  }
  Int d = inst.depth();
  BoundedBox window;
  int n = inst.t.cols();
  window.lo.resize(size_t(n));
  window.hi.resize(size_t(n));
  for (int j = 0; j < n; ++j) {
    window.lo[size_t(j)] = (*x0)[size_t(j)] - d;
    window.hi[size_t(j)] = (*x0)[size_t(j)] + d;
    if (inst.box) {
      window.lo[size_t(j)] = std::max(window.lo[size_t(j)], inst.box->lo[size_t(j)]);
      window.hi[size_t(j)] = std::min(window.hi[size_t(j)], inst.box->hi[size_t(j)]);
    }
  }
  for (const auto& x : enumerate_points(t, b, window, budget)) {
    if (inst.targets.contains(combination(inst.group, inst.labels, x))) {
      out.feasible = true;
      out.witness = x;
      return out;
    }
  }
  return out;
}

ExactPatterns brute_pattern(const GctufInstance& inst, const ThreeSumSplit& split,
                            const Int& budget) {
  ExactPatterns out;
  bool relax_ok = false;
  std::vector<Int> fv(split.f.begin(), split.f.end());
  std::vector<Int> hv(split.h.begin(), split.h.end());
  std::set<std::pair<Int, Int>> pair_set;
  std::map<std::pair<Int, Int>, std::set<std::vector<Int>>> seen_a, seen_b;
  for (const auto& x : instance_points(inst, budget, &relax_ok)) {
    std::vector<Int> xa, xb;
    for (int c : split.cols_a) xa.push_back(x[c]);
    for (int c : split.cols_b) xb.push_back(x[c]);
    Int alpha = dot(fv, xb);
    Int beta = dot(hv, xa);
    auto key = std::make_pair(alpha, beta);
    pair_set.insert(key);
    std::vector<GroupElement> la, lb;
    for (int c : split.cols_a) la.push_back(inst.labels[c]);
    for (int c : split.cols_b) lb.push_back(inst.labels[c]);
    out.pi_a[key].insert(combination(inst.group, la, xa));
    out.pi_b[key].insert(combination(inst.group, lb, xb));
    if (seen_a[key].insert(xa).second) out.sols_a[key].push_back(xa);
    if (seen_b[key].insert(xb).second) out.sols_b[key].push_back(xb);
  }
  out.pairs.assign(pair_set.begin(), pair_set.end());
  return out;
}

std::vector<std::vector<int>> all_lattice_members(const LatticeDag& dag, int64_t budget) {
  dag.validate();
  require(dag.n < 62 && (int64_t(1) << dag.n) <= budget, errc::budget,
          "ground set too large for member enumeration");
  std::vector<std::vector<int>> out;
  for (int64_t mask = 0; mask < (int64_t(1) << dag.n); ++mask) {
    bool member = true;
    for (auto [u, v] : dag.arcs) {
      // arc entering the set from outside disqualifies it
      if ((mask & (int64_t(1) << v)) && !(mask & (int64_t(1) << u))) {
        member = false;
        break;
      }
    }
    if (!member) continue;
    std::vector<int> elems;
    for (int i = 0; i < dag.n; ++i)
      if (mask & (int64_t(1) << i)) elems.push_back(i);
    out.push_back(std::move(elems));
  }
  return out;
}

OracleOutcome brute_gclf_members(const GclfInstance& inst, std::vector<std::vector<int>>* members) {
  inst.validate();
  OracleOutcome out;
  auto all = all_lattice_members(inst.dag);
  if (members) *members = all;
  for (const auto& x : all) {
    GroupElement acc = inst.group.zero();
    for (int i : x) acc = add(inst.group, acc, inst.gamma[size_t(i)]);
    if (acc == inst.target) {
      out.feasible = true;
      out.witness.assign(size_t(inst.dag.n), Int(0));
      for (int i : x) out.witness[size_t(i)] = 1;
      return out;
    }
  }
  return out;
}

std::vector<Circulation> all_circulations(const CirculationInstance& inst, const Int& budget) {
  inst.validate();
  Int space = 1;
  for (const GArc& a : inst.arcs) {
    space *= a.cap + 1;
    require(space <= budget, errc::budget, "circulation space exceeds budget");
  }
  std::vector<Circulation> out;
  int m = int(inst.arcs.size());
  Circulation f(size_t(m), Int(0));
  std::vector<Int> net(size_t(inst.nv), Int(0));
  // residual slack per vertex: max remaining |net| correction from arcs >= idx
  std::vector<std::vector<Int>> slack(size_t(m) + 1, std::vector<Int>(size_t(inst.nv), Int(0)));
  for (int i = m - 1; i >= 0; --i) {
    slack[size_t(i)] = slack[size_t(i) + 1];
    slack[size_t(i)][size_t(inst.arcs[size_t(i)].tail)] += inst.arcs[size_t(i)].cap;
    slack[size_t(i)][size_t(inst.arcs[size_t(i)].head)] += inst.arcs[size_t(i)].cap;
  }
  std::function<void(int)> rec = [&](int i) {
    for (int v = 0; v < inst.nv; ++v)
      if (int_abs(net[size_t(v)]) > slack[size_t(i)][size_t(v)]) return;
    if (i == m) {
      out.push_back(f);
      return;
    }
    const GArc& a = inst.arcs[size_t(i)];
    for (Int val = 0; val <= a.cap; ++val) {
      f[size_t(i)] = val;
      net[size_t(a.tail)] += val;
      net[size_t(a.head)] -= val;
      rec(i + 1);
      net[size_t(a.tail)] -= val;
      net[size_t(a.head)] += val;
    }
    f[size_t(i)] = 0;
  };
  rec(0);
  return out;
}

GccOutcome brute_gcc(const CirculationInstance& inst, const Int& budget) {
  GccOutcome out;
  std::vector<Int> lengths;
  for (const GArc& a : inst.arcs) lengths.push_back(a.len);
  for (const Circulation& f : all_circulations(inst, budget)) {
    if (!(group_value(inst, f) == inst.target)) continue;
    Int len = length_of(lengths, f);
    if (!out.feasible || len < out.length) {
      out.feasible = true;
      out.flow = f;
      out.length = len;
    }
  }
  return out;
}

}  // namespace gctuf
