#include "netflow.hpp"

#include <algorithm>
#include <functional>

#include "lp.hpp"

namespace gctuf {

GccReduction gctuf_network_to_gcc(const GctufInstance& inst, const NetworkRealization& real) {
  require(real.derive() == inst.t, errc::invalid, "realization does not match the matrix");
  int n = inst.t.cols(), k = inst.t.rows();
  GccReduction red;
  red.n_cols = n;
  red.n_rows = k;
  auto [tf, bf] = inst.full_system();
  auto x0 = integral_feasible_point(tf, bf);
  if (!x0) return red;
  red.relaxation_feasible = true;
  red.x0 = *x0;

  Int prox = inst.group.order() - 1;
  red.base.nv = real.nv;
  red.base.group = inst.group;
  red.base.target = inst.group.zero();
  for (int j = 0; j < n; ++j) {
    Int up = prox, down = prox;
    if (inst.box) {
      up = std::min(up, Int(inst.box->hi[j] - red.x0[j]));
      down = std::min(down, Int(red.x0[j] - inst.box->lo[j]));
    }
    const auto& arc = real.col_arcs[j];
    red.base.arcs.push_back({arc.tail, arc.head, up, Int(0), inst.labels[j]});
    red.base.arcs.push_back({arc.head, arc.tail, down, Int(0), neg(inst.group, inst.labels[j])});
  }
  std::vector<Int> tx0 = mat_vec(inst.t, red.x0);
  for (int u = 0; u < k; ++u) {
    Int slack = inst.b[u] - tx0[u];
    const auto& arc = real.row_arcs[u];
    red.base.arcs.push_back({arc.tail, arc.head, prox, Int(0), inst.group.zero()});
    red.base.arcs.push_back({arc.head, arc.tail, std::min(slack, prox), Int(0),
                             inst.group.zero()});
  }
  return red;
}

std::vector<Int> gcc_solution_to_x(const GccReduction& red, const Circulation& f) {
  std::vector<Int> x = red.x0;
  for (int j = 0; j < red.n_cols; ++j) x[j] += f[2 * j] - f[2 * j + 1];
  return x;
}

XlcEncoding gcc_to_xlc_lengths(const CirculationInstance& gcc) {
  int k = gcc.group.k();
  Int m = gcc.group.order();
  Int na = Int(std::max<size_t>(gcc.arcs.size(), 1));
  XlcEncoding enc;
  enc.digit_base.resize(k);
  enc.digit_max.assign(k, Int(0));
  Int base = 1;
  for (int i = 0; i < k; ++i) {
    enc.digit_base[i] = base;
    base *= m * m * na;
  }
  enc.scale = base;  // m^{2k} |A|^k
  for (const GArc& a : gcc.arcs)
    for (int i = 0; i < k; ++i) enc.digit_max[i] += Int(a.label.r[i]) * a.cap;
  for (int i = 0; i < k; ++i)
    require(enc.digit_max[i] < m * m * na, errc::invalid,
            "length encoding needs capacities below the group order; split arcs first");
  for (const GArc& a : gcc.arcs) {
    Int v = a.len * enc.scale;
    for (int i = 0; i < k; ++i) v += enc.digit_base[i] * a.label.r[i];
    enc.lengths.push_back(v);
  }
  return enc;
}

XlcDecoded xlc_decode(const XlcEncoding& enc, const Int& encoded) {
  XlcDecoded out;
  out.true_length = floor_div(encoded, enc.scale);
  Int rest = encoded - out.true_length * enc.scale;
  int k = int(enc.digit_base.size());
  out.digit_sums.resize(k);
  for (int i = k - 1; i >= 0; --i) {
    out.digit_sums[i] = rest / enc.digit_base[i];
    rest -= out.digit_sums[i] * enc.digit_base[i];
  }
  require(rest == 0, errc::internal, "decode left a remainder");
  return out;
}

std::vector<Int> xlc_targets(const XlcEncoding& enc, const CirculationInstance& gcc,
                             const Int& l) {
  int k = gcc.group.k();
  Int m = gcc.group.order();
  Int na = Int(std::max<size_t>(gcc.arcs.size(), 1));
  std::vector<Int> out;
  // tuples (d_1..d_k): digit i encodes d_i * m_i + phi_i(r)
  std::vector<Int> d(k, Int(0));
  std::vector<Int> d_hi(k);
  for (int i = 0; i < k; ++i) {
    Int mi = gcc.group.moduli[i];
    Int cap_by_mass = floor_div(enc.digit_max[i] - gcc.target.r[i], mi);
    d_hi[i] = std::min(Int(m * na - 1), cap_by_mass);
    if (d_hi[i] < 0) return out;  // target residue unreachable in this digit
  }
  while (true) {
    Int v = l * enc.scale;
    for (int i = 0; i < k; ++i)
      v += enc.digit_base[i] * (d[i] * gcc.group.moduli[i] + gcc.target.r[i]);
    out.push_back(v);
    int i = k - 1;
    while (i >= 0 && d[i] == d_hi[i]) d[i--] = 0;
    if (i < 0) break;
    d[i] += 1;
  }
  return out;
}

namespace {

// vertex-simple directed cycles as arc-index lists; anchored at their
// smallest vertex to enumerate each exactly once
std::vector<std::vector<int>> simple_cycles(int nv, const std::vector<GArc>& arcs) {
  std::vector<std::vector<int>> cycles;
  std::vector<std::vector<int>> out_arcs(nv);
  for (int i = 0; i < int(arcs.size()); ++i) {
    if (arcs[i].cap == 0) continue;
    if (arcs[i].tail == arcs[i].head) {
      cycles.push_back({i});  // loop
      continue;
    }
    out_arcs[arcs[i].tail].push_back(i);
  }
  for (int s = 0; s < nv; ++s) {
    std::vector<int> path;
    std::vector<bool> visited(nv, false);
    std::function<void(int)> dfs = [&](int v) {
      for (int ai : out_arcs[v]) {
        int w = arcs[ai].head;
        if (w == s) {
          path.push_back(ai);
          cycles.push_back(path);
          path.pop_back();
          continue;
        }
        if (w < s || visited[w]) continue;
        visited[w] = true;
        path.push_back(ai);
        dfs(w);
        path.pop_back();
        visited[w] = false;
      }
    };
    visited[s] = true;
    dfs(s);
  }
  return cycles;
}

}  // namespace

std::optional<XlcHit> solve_xlc(int nv, const std::vector<GArc>& arcs,
                                const std::vector<Int>& lengths, const std::set<Int>& targets,
                                const Int& budget) {
  require(lengths.size() == arcs.size(), errc::invalid, "length arity mismatch");
  if (targets.empty()) return std::nullopt;
  auto cycles = simple_cycles(nv, arcs);
  int nc = int(cycles.size());
  std::vector<Int> cyc_len(nc);
  std::vector<Int> cyc_maxmult(nc);
  for (int c = 0; c < nc; ++c) {
    Int len = 0;
    Int mm;
    bool first = true;
    for (int ai : cycles[c]) {
      len += lengths[ai];
      if (first || arcs[ai].cap < mm) mm = arcs[ai].cap;
      first = false;
    }
    cyc_len[c] = len;
    cyc_maxmult[c] = mm;
  }
  // sort by decreasing |length| so pruning bites early
  std::vector<int> order(nc);
  for (int i = 0; i < nc; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    Int la = int_abs(cyc_len[a]), lb = int_abs(cyc_len[b]);
    if (la != lb) return la > lb;
    return a < b;
  });
  // suffix bounds over full capacities
  std::vector<Int> suf_min(nc + 1, Int(0)), suf_max(nc + 1, Int(0));
  for (int i = nc - 1; i >= 0; --i) {
    int c = order[i];
    Int lo = cyc_len[c] < 0 ? cyc_len[c] * cyc_maxmult[c] : Int(0);
    Int hi = cyc_len[c] > 0 ? cyc_len[c] * cyc_maxmult[c] : Int(0);
    suf_min[i] = suf_min[i + 1] + lo;
    suf_max[i] = suf_max[i + 1] + hi;
  }

  std::vector<Int> residual;
  for (const GArc& a : arcs) residual.push_back(a.cap);
  std::vector<Int> mult(nc, Int(0));
  Int nodes = 0;
  std::optional<XlcHit> found;

  std::function<void(int, Int)> rec = [&](int i, Int acc) {
    if (found) return;
    require(++nodes <= budget, errc::budget, "exact-length search budget exceeded");
    // any target reachable from here?
    auto it = targets.lower_bound(acc + suf_min[i]);
    if (it == targets.end() || *it > acc + suf_max[i]) return;
    if (i == nc) {
      if (targets.count(acc)) {
        Circulation f(arcs.size(), Int(0));
        for (int c = 0; c < nc; ++c)
          for (int ai : cycles[c]) f[ai] += mult[c];
        found = XlcHit{std::move(f), acc};
      }
      return;
    }
    int c = order[i];
    Int cap = cyc_maxmult[c];
    for (int ai : cycles[c]) cap = std::min(cap, residual[ai]);
    for (Int v = 0; v <= cap && !found; ++v) {
      mult[c] = v;
      if (v > 0)
        for (int ai : cycles[c]) residual[ai] -= 1;
      rec(i + 1, acc + v * cyc_len[c]);
    }
    for (int ai : cycles[c]) residual[ai] += mult[c];
    mult[c] = 0;
  };
  rec(0, Int(0));
  return found;
}

namespace {

// capacities above |G|-1 break the digit separation; split such arcs into
// parallel chunks
CirculationInstance split_caps(const CirculationInstance& gcc, std::vector<int>& origin) {
  Int limit = gcc.group.order() - 1;
  if (limit < 1) limit = 1;
  CirculationInstance out;
  out.nv = gcc.nv;
  out.group = gcc.group;
  out.target = gcc.target;
  for (int i = 0; i < int(gcc.arcs.size()); ++i) {
    Int rest = gcc.arcs[i].cap;
    if (rest == 0) {
      GArc a = gcc.arcs[i];
      out.arcs.push_back(a);
      origin.push_back(i);
      continue;
    }
    while (rest > 0) {
      GArc a = gcc.arcs[i];
      a.cap = std::min(rest, limit);
      out.arcs.push_back(a);
      origin.push_back(i);
      rest -= a.cap;
    }
  }
  return out;
}

}  // namespace

std::optional<Circulation> solve_gcc(const CirculationInstance& gcc, bool minimize_length,
                                     const Int& budget) {
  gcc.validate();
  std::vector<int> origin;
  CirculationInstance work = split_caps(gcc, origin);

  CirculationInstance probe = work;
  if (!minimize_length)
    for (GArc& a : probe.arcs) a.len = 0;
  XlcEncoding enc = gcc_to_xlc_lengths(probe);

  Int lmin = 0, lmax = 0;
  if (minimize_length) {
    for (const GArc& a : probe.arcs) {
      if (a.len < 0) lmin += a.len * a.cap;
      if (a.len > 0) lmax += a.len * a.cap;
    }
  }
  for (Int l = lmin; l <= lmax; ++l) {
    auto targets_vec = xlc_targets(enc, probe, l);
    std::set<Int> targets(targets_vec.begin(), targets_vec.end());
    auto hit = solve_xlc(probe.nv, probe.arcs, enc.lengths, targets, budget);
    if (!hit) continue;
    // decode check: the attained encoding must reproduce length and digits
    XlcDecoded dec = xlc_decode(enc, hit->value);
    require(dec.true_length == l, errc::internal, "decoded length mismatch");
    Circulation merged(gcc.arcs.size(), Int(0));
    for (size_t i = 0; i < hit->flow.size(); ++i) merged[size_t(origin[i])] += hit->flow[i];
    require(is_circulation(gcc, merged), errc::internal, "xlc returned a non-circulation");
    require(group_value(gcc, merged) == gcc.target, errc::internal,
            "xlc circulation misses the group target");
    return merged;
  }
  return std::nullopt;
}

SolveOutcome solve_network_gctuf(const GctufInstance& inst, const NetworkRealization& real,
                                 const Int& budget) {
  SolveOutcome out;
  GccReduction red = gctuf_network_to_gcc(inst, real);
  if (!red.relaxation_feasible) return out;
  GroupElement base = combination(inst.group, inst.labels, red.x0);
  if (inst.targets.contains(base)) {
    out.feasible = true;
    out.witness = red.x0;
    return out;
  }
  for (const GroupElement& r : inst.targets.elements) {
    CirculationInstance probe = red.base;
    probe.target = sub(inst.group, r, base);
    auto f = solve_gcc(probe, false, budget);
    if (!f) continue;
    std::vector<Int> x = gcc_solution_to_x(red, *f);
    require(inst.satisfied_by(x), errc::internal, "network solver produced an invalid witness");
    out.feasible = true;
    out.witness = std::move(x);
    return out;
  }
  return out;
}

}  // namespace gctuf
