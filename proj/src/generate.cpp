#include "generate.hpp"

#include <algorithm>
#include <set>

#include "linalg.hpp"

namespace gctuf {

MatrixKind matrix_kind_from_name(const std::string& name) {
  if (name == "network") return MatrixKind::network;
  if (name == "transposed-network" || name == "transposed") return MatrixKind::transposed_network;
  if (name == "core") return MatrixKind::core;
  if (name == "three-sum" || name == "threesum") return MatrixKind::three_sum;
  if (name == "pivot") return MatrixKind::pivot;
  fail(errc::parse, "unknown matrix kind: " + name);
}

std::string matrix_kind_name(MatrixKind kind) {
  switch (kind) {
    case MatrixKind::network:
      return "network";
    case MatrixKind::transposed_network:
      return "transposed-network";
    case MatrixKind::core:
      return "core";
    case MatrixKind::three_sum:
      return "three-sum";
    case MatrixKind::pivot:
      return "pivot";
  }
  fail(errc::internal, "unreachable");
}

namespace {

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
  for (int c = 0; c < n; ++c) {
    int v = int(rng.uniform(0, k));
    int w = int(rng.uniform(0, k));
    real.col_arcs.push_back({v, w});
  }
  return real;
}

std::vector<Int> sparse_vector(Rng& rng, int len) {
  std::vector<Int> v(size_t(len), Int(0));
  if (len == 0) return v;
  int nz = int(rng.uniform(0, std::min(len, 2)));
  for (int i = 0; i < nz; ++i) v[size_t(rng.uniform(0, len - 1))] = rng.coin() ? 1 : -1;
  return v;
}

}  // namespace

GeneratedMatrix gen_matrix(MatrixKind kind, Rng& rng, int size_hint) {
  int hint = std::max(size_hint, 2);
  switch (kind) {
    case MatrixKind::network: {
      int k = int(rng.uniform(2, std::max(2, hint)));
      int n = hint;
      NetworkRealization real = random_realization(rng, k, n);
      auto node = std::make_shared<DecompNode>();
      node->kind = DecompNode::Kind::network;
      node->realization = real;
      GeneratedMatrix out{real.derive(), node};
      require(is_totally_unimodular(out.t), errc::internal, "network matrices are TU");
      return out;
    }
    case MatrixKind::transposed_network: {
      int k = hint;  // tree arcs = columns of t
      int n = int(rng.uniform(2, std::max(2, hint)));
      NetworkRealization real = random_realization(rng, k, n);
      auto node = std::make_shared<DecompNode>();
      node->kind = DecompNode::Kind::transposed_network;
      node->realization = real;
      GeneratedMatrix out{real.derive().transpose(), node};
      require(is_totally_unimodular(out.t), errc::internal, "transposed network matrices are TU");
      return out;
    }
    case MatrixKind::core: {
      int id = rng.coin() ? 1 : 2;
      IntMatrix m = core_matrix(id);
      int steps = int(rng.uniform(0, std::max(0, hint - 5)));
      for (int s = 0; s < steps; ++s) {
        switch (rng.uniform(0, 3)) {
          case 0: {  // unit row
            std::vector<Int> unit(size_t(m.cols()), Int(0));
            unit[size_t(rng.uniform(0, m.cols() - 1))] = rng.coin() ? 1 : -1;
            m = m.with_rows_appended({unit});
            break;
          }
          case 1:  // duplicate row
            m = m.with_rows_appended({m.row(int(rng.uniform(0, m.rows() - 1)))});
            break;
          case 2:  // sign flip of a row
            m.negate_row(int(rng.uniform(0, m.rows() - 1)));
            break;
          default: {  // unit column
            IntMatrix wider = m.transpose()
                                  .with_rows_appended({[&] {
                                    std::vector<Int> unit(size_t(m.rows()), Int(0));
                                    unit[size_t(rng.uniform(0, m.rows() - 1))] =
                                        rng.coin() ? 1 : -1;
                                    return unit;
                                  }()})
                                  .transpose();
            m = wider;
            break;
          }
        }
      }
      auto core = recognize_core(m);
      require(core.has_value(), errc::internal, "core extension must stay recognizable");
      auto node = std::make_shared<DecompNode>();
      node->kind = DecompNode::Kind::core;
      node->core_id = core->core_id;
      node->trace = core->trace;
      GeneratedMatrix out{m, node};
      require(is_totally_unimodular(out.t), errc::internal, "core-derived matrices are TU");
      return out;
    }
    case MatrixKind::three_sum: {
      for (int attempt = 0; attempt < 200; ++attempt) {
        int na = std::max(2, hint - hint / 2);
        int nb = std::max(2, hint / 2);
        GeneratedMatrix a = gen_matrix(MatrixKind::network, rng, na);
        GeneratedMatrix b = gen_matrix(MatrixKind::network, rng, nb);
        std::vector<Int> e = sparse_vector(rng, a.t.rows());
        std::vector<Int> f = sparse_vector(rng, b.t.cols());
        std::vector<Int> g = sparse_vector(rng, b.t.rows());
        std::vector<Int> h = sparse_vector(rng, a.t.cols());
        IntMatrix t = three_sum_assemble(a.t, e, f, g, h, b.t);
        TuVerdict tu = check_totally_unimodular(t);
        if (!tu.exhaustive || !tu.tu) continue;
        // the side systems must also be TU, as genuine decompositions have
        TuVerdict ta = check_totally_unimodular(a.t.with_rows_appended({h}));
        TuVerdict tb = check_totally_unimodular(b.t.with_rows_appended({f}));
        if (!ta.exhaustive || !ta.tu || !tb.exhaustive || !tb.tu) continue;
        auto node = std::make_shared<DecompNode>();
        node->kind = DecompNode::Kind::three_sum;
        ThreeSumSplit split;
        for (int i = 0; i < a.t.rows(); ++i) split.rows_a.push_back(i);
        for (int i = 0; i < b.t.rows(); ++i) split.rows_b.push_back(a.t.rows() + i);
        for (int j = 0; j < a.t.cols(); ++j) split.cols_a.push_back(j);
        for (int j = 0; j < b.t.cols(); ++j) split.cols_b.push_back(a.t.cols() + j);
        split.e = e;
        split.f = f;
        split.g = g;
        split.h = h;
        node->split = split;
        node->child_a = a.structure;
        node->child_b = b.structure;
        return GeneratedMatrix{t, node};
      }
      fail(errc::internal, "three-sum sampling failed to find a TU composition");
    }
    case MatrixKind::pivot: {
      GeneratedMatrix base = gen_matrix(MatrixKind::three_sum, rng, hint);
      std::vector<std::pair<int, int>> spots;
      for (int i = 0; i < base.t.rows(); ++i)
        for (int j = 0; j < base.t.cols(); ++j)
          if (base.t.at(i, j) == 1 || base.t.at(i, j) == -1) spots.push_back({i, j});
      require(!spots.empty(), errc::internal, "three-sum output has a nonzero entry");
      auto [i, j] = spots[size_t(rng.uniform(0, int(spots.size()) - 1))];
      IntMatrix t = pivot(base.t, i, j);
      require(is_totally_unimodular(t), errc::internal, "pivoting preserves TU");
      auto node = std::make_shared<DecompNode>();
      node->kind = DecompNode::Kind::pivot;
      // the stored child describes the unpivoted matrix; position recorded so
      // that pivot(t, i, j) undoes the generation step
      node->pivot_row = i;
      node->pivot_col = j;
      node->child = base.structure;
      return GeneratedMatrix{t, nullptr};  // structure hint omitted: search must invert
    }
  }
  fail(errc::internal, "unreachable");
}

AbelianGroup gen_group(Rng& rng, int64_t order_max, int64_t order_min) {
  while (true) {
    switch (rng.uniform(0, 4)) {
      case 0: {
        int64_t m = rng.uniform(std::max<int64_t>(order_min, 1), order_max);
        if (m < order_min) continue;
        return m <= 1 ? AbelianGroup(std::vector<int64_t>{}) : AbelianGroup({m});
      }
      case 1:
        if (4 > order_max || 4 < order_min) continue;
        return AbelianGroup({2, 2});
      case 2:
        if (2 > order_max || 2 < order_min) continue;
        return AbelianGroup({2});
      case 3:
        if (3 > order_max || 3 < order_min) continue;
        return AbelianGroup({3});
      default:
        if (4 > order_max || 4 < order_min) continue;
        return AbelianGroup({4});
    }
  }
}

GctufInstance gen_gctuf(const GctufGenParams& p, uint64_t seed) {
  Rng rng(seed);
  GctufInstance inst;
  Rng mrng = rng.fork(1);
  GeneratedMatrix gm = gen_matrix(p.kind, mrng, p.size_hint);
  inst.t = gm.t;
  if (p.attach_structure) inst.decomposition_hint = gm.structure;
  int n = inst.t.cols();

  Rng grng = rng.fork(2);
  inst.group = gen_group(grng, p.group_order_max, int64_t(p.depth) + 1);
  for (int j = 0; j < n; ++j)
    inst.labels.push_back(inst.group.element_at(grng.uniform(0, inst.group.order() - 1)));

  Rng brng = rng.fork(3);
  std::vector<Int> x_star(size_t(n), Int(0));
  for (int j = 0; j < n; ++j) x_star[size_t(j)] = brng.uniform(-2, 2);
  inst.b = mat_vec(inst.t, x_star);
  if (p.plant) {
    for (auto& bi : inst.b) bi += brng.uniform(0, 2);
  } else {
    // slack may be negative, so relaxation feasibility is not guaranteed
    for (auto& bi : inst.b) bi += brng.uniform(-1, 1);
  }
  Box box;
  for (int j = 0; j < n; ++j) {
    box.lo.push_back(x_star[size_t(j)] - brng.uniform(0, p.box_radius));
    box.hi.push_back(x_star[size_t(j)] + brng.uniform(0, p.box_radius));
  }
  inst.box = box;

  Rng trng = rng.fork(4);
  int64_t want = inst.group.order() - p.depth;
  require(want >= 1, errc::invalid, "depth at least the group order");
  std::vector<GroupElement> targets;
  if (p.plant) targets.push_back(combination(inst.group, inst.labels, x_star));
  while (int64_t(targets.size()) < want) {
    GroupElement cand = inst.group.element_at(trng.uniform(0, inst.group.order() - 1));
    bool seen = false;
    for (const auto& t : targets)
      if (t == cand) seen = true;
    if (!seen) targets.push_back(cand);
  }
  inst.targets = TargetSet::of(inst.group, targets);
  inst.validate();
  return inst;
}

IpInstance gen_strict_ip(const IpGenParams& p, uint64_t seed) {
  Rng rng(seed);
  for (int attempt = 0; attempt < 500; ++attempt) {
    // congruency-to-equality embedding over a bounded TU base: one extra
    // column per modulus factor, each pinned by an equality row pair
    std::vector<int64_t> moduli;
    int64_t rest = p.delta;
    while (rest > 1) {
      int64_t m = rng.uniform(2, rest);
      if (rest % m != 0) continue;
      moduli.push_back(m);
      rest /= m;
    }
    int q = int(moduli.size());
    int total = p.n + q;
    std::vector<std::vector<Int>> rows;
    std::vector<Int> b;
    for (int j = 0; j < p.n; ++j) {
      std::vector<Int> up(size_t(total), Int(0)), down(size_t(total), Int(0));
      up[size_t(j)] = 1;
      down[size_t(j)] = -1;
      rows.push_back(up);
      b.push_back(rng.uniform(1, 3));
      rows.push_back(down);
      b.push_back(rng.uniform(0, 2));
    }
    for (int i = 0; i < q; ++i) {
      std::vector<Int> eq(size_t(total), Int(0));
      for (int j = 0; j < p.n; ++j) eq[size_t(j)] = rng.uniform(-1, 1);
      eq[size_t(p.n + i)] = moduli[size_t(i)];
      std::vector<Int> eqneg;
      for (const Int& v : eq) eqneg.push_back(-v);
      Int r = rng.uniform(0, moduli[size_t(i)] - 1);
      rows.push_back(eq);
      b.push_back(r);
      rows.push_back(eqneg);
      b.push_back(-r);
    }
    IpInstance ip;
    ip.a = IntMatrix::from_rows(rows);
    ip.b = b;
    if (rng.coin()) {
      std::vector<Int> c(size_t(total), Int(0));
      for (int j = 0; j < total; ++j) c[size_t(j)] = rng.uniform(-2, 2);
      ip.c = c;
    }
    DeltaVerdict dv = delta_modularity(ip.a);
    if (!dv.strict || dv.delta != p.delta) continue;
    return ip;
  }
  fail(errc::internal, "strictly delta-modular sampling failed");
}

GclfInstance gen_gclf(uint64_t seed, int ground, int64_t group_order_max) {
  Rng rng(seed);
  GclfInstance inst;
  inst.dag.n = ground;
  std::set<std::pair<int, int>> used;
  int arcs = int(rng.uniform(0, 2 * ground));
  for (int i = 0; i < arcs; ++i) {
    int u = int(rng.uniform(0, ground - 1));
    int v = int(rng.uniform(0, ground - 1));
    if (u >= v) continue;
    if (used.insert({u, v}).second) inst.dag.arcs.push_back({u, v});
  }
  Rng grng = rng.fork(1);
  inst.group = gen_group(grng, group_order_max, 2);
  for (int i = 0; i < ground; ++i)
    inst.gamma.push_back(inst.group.element_at(grng.uniform(0, inst.group.order() - 1)));
  inst.target = inst.group.element_at(grng.uniform(0, inst.group.order() - 1));
  inst.validate();
  return inst;
}

CirculationInstance gen_gcc(uint64_t seed, int nv, int max_cap, int64_t group_order_max) {
  Rng rng(seed);
  CirculationInstance inst;
  inst.nv = nv;
  Rng grng = rng.fork(1);
  inst.group = gen_group(grng, group_order_max, 2);
  int arcs = int(rng.uniform(2, 2 * nv));
  for (int i = 0; i < arcs; ++i) {
    GArc a;
    a.tail = int(rng.uniform(0, nv - 1));
    a.head = int(rng.uniform(0, nv - 1));
    a.cap = rng.uniform(0, max_cap);
    a.len = rng.uniform(-2, 3);
    a.label = inst.group.element_at(grng.uniform(0, inst.group.order() - 1));
    inst.arcs.push_back(a);
  }
  inst.target = inst.group.element_at(grng.uniform(0, inst.group.order() - 1));
  inst.validate();
  return inst;
}

}  // namespace gctuf
