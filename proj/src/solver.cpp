#include "solver.hpp"

#include <algorithm>
#include <cmath>

#include "lattice.hpp"
#include "linalg.hpp"
#include "lp.hpp"
#include "oracle.hpp"

namespace gctuf {

double call_count_bound(int64_t n, int64_t d) {
  if (d <= 0) return 0.0;
  if (n <= 3) return 1.0;
  double dd = double(d), nn = double(n);
  return std::pow(dd + 1.0, 3.0 * dd) * std::pow(nn, dd + 3.0 * std::log2(dd + 1.0) + 2.0);
}

// ---------------------------------------------------------------------------
// shapes and pair classification

bool PatternShape::contains(const Int& a, const Int& b) const {
  Int s = a + b;
  return l0 <= s && s <= u0 && l1 <= a && a <= u1 && l2 <= b && b <= u2;
}

std::vector<std::pair<Int, Int>> PatternShape::pairs() const {
  std::vector<std::pair<Int, Int>> out;
  for (Int a = l1; a <= u1; ++a)
    for (Int b = l2; b <= u2; ++b)
      if (contains(a, b)) out.push_back({a, b});
  return out;
}

std::optional<PatternShape> PatternShape::hull_of(const std::vector<std::pair<Int, Int>>& pairs) {
  if (pairs.empty()) return std::nullopt;
  PatternShape s;
  bool first = true;
  for (const auto& [a, b] : pairs) {
    Int t = a + b;
    if (first) {
      s.l0 = s.u0 = t;
      s.l1 = s.u1 = a;
      s.l2 = s.u2 = b;
      first = false;
      continue;
    }
    s.l0 = std::min(s.l0, t);
    s.u0 = std::max(s.u0, t);
    s.l1 = std::min(s.l1, a);
    s.u1 = std::max(s.u1, a);
    s.l2 = std::min(s.l2, b);
    s.u2 = std::max(s.u2, b);
  }
  // exact cover check: the hull must contain no extra integer pair
  PairSet have(pairs.begin(), pairs.end());
  if (s.pairs().size() != have.size()) return std::nullopt;
  for (const auto& p : s.pairs())
    if (!have.count(p)) return std::nullopt;
  return s;
}

namespace {

const std::vector<std::pair<Int, Int>>& directions() {
  static const std::vector<std::pair<Int, Int>> d{{Int(1), Int(0)},  {Int(-1), Int(0)},
                                                  {Int(0), Int(1)},  {Int(0), Int(-1)},
                                                  {Int(1), Int(-1)}, {Int(-1), Int(1)}};
  return d;
}

std::pair<Int, Int> shifted(const std::pair<Int, Int>& p, const std::pair<Int, Int>& v,
                            const Int& t = Int(1)) {
  return {p.first + t * v.first, p.second + t * v.second};
}

}  // namespace

PairClass classify_pair(const PairSet& shape, const std::pair<Int, Int>& p) {
  int all = 0, anti = 0;
  for (size_t i = 0; i < directions().size(); ++i)
    if (shape.count(shifted(p, directions()[i]))) ++all;
  for (size_t i = 0; i < directions().size(); i += 2) {
    if (shape.count(shifted(p, directions()[i])) && shape.count(shifted(p, directions()[i + 1])))
      anti += 2;  // v and -v both admissible
  }
  if (all == int(directions().size())) return PairClass::interior;
  if (anti == 2) return PairClass::border;
  return PairClass::vertex;
}

std::optional<CombineHit> combine_check(const Pattern& pa, const Pattern& pb,
                                        const AbelianGroup& g, const TargetSet& targets) {
  for (const auto& [pair, alist] : pa.at) {
    auto itb = pb.at.find(pair);
    if (itb == pb.at.end()) continue;
    for (const auto& [ra, xa] : alist)
      for (const auto& [rb, xb] : itb->second)
        if (targets.contains(add(g, ra, rb))) return CombineHit{pair, ra, rb, xa, xb};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// coset reduction

std::optional<GctufInstance> coset_reduce(const GctufInstance& inst) {
  const AbelianGroup& g = inst.group;
  if (g.order() <= 1) return std::nullopt;
  if (inst.targets.size() == g.order()) {
    // vacuous constraint: drop the group entirely
    GctufInstance out;
    out.t = inst.t;
    out.b = inst.b;
    out.box = inst.box;
    out.group = AbelianGroup(std::vector<int64_t>{});
    out.labels.assign(inst.labels.size(), out.group.zero());
    out.targets = TargetSet::of(out.group, {out.group.zero()});
    return out;
  }
  auto subs = all_subgroups(g);
  // largest nontrivial proper subgroup first for the biggest depth drop
  std::sort(subs.begin(), subs.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.elements < b.elements;
  });
  for (const Subgroup& h : subs) {
    if (h.trivial() || h.size() == g.order()) continue;
    if (!is_coset_union(g, inst.targets, h)) continue;
    Quotient q = quotient(g, h);
    GctufInstance out;
    out.t = inst.t;
    out.b = inst.b;
    out.box = inst.box;
    out.group = q.group;
    for (const auto& l : inst.labels) out.labels.push_back(q.apply(g, l));
    std::vector<GroupElement> tgts;
    for (const auto& r : inst.targets.elements) tgts.push_back(q.apply(g, r));
    out.targets = TargetSet::of(q.group, tgts);
    return out;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// pivot step

std::optional<PivotTransform> pivot_transform(const GctufInstance& inst, int row, int col) {
  require(row >= 0 && row < inst.t.rows() && col >= 0 && col < inst.t.cols(), errc::invalid,
          "pivot position out of range");
  Int eps = inst.t.at(row, col);
  require(eps == 1 || eps == -1, errc::invalid, "pivot entry must be +-1");

  auto [tf, bf] = inst.full_system();
  std::vector<Int> dir(size_t(tf.cols()), Int(0));
  dir[size_t(col)] = 1;
  RangeResult range = range_of(tf, bf, dir);
  Int low = 0;
  if (range.feasible) {
    if (!range.lo.has_value()) return std::nullopt;  // no redundant bound available
    low = *range.lo;
  }

  int n = tf.cols();
  IntMatrix piv = pivot(tf, row, col);
  std::vector<Int> rhs = bf;
  rhs[size_t(row)] = -low;  // the added bound -x_col <= -low lands on the pivot row
  std::vector<Int> unit(size_t(n), Int(0));
  unit[size_t(col)] = 1;
  PivotTransform out;
  out.inst.t = piv.with_rows_appended({unit});
  rhs.push_back(bf[size_t(row)]);  // old pivot row becomes y_col <= b_row
  out.inst.b = rhs;
  out.inst.group = inst.group;
  out.inst.targets = inst.targets;
  for (int c = 0; c < n; ++c) {
    if (c == col) {
      out.inst.labels.push_back(scalar_mul(inst.group, eps, inst.labels[size_t(col)]));
    } else {
      GroupElement shift = scalar_mul(inst.group, eps * tf.at(row, c), inst.labels[size_t(col)]);
      out.inst.labels.push_back(sub(inst.group, inst.labels[size_t(c)], shift));
    }
  }
  out.row = row;
  out.col = col;
  out.eps = eps;
  out.pivot_row_coeffs = tf.row(row);
  return out;
}

std::vector<Int> PivotTransform::to_original(const std::vector<Int>& y) const {
  std::vector<Int> x = y;
  Int acc = y[size_t(col)];
  for (size_t c = 0; c < y.size(); ++c)
    if (int(c) != col) acc -= pivot_row_coeffs[c] * y[c];
  x[size_t(col)] = eps * acc;
  return x;
}

// ---------------------------------------------------------------------------
// three-sum sub-problems

namespace {

GctufInstance side_problem(const GctufInstance& inst, const std::vector<int>& rows,
                           const std::vector<int>& cols, const std::vector<Int>& coupling,
                           const Int& shift, const std::vector<Int>& link_row, const Int& link_val,
                           const TargetSet& targets) {
  GctufInstance out;
  IntMatrix block = inst.t.submatrix(rows, cols);
  std::vector<Int> neg_link;
  for (const Int& v : link_row) neg_link.push_back(-v);
  out.t = block.with_rows_appended({link_row, neg_link});
  for (size_t i = 0; i < rows.size(); ++i)
    out.b.push_back(inst.b[size_t(rows[i])] - shift * coupling[i]);
  out.b.push_back(link_val);
  out.b.push_back(-link_val);
  out.group = inst.group;
  for (int c : cols) out.labels.push_back(inst.labels[size_t(c)]);
  out.targets = targets;
  if (inst.box) out.box = inst.box->restricted(cols);
  return out;
}

}  // namespace

GctufInstance side_a_problem(const GctufInstance& inst, const ThreeSumSplit& split,
                             const Int& alpha, const Int& beta, const TargetSet& targets) {
  // A x_a <= b_a - alpha e,  h^T x_a = beta
  return side_problem(inst, split.rows_a, split.cols_a, split.e, alpha, split.h, beta, targets);
}

GctufInstance side_b_problem(const GctufInstance& inst, const ThreeSumSplit& split,
                             const Int& alpha, const Int& beta, const TargetSet& targets) {
  // B x_b <= b_b - beta g,  f^T x_b = alpha
  return side_problem(inst, split.rows_b, split.cols_b, split.g, beta, split.f, alpha, targets);
}

// ---------------------------------------------------------------------------
// the recursion

namespace {

struct Ctx {
  const SolveOptions& opts;
  SolveStats stats;
  double budget_cap = 0.0;
  std::string root_dispatch;

  explicit Ctx(const SolveOptions& o) : opts(o) {}

  void count_base(int64_t depth) {
    ++stats.base_block_calls;
    ++stats.base_calls_by_depth[depth];
    require(double(stats.base_block_calls) <= budget_cap, errc::budget,
            "base-block call budget exceeded; the f(n,d) accounting flags this as a bug");
  }

  void note(const std::string& s) { stats.notes.push_back(s); }

  void dispatch(const std::string& s) {
    if (root_dispatch.empty()) root_dispatch = s;
  }
};

std::optional<std::vector<Int>> solve_rec(GctufInstance inst, Ctx& ctx, bool allow_pivot);

std::optional<std::vector<Int>> fallback_solve(const GctufInstance& inst, Ctx& ctx,
                                               const std::string& why) {
  ctx.stats.used_fallback = true;
  ctx.note("fallback: " + why);
  ctx.count_base(inst.depth());
  OracleOutcome o = proximity_window_solve(inst, ctx.opts.enumeration_budget);
  if (!o.feasible) return std::nullopt;
  return o.witness;
}

struct ShapeData {
  std::vector<std::pair<Int, Int>> pairs;  // lexicographic, all inside Pi
  bool paper_mode = false;
  bool relaxation_feasible = true;
  bool hexagonal = true;
};

bool pair_in_pi(const GctufInstance& inst, const ThreeSumSplit& split, const Int& alpha,
                const Int& beta) {
  AbelianGroup triv;  // feasibility of the relaxations only
  TargetSet all = TargetSet::of(inst.group, inst.targets.elements);
  GctufInstance a = side_a_problem(inst, split, alpha, beta, all);
  auto [ta, ba] = a.full_system();
  if (!lp_feasible_point(ta, ba)) return false;
  GctufInstance b = side_b_problem(inst, split, alpha, beta, all);
  auto [tb, bb] = b.full_system();
  return lp_feasible_point(tb, bb).has_value();
}

ShapeData compute_shape(const GctufInstance& inst, const ThreeSumSplit& split,
                        const SolveOptions& opts) {
  ShapeData out;
  out.paper_mode = opts.paper_shape;
  auto [tf, bf] = inst.full_system();
  int n = inst.t.cols();
  std::vector<Int> fhat(size_t(n), Int(0)), hhat(size_t(n), Int(0)), sum(size_t(n), Int(0));
  for (size_t i = 0; i < split.cols_b.size(); ++i) fhat[size_t(split.cols_b[i])] = split.f[i];
  for (size_t i = 0; i < split.cols_a.size(); ++i) hhat[size_t(split.cols_a[i])] = split.h[i];
  for (int j = 0; j < n; ++j) sum[size_t(j)] = fhat[size_t(j)] + hhat[size_t(j)];

  RangeResult ra = range_of(tf, bf, fhat);
  if (!ra.feasible) {
    out.relaxation_feasible = false;
    return out;
  }
  RangeResult rb = range_of(tf, bf, hhat);
  RangeResult rs = range_of(tf, bf, sum);
  require(ra.lo && ra.hi && rb.lo && rb.hi && rs.lo && rs.hi, errc::invalid,
          "pattern ranges are unbounded; supply a variable box");

  PatternShape bounds{*rs.lo, *rs.hi, *ra.lo, *ra.hi, *rb.lo, *rb.hi};
  if (opts.paper_shape) {
    Int d = inst.depth();
    auto x0 = lp_feasible_point(tf, bf);
    require(x0.has_value(), errc::internal, "relaxation feasibility already established");
    Rat a0 = 0, b0 = 0;
    for (int j = 0; j < n; ++j) {
      a0 += Rat(fhat[size_t(j)]) * (*x0)[size_t(j)];
      b0 += Rat(hhat[size_t(j)]) * (*x0)[size_t(j)];
    }
    Int ac = rat_floor(a0), bc = rat_floor(b0);
    Int half_up = (d + 1) / 2, half_down = d / 2;
    bounds.l1 = std::max(bounds.l1, Int(ac - half_up));
    bounds.u1 = std::min(bounds.u1, Int(ac + half_down));
    bounds.l2 = std::max(bounds.l2, Int(bc - half_up));
    bounds.u2 = std::min(bounds.u2, Int(bc + half_down));
    bounds.l0 = std::max(bounds.l0, Int(ac + bc - half_up));
    bounds.u0 = std::min(bounds.u0, Int(ac + bc + half_down));
  }

  for (Int a = bounds.l1; a <= bounds.u1; ++a)
    for (Int b = bounds.l2; b <= bounds.u2; ++b) {
      if (!bounds.contains(a, b)) continue;
      if (pair_in_pi(inst, split, a, b)) out.pairs.push_back({a, b});
    }
  out.hexagonal = PatternShape::hull_of(out.pairs).has_value() || out.pairs.empty();
  return out;
}

// pi-bar computation for one side: repeatedly solve the side problem with the
// complement of the collected elements as target set
std::vector<std::pair<GroupElement, std::vector<Int>>> compute_pi_bar_side(
    const GctufInstance& inst, const ThreeSumSplit& split, const Int& alpha, const Int& beta,
    bool side_a, int64_t want, Ctx& ctx) {
  std::vector<std::pair<GroupElement, std::vector<Int>>> collected;
  const AbelianGroup& g = inst.group;
  while (int64_t(collected.size()) < want) {
    std::vector<GroupElement> complement;
    for (const auto& e : g.all_elements()) {
      bool seen = false;
      for (const auto& [r, w] : collected)
        if (r == e) seen = true;
      if (!seen) complement.push_back(e);
    }
    TargetSet probe = TargetSet::of(g, complement);
    GctufInstance sub = side_a ? side_a_problem(inst, split, alpha, beta, probe)
                               : side_b_problem(inst, split, alpha, beta, probe);
    ++ctx.stats.pattern_probes;
    auto res = solve_rec(sub, ctx, true);
    if (!res) break;  // the collected set is the full pattern
    GroupElement got = combination(g, sub.labels, *res);
    require(probe.contains(got), errc::internal, "probe witness misses its target set");
    collected.push_back({got, *res});
  }
  return collected;
}

std::vector<Int> stitch(const GctufInstance& inst, const ThreeSumSplit& split,
                        const std::vector<Int>& xa, const std::vector<Int>& xb) {
  std::vector<Int> x(size_t(inst.t.cols()), Int(0));
  for (size_t i = 0; i < split.cols_a.size(); ++i) x[size_t(split.cols_a[i])] = xa[i];
  for (size_t i = 0; i < split.cols_b.size(); ++i) x[size_t(split.cols_b[i])] = xb[i];
  return x;
}

// pairs of `live` on the maximal line through p in direction v
PairSet line_through(const PairSet& live, const std::pair<Int, Int>& p,
                     const std::pair<Int, Int>& v) {
  PairSet out;
  for (Int t = 0;; ++t) {
    auto q = shifted(p, v, t);
    if (!live.count(q)) break;
    out.insert(q);
  }
  for (Int t = 1;; ++t) {
    auto q = shifted(p, {Int(-v.first), Int(-v.second)}, t);
    if (!live.count(q)) break;
    out.insert(q);
  }
  return out;
}

// the antiparallel direction pair admissible at a border pair
std::optional<std::pair<Int, Int>> border_direction(const PairSet& live,
                                                    const std::pair<Int, Int>& p) {
  for (size_t i = 0; i < directions().size(); i += 2)
    if (live.count(shifted(p, directions()[i])) && live.count(shifted(p, directions()[i + 1])))
      return directions()[i];
  return std::nullopt;
}

struct LinearFit {
  GroupElement r0, r1, r2;
};

// exhaustive fit of value(a, b) = r0 + a r1 + b r2 over the selected values
std::optional<LinearFit> fit_linear(const AbelianGroup& g,
                                    const std::map<std::pair<Int, Int>, GroupElement>& values) {
  int64_t o = g.order();
  for (int64_t i0 = 0; i0 < o; ++i0)
    for (int64_t i1 = 0; i1 < o; ++i1)
      for (int64_t i2 = 0; i2 < o; ++i2) {
        GroupElement r0 = g.element_at(i0), r1 = g.element_at(i1), r2 = g.element_at(i2);
        bool ok = true;
        for (const auto& [pair, val] : values) {
          GroupElement v = add(g, r0, add(g, scalar_mul(g, pair.first, r1),
                                          scalar_mul(g, pair.second, r2)));
          if (!(v == val)) {
            ok = false;
            break;
          }
        }
        if (ok) return LinearFit{r0, r1, r2};
      }
  return std::nullopt;
}

std::optional<std::vector<Int>> solve_three_sum(const GctufInstance& inst,
                                                const ThreeSumSplit& split, Ctx& ctx);

std::optional<std::vector<Int>> solve_rec(GctufInstance inst, Ctx& ctx, bool pivoted) {
  ++ctx.stats.recursive_solves;
  int64_t d = inst.depth();
  int n = inst.t.cols();

  if (n == 0) {
    ctx.dispatch("empty");
    for (const Int& bi : inst.b)
      if (bi < 0) return std::nullopt;
    if (!inst.targets.contains(inst.group.zero())) return std::nullopt;
    return std::vector<Int>{};
  }

  if (d == 0) {
    // unconstrained TU problem: an integral relaxation point settles it
    ctx.dispatch("lp");
    auto [tf, bf] = inst.full_system();
    auto x = integral_feasible_point(tf, bf);
    if (!x) return std::nullopt;
    require(inst.satisfied_by(*x), errc::internal, "relaxation point must satisfy R = G");
    return x;
  }
  require(d <= ctx.opts.max_depth, errc::unsupported,
          "depth |G|-|R| exceeds the supported bound of 3");

  while (auto reduced = coset_reduce(inst)) {
    ++ctx.stats.coset_reductions;
    ctx.dispatch("coset-reduce");
    inst = std::move(*reduced);
    d = inst.depth();
    if (d == 0) return solve_rec(std::move(inst), ctx, pivoted);
  }

  // base blocks: one oracle call each
  auto try_network = [&](const IntMatrix& m) -> std::optional<NetworkRealization> {
    if (m.rows() > ctx.opts.caps.network_rows) return std::nullopt;
    try {
      return recognize_network(m, ctx.opts.caps);
    } catch (const error& e) {
      if (e.kind() == errc::budget) return std::nullopt;
      throw;
    }
  };
  DecompPtr hint = inst.decomposition_hint;
  if (hint && !(recompose(*hint) == inst.t)) hint = nullptr;

  if (hint && hint->kind == DecompNode::Kind::network) {
    ctx.dispatch("network");
    ctx.count_base(d);
    SolveOutcome o = solve_network_gctuf(inst, hint->realization, ctx.opts.xlc_budget);
    return o.feasible ? std::optional(o.witness) : std::nullopt;
  }
  if (hint && hint->kind == DecompNode::Kind::transposed_network) {
    ctx.dispatch("transposed-network");
    ctx.count_base(d);
    SolveOutcome o =
        solve_transposed_network_gctuf(inst, hint->realization, ctx.opts.gclf_budget);
    return o.feasible ? std::optional(o.witness) : std::nullopt;
  }
  if (!hint || hint->kind == DecompNode::Kind::core) {
    if (auto real = try_network(inst.t)) {
      ctx.dispatch("network");
      ctx.count_base(d);
      SolveOutcome o = solve_network_gctuf(inst, *real, ctx.opts.xlc_budget);
      return o.feasible ? std::optional(o.witness) : std::nullopt;
    }
    if (auto real = try_network(inst.t.transpose())) {
      ctx.dispatch("transposed-network");
      ctx.count_base(d);
      SolveOutcome o = solve_transposed_network_gctuf(inst, *real, ctx.opts.gclf_budget);
      return o.feasible ? std::optional(o.witness) : std::nullopt;
    }
    if (recognize_core(inst.t)) {
      // core-derived base block: proximity window enumeration backend
      ctx.dispatch("core");
      ctx.count_base(d);
      OracleOutcome o = proximity_window_solve(inst, ctx.opts.enumeration_budget);
      return o.feasible ? std::optional(o.witness) : std::nullopt;
    }
  }

  // three-sum, possibly after one pivot
  std::optional<ThreeSumSplit> split;
  if (hint && hint->kind == DecompNode::Kind::three_sum) {
    // hinted splits must satisfy the same side-TU contract the search enforces
    const ThreeSumSplit& s = hint->split;
    IntMatrix a = inst.t.submatrix(s.rows_a, s.cols_a);
    IntMatrix b = inst.t.submatrix(s.rows_b, s.cols_b);
    TuVerdict ta = check_totally_unimodular(a.with_rows_appended({s.h}), ctx.opts.caps.tu_cap);
    TuVerdict tb = check_totally_unimodular(b.with_rows_appended({s.f}), ctx.opts.caps.tu_cap);
    if (ta.exhaustive && ta.tu && tb.exhaustive && tb.tu) split = s;
  }
  if (!split) {
    try {
      split = find_three_sum(inst.t, ctx.opts.caps);
    } catch (const error& e) {
      if (e.kind() != errc::budget) throw;
    }
  }
  if (split) {
    ctx.dispatch("three-sum");
    return solve_three_sum(inst, *split, ctx);
  }

  if (!pivoted) {
    std::optional<std::pair<int, int>> pos;
    if (hint && hint->kind == DecompNode::Kind::pivot) {
      pos = {hint->pivot_row, hint->pivot_col};
    } else {
      for (int i = 0; i < inst.t.rows() && !pos; ++i)
        for (int j = 0; j < inst.t.cols() && !pos; ++j) {
          if (inst.t.at(i, j) != 1 && inst.t.at(i, j) != -1) continue;
          try {
            if (find_three_sum(pivot(inst.t, i, j), ctx.opts.caps)) pos = {i, j};
          } catch (const error& e) {
            if (e.kind() != errc::budget) throw;
          }
        }
    }
    if (pos) {
      auto pt = pivot_transform(inst, pos->first, pos->second);
      if (pt) {
        ctx.dispatch("pivot");
        ++ctx.stats.pivot_steps;
        auto y = solve_rec(pt->inst, ctx, true);
        if (!y) return std::nullopt;
        std::vector<Int> x = pt->to_original(*y);
        require(inst.satisfied_by(x), errc::internal, "pivot lift produced an invalid witness");
        return x;
      }
    }
  }

  return fallback_solve(inst, ctx, "matrix undecomposable at desk scale");
}

std::optional<std::vector<Int>> solve_three_sum(const GctufInstance& inst,
                                                const ThreeSumSplit& split, Ctx& ctx) {
  int64_t d = inst.depth();
  ShapeData shape = compute_shape(inst, split, ctx.opts);
  if (!shape.relaxation_feasible) return std::nullopt;
  if (!shape.hexagonal) return fallback_solve(inst, ctx, "pattern index set is not hexagonal");
  if (shape.pairs.empty()) return std::nullopt;

  Pattern pb, pa;
  for (const auto& [alpha, beta] : shape.pairs) {
    pb.at[{alpha, beta}] =
        compute_pi_bar_side(inst, split, alpha, beta, false, d + 1, ctx);
    require(!pb.at[{alpha, beta}].empty(), errc::internal,
            "a shape pair must have a feasible B-problem");
  }
  for (const auto& [alpha, beta] : shape.pairs) {
    pa.at[{alpha, beta}] = compute_pi_bar_side(inst, split, alpha, beta, true, d, ctx);
    require(!pa.at[{alpha, beta}].empty(), errc::internal,
            "a shape pair must have a feasible A-problem");
  }

  if (auto hit = combine_check(pa, pb, inst.group, inst.targets)) {
    std::vector<Int> x = stitch(inst, split, hit->xa, hit->xb);
    require(inst.satisfied_by(x), errc::internal, "combined witness failed verification");
    return x;
  }

  // no combination hits the target set: dispatch on the pattern structure,
  // shrinking the shape while border pairs allow it
  PairSet live(shape.pairs.begin(), shape.pairs.end());
  while (true) {
    bool all_singleton = true;
    for (const auto& p : live)
      if (pb.size_at(p) != 1) all_singleton = false;

    if (!all_singleton) {
      bool has_interior = false, has_border = false;
      for (const auto& p : live) {
        PairClass c = classify_pair(live, p);
        if (c == PairClass::interior) has_interior = true;
        if (c == PairClass::border) has_border = true;
      }
      if (has_interior) {
        // a hidden solution would force a combinable pair next to it; none
        // combined, so the instance is infeasible
        return std::nullopt;
      }
      if (has_border) {
        ++ctx.stats.shape_shrinks;
        std::optional<std::pair<Int, Int>> rich_border;
        for (const auto& p : live)
          if (classify_pair(live, p) == PairClass::border && pb.size_at(p) >= 2) {
            rich_border = p;
            break;
          }
        if (rich_border) {
          auto v = border_direction(live, *rich_border);
          require(v.has_value(), errc::internal, "border pair without its direction");
          PairSet line = line_through(live, *rich_border, *v);
          PairSet next;
          for (const auto& p : live)
            if (!line.count(p)) next.insert(p);
          if (next.empty()) return std::nullopt;
          live = std::move(next);
          continue;
        }
        // all border pairs are singletons; hidden solutions can only sit on
        // the line of a border pair
        int singleton_vertices = 0;
        for (const auto& p : live)
          if (classify_pair(live, p) == PairClass::vertex && pb.size_at(p) == 1)
            ++singleton_vertices;
        if (singleton_vertices >= 3)
          return fallback_solve(inst, ctx, "pattern case contradiction (three singleton vertices)");
        std::optional<std::pair<Int, Int>> any_border;
        for (const auto& p : live)
          if (classify_pair(live, p) == PairClass::border) {
            any_border = p;
            break;
          }
        auto v = border_direction(live, *any_border);
        PairSet line = line_through(live, *any_border, *v);
        bool consistent = line.size() < live.size();
        for (const auto& p : live)
          if (pb.size_at(p) == 1 && !line.count(p)) consistent = false;
        if (!consistent)
          return fallback_solve(inst, ctx, "border shrink made no progress");
        live = std::move(line);
        continue;
      }
      // only vertex pairs remain with some pattern of size >= 2: fall through
      // to the linear selection
    }

    // linear-pattern reduction (all-singleton shapes, or vertex-only shapes
    // with a singleton selection)
    std::vector<std::pair<Int, Int>> live_list(live.begin(), live.end());
    auto hull = PatternShape::hull_of(live_list);
    if (!hull) return fallback_solve(inst, ctx, "shrunk shape is not hexagonal");

    // candidate singleton selections per pair
    std::vector<int64_t> counts;
    int64_t combos = 1;
    for (const auto& p : live_list) {
      counts.push_back(pb.size_at(p));
      combos *= counts.back();
      if (combos > 4096) return fallback_solve(inst, ctx, "too many singleton selections");
    }
    std::optional<LinearFit> fit;
    std::map<std::pair<Int, Int>, GroupElement> chosen;
    for (int64_t combo = 0; combo < combos && !fit; ++combo) {
      std::map<std::pair<Int, Int>, GroupElement> values;
      int64_t rest = combo;
      for (size_t i = 0; i < live_list.size(); ++i) {
        int64_t pick = rest % counts[i];
        rest /= counts[i];
        values[live_list[i]] = pb.at[live_list[i]][size_t(pick)].first;
      }
      fit = fit_linear(inst.group, values);
      if (fit) chosen = values;
    }
    if (!fit) return fallback_solve(inst, ctx, "no linear singleton selection exists");

    // replace the B side by the single linking variable alpha
    ++ctx.stats.variable_reductions;
    int na = split.na();
    GctufInstance red;
    IntMatrix a_block = inst.t.submatrix(split.rows_a, split.cols_a);
    red.t = IntMatrix(int(split.rows_a.size()) + 6, na + 1);
    for (size_t i = 0; i < split.rows_a.size(); ++i) {
      for (int j = 0; j < na; ++j) red.t.at(int(i), j) = a_block.at(int(i), j);
      red.t.at(int(i), na) = split.e[i];
      red.b.push_back(inst.b[size_t(split.rows_a[i])]);
    }
    int base_row = int(split.rows_a.size());
    auto shape_row = [&](int r, const Int& coef_h, const Int& coef_alpha, const Int& rhs) {
      for (int j = 0; j < na; ++j) red.t.at(r, j) = coef_h * split.h[size_t(j)];
      red.t.at(r, na) = coef_alpha;
      red.b.push_back(rhs);
    };
    shape_row(base_row + 0, Int(1), Int(1), hull->u0);    // alpha + beta <= u0
    shape_row(base_row + 1, Int(-1), Int(-1), -hull->l0);  // -(alpha + beta) <= -l0
    shape_row(base_row + 2, Int(0), Int(1), hull->u1);    // alpha <= u1
    shape_row(base_row + 3, Int(0), Int(-1), -hull->l1);
    shape_row(base_row + 4, Int(1), Int(0), hull->u2);    // beta <= u2
    shape_row(base_row + 5, Int(-1), Int(0), -hull->l2);
    red.group = inst.group;
    for (int j = 0; j < na; ++j) {
      GroupElement lbl = inst.labels[size_t(split.cols_a[size_t(j)])];
      red.labels.push_back(
          add(inst.group, lbl, scalar_mul(inst.group, split.h[size_t(j)], fit->r2)));
    }
    red.labels.push_back(fit->r1);
    std::vector<GroupElement> tgts;
    for (const auto& r : inst.targets.elements) tgts.push_back(sub(inst.group, r, fit->r0));
    red.targets = TargetSet::of(inst.group, tgts);
    if (inst.box) {
      Box bx = inst.box->restricted(split.cols_a);
      bx.lo.push_back(hull->l1);
      bx.hi.push_back(hull->u1);
      red.box = bx;
    }
    TuVerdict tu = check_totally_unimodular(red.t, ctx.opts.caps.tu_cap);
    if (!tu.exhaustive || !tu.tu)
      return fallback_solve(inst, ctx, "reduced linear-pattern matrix is not TU");

    auto y = solve_rec(red, ctx, false);
    if (!y) return std::nullopt;
    std::vector<Int> xa(y->begin(), y->begin() + na);
    Int alpha = (*y)[size_t(na)];
    Int beta = 0;
    for (int j = 0; j < na; ++j) beta += split.h[size_t(j)] * xa[size_t(j)];
    GroupElement want = add(inst.group, fit->r0,
                            add(inst.group, scalar_mul(inst.group, alpha, fit->r1),
                                scalar_mul(inst.group, beta, fit->r2)));
    auto itp = pb.at.find({alpha, beta});
    require(itp != pb.at.end(), errc::internal, "reduced solution left the shape");
    for (const auto& [elem, xb] : itp->second) {
      if (!(elem == want)) continue;
      std::vector<Int> x = stitch(inst, split, xa, xb);
      require(inst.satisfied_by(x), errc::internal, "lifted witness failed verification");
      return x;
    }
    return fallback_solve(inst, ctx, "no stored witness for the reduced solution");
  }
}

}  // namespace

ShapeAnalysis analyze_patterns(const GctufInstance& inst, const ThreeSumSplit& split,
                               const SolveOptions& opts) {
  Ctx ctx(opts);
  ctx.budget_cap = 1e18;
  ShapeData shape = compute_shape(inst, split, opts);
  ShapeAnalysis out;
  out.paper_mode = shape.paper_mode;
  out.shape = shape.pairs;
  int64_t d = inst.depth();
  for (const auto& [alpha, beta] : shape.pairs) {
    out.pi_bar_b.at[{alpha, beta}] =
        compute_pi_bar_side(inst, split, alpha, beta, false, d + 1, ctx);
    out.pi_bar_a.at[{alpha, beta}] =
        compute_pi_bar_side(inst, split, alpha, beta, true, d, ctx);
  }
  return out;
}

SolverResult solve(const GctufInstance& inst, const SolveOptions& opts) {
  inst.validate();
  SolverResult result;
  result.stats.call_bound = call_count_bound(inst.t.cols(), inst.depth());

  if (opts.force_oracle) {
    result.dispatch = "oracle";
    OracleOutcome o = brute_gctuf(inst, opts.enumeration_budget);
    result.feasible = o.feasible;
    result.witness = o.witness;
    return result;
  }

  TuVerdict tu = check_totally_unimodular(inst.t, opts.caps.tu_cap);
  require(tu.exhaustive, errc::budget, "matrix too large for the exhaustive TU precondition");
  require(tu.tu, errc::invalid, "constraint matrix is not totally unimodular");

  Ctx ctx(opts);
  ctx.budget_cap = std::max(opts.budget_factor * result.stats.call_bound, 64.0);
  auto x = solve_rec(inst, ctx, false);
  result.stats = ctx.stats;
  result.stats.call_bound = call_count_bound(inst.t.cols(), inst.depth());
  result.dispatch = ctx.root_dispatch.empty() ? "none" : ctx.root_dispatch;
  if (x) {
    require(inst.satisfied_by(*x), errc::internal, "solver witness failed final verification");
    result.feasible = true;
    result.witness = *x;
  }
  return result;
}

}  // namespace gctuf
