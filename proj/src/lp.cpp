#include "lp.hpp"

#include <algorithm>

#include "linalg.hpp"

namespace gctuf {

namespace {

// Dense simplex tableau for min c^T z, A z = rhs, z >= 0. The tableau rows
// always hold B^{-1}A and rhs >= 0; reduced costs are recomputed per
// iteration, which is cheap at the sizes this solver faces.
struct Tableau {
  int m, n;
  std::vector<std::vector<Rat>> a;  // m x n
  std::vector<Rat> rhs;             // m
  std::vector<int> basis;           // m

  void pivot(int row, int col) {
    Rat p = a[row][col];
    for (int j = 0; j < n; ++j) a[row][j] /= p;
    rhs[row] /= p;
    for (int i = 0; i < m; ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rat f = a[i][col];
      for (int j = 0; j < n; ++j) a[i][j] -= f * a[row][j];
      rhs[i] -= f * rhs[row];
    }
    basis[row] = col;
  }

  // Bland's rule: entering = lowest-index negative reduced cost; leaving =
  // lexicographically safe via lowest basis index among ratio-test ties.
  // Returns optimal value, or nullopt when unbounded.
  std::optional<Rat> run(const std::vector<Rat>& cost) {
    while (true) {
      std::vector<Rat> y(m);  // c_B
      for (int i = 0; i < m; ++i) y[i] = cost[basis[i]];
      int enter = -1;
      for (int j = 0; j < n && enter < 0; ++j) {
        Rat red = cost[j];
        for (int i = 0; i < m; ++i)
          if (a[i][j] != 0) red -= y[i] * a[i][j];
        if (red < 0) enter = j;
      }
      if (enter < 0) {
        Rat val = 0;
        for (int i = 0; i < m; ++i) val += y[i] * rhs[i];
        return val;
      }
      int leave = -1;
      Rat best;
      for (int i = 0; i < m; ++i) {
        if (a[i][enter] <= 0) continue;
        Rat ratio = rhs[i] / a[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return std::nullopt;
      pivot(leave, enter);
    }
  }
};

struct StandardForm {
  Tableau tab;
  int nvars;      // original free variables
  int total;      // columns excluding artificials
  bool feasible = false;
};

// Build [T, -T, I_slack] z = b' (rows negated to make b' >= 0), run phase 1
// with artificials.
StandardForm phase1(const IntMatrix& t, const std::vector<Int>& b) {
  int k = t.rows(), n = t.cols();
  StandardForm sf;
  sf.nvars = n;
  sf.total = 2 * n + k;
  Tableau& tb = sf.tab;
  tb.m = k;
  tb.n = sf.total + k;  // + artificials
  tb.a.assign(k, std::vector<Rat>(tb.n, Rat(0)));
  tb.rhs.resize(k);
  tb.basis.resize(k);
  for (int i = 0; i < k; ++i) {
    int sgn = b[i] < 0 ? -1 : 1;
    for (int j = 0; j < n; ++j) {
      tb.a[i][j] = Rat(sgn * t.at(i, j));
      tb.a[i][n + j] = Rat(-sgn * t.at(i, j));
    }
    tb.a[i][2 * n + i] = Rat(sgn);
    tb.a[i][sf.total + i] = 1;
    tb.rhs[i] = Rat(sgn * b[i]);
    tb.basis[i] = sf.total + i;
  }
  std::vector<Rat> c1(tb.n, Rat(0));
  for (int i = 0; i < k; ++i) c1[sf.total + i] = 1;
  auto val = tb.run(c1);
  require(val.has_value(), errc::internal, "phase-1 objective is bounded below by zero");
  if (*val != 0) {
    sf.feasible = false;
    return sf;
  }
  // pivot remaining artificials out, or drop redundant rows
  for (int i = 0; i < tb.m; ++i) {
    if (tb.basis[i] < sf.total) continue;
    int col = -1;
    for (int j = 0; j < sf.total; ++j)
      if (tb.a[i][j] != 0) {
        col = j;
        break;
      }
    if (col >= 0) {
      tb.pivot(i, col);
    }
  }
  // remove rows still basic in an artificial (all-zero in real columns)
  {
    Tableau nt;
    nt.n = tb.n;
    for (int i = 0; i < tb.m; ++i) {
      if (tb.basis[i] >= sf.total) continue;
      nt.a.push_back(tb.a[i]);
      nt.rhs.push_back(tb.rhs[i]);
      nt.basis.push_back(tb.basis[i]);
    }
    nt.m = int(nt.a.size());
    tb = std::move(nt);
  }
  // forbid artificials from re-entering
  for (int i = 0; i < tb.m; ++i)
    for (int j = sf.total; j < tb.n; ++j) tb.a[i][j] = 0;
  sf.feasible = true;
  return sf;
}

std::vector<Rat> extract_x(const StandardForm& sf) {
  std::vector<Rat> z(sf.tab.n, Rat(0));
  for (int i = 0; i < sf.tab.m; ++i) z[sf.tab.basis[i]] = sf.tab.rhs[i];
  std::vector<Rat> x(sf.nvars);
  for (int j = 0; j < sf.nvars; ++j) x[j] = z[j] - z[sf.nvars + j];
  return x;
}

}  // namespace

LpResult lp_optimize(const IntMatrix& t, const std::vector<Int>& b, const std::vector<Rat>& c,
                     bool minimize) {
  require(int(b.size()) == t.rows(), errc::invalid, "lp: rhs dimension mismatch");
  require(int(c.size()) == t.cols(), errc::invalid, "lp: objective dimension mismatch");
  LpResult out;
  if (t.cols() == 0) {
    for (const Int& bi : b)
      if (bi < 0) return out;
    out.status = LpStatus::optimal;
    out.value = 0;
    return out;
  }
  if (t.rows() == 0) {
    // no constraints: bounded only when c == 0
    for (const Rat& cj : c)
      if (cj != 0) {
        out.status = LpStatus::unbounded;
        return out;
      }
    out.status = LpStatus::optimal;
    out.x.assign(t.cols(), Rat(0));
    out.value = 0;
    return out;
  }
  StandardForm sf = phase1(t, b);
  if (!sf.feasible) return out;
  std::vector<Rat> c2(sf.tab.n, Rat(0));
  for (int j = 0; j < sf.nvars; ++j) {
    Rat cj = minimize ? c[j] : -c[j];
    c2[j] = cj;
    c2[sf.nvars + j] = -cj;
  }
  auto val = sf.tab.run(c2);
  if (!val) {
    out.status = LpStatus::unbounded;
    return out;
  }
  out.status = LpStatus::optimal;
  out.x = extract_x(sf);
  out.value = minimize ? *val : -*val;
  return out;
}

std::optional<std::vector<Rat>> lp_feasible_point(const IntMatrix& t, const std::vector<Int>& b) {
  LpResult r = lp_optimize(t, b, std::vector<Rat>(t.cols(), Rat(0)), true);
  if (r.status != LpStatus::optimal) return std::nullopt;
  if (r.x.empty()) r.x.assign(t.cols(), Rat(0));
  return r.x;
}

namespace {

// Walk from a feasible point to a vertex: while the tight rows are rank
// deficient, move along a null direction until a new, independent row becomes
// tight. Directions entirely in the lineality space witness non-pointedness.
VertexResult crash_to_vertex(const IntMatrix& t, const std::vector<Int>& b, std::vector<Rat> x) {
  int k = t.rows(), n = t.cols();
  VertexResult out;
  out.feasible = true;
  while (true) {
    std::vector<int> tight;
    std::vector<Rat> tx = mat_vec_rat(t, x);
    for (int i = 0; i < k; ++i)
      if (tx[i] == Rat(b[i])) tight.push_back(i);
    std::vector<int> all_cols(n);
    for (int j = 0; j < n; ++j) all_cols[j] = j;
    IntMatrix ti = t.submatrix(tight, all_cols);
    auto null_basis = null_space(ti);
    if (null_basis.empty()) {
      out.vertex = true;
      out.x = std::move(x);
      return out;
    }
    bool moved = false;
    for (auto& d : null_basis) {
      // td over all rows
      std::vector<Rat> td(k, Rat(0));
      bool nonzero = false;
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < n; ++j) td[i] += Rat(t.at(i, j)) * d[j];
        if (td[i] != 0) nonzero = true;
      }
      if (!nonzero) continue;  // lineality direction
      // largest step in +d or -d until some row becomes tight
      std::optional<Rat> step_pos, step_neg;
      for (int i = 0; i < k; ++i) {
        if (td[i] > 0) {
          Rat s = (Rat(b[i]) - tx[i]) / td[i];
          if (!step_pos || s < *step_pos) step_pos = s;
        } else if (td[i] < 0) {
          Rat s = (Rat(b[i]) - tx[i]) / td[i];  // negative denominator: bound for -d
          if (!step_neg || s > *step_neg) step_neg = s;
        }
      }
      Rat step;
      if (step_pos)
        step = *step_pos;
      else if (step_neg)
        step = *step_neg;
      else
        continue;  // cannot happen: nonzero td implies a bound in one direction
      for (int j = 0; j < n; ++j) x[j] += step * d[j];
      moved = true;
      break;
    }
    if (!moved) {
      // every null direction is lineality: not pointed
      out.vertex = false;
      out.x = std::move(x);
      return out;
    }
  }
}

}  // namespace

VertexResult lp_feasible_vertex(const IntMatrix& t, const std::vector<Int>& b) {
  VertexResult out;
  auto x = lp_feasible_point(t, b);
  if (!x) return out;
  if (t.cols() == 0) {
    out.feasible = true;
    out.vertex = true;
    return out;
  }
  return crash_to_vertex(t, b, std::move(*x));
}

std::optional<std::vector<Int>> integral_feasible_point(const IntMatrix& t,
                                                        const std::vector<Int>& b) {
  auto x = lp_feasible_point(t, b);
  if (!x) return std::nullopt;
  int n = t.cols();
  if (n == 0) return std::vector<Int>{};
  // clip to a unit box around the rational point: the boxed system is again
  // TU with integral rhs, bounded and pointed, so its vertices are integral
  std::vector<std::vector<Int>> extra;
  std::vector<Int> b2 = b;
  for (int j = 0; j < n; ++j) {
    Int lo = rat_floor((*x)[j]);
    std::vector<Int> up(n, Int(0)), down(n, Int(0));
    up[j] = 1;
    down[j] = -1;
    extra.push_back(up);
    b2.push_back(lo + 1);
    extra.push_back(down);
    b2.push_back(-lo);
  }
  IntMatrix t2 = t.with_rows_appended(extra);
  VertexResult v = crash_to_vertex(t2, b2, *x);
  require(v.feasible && v.vertex, errc::internal, "boxed TU system must have a vertex");
  std::vector<Int> out(n);
  for (int j = 0; j < n; ++j) {
    require(rat_is_integer(v.x[j]), errc::internal, "TU vertex must be integral");
    out[j] = numerator(v.x[j]);
  }
  return out;
}

RangeResult range_of(const IntMatrix& t, const std::vector<Int>& b, const std::vector<Int>& w) {
  RangeResult out;
  std::vector<Rat> c(w.size());
  for (size_t i = 0; i < w.size(); ++i) c[i] = Rat(w[i]);
  LpResult lo = lp_optimize(t, b, c, true);
  if (lo.status == LpStatus::infeasible) return out;
  out.feasible = true;
  if (lo.status == LpStatus::optimal) out.lo = -floor_div(-numerator(lo.value), denominator(lo.value));
  LpResult hi = lp_optimize(t, b, c, false);
  require(hi.status != LpStatus::infeasible, errc::internal, "feasibility cannot flip per direction");
  if (hi.status == LpStatus::optimal) out.hi = rat_floor(hi.value);
  return out;
}

}  // namespace gctuf
