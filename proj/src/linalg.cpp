#include "linalg.hpp"

#include <algorithm>
#include <numeric>

namespace gctuf {

Int determinant(const IntMatrix& m) {
  require(m.rows() == m.cols(), errc::invalid, "determinant of non-square matrix");
  int n = m.rows();
  if (n == 0) return 1;
  IntMatrix w = m;
  Int sign = 1;
  Int prev = 1;
  for (int t = 0; t < n - 1; ++t) {
    if (w.at(t, t) == 0) {
      int p = -1;
      for (int i = t + 1; i < n; ++i)
        if (w.at(i, t) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      w.swap_rows(t, p);
      sign = -sign;
    }
    for (int i = t + 1; i < n; ++i) {
      for (int j = t + 1; j < n; ++j) {
        Int num = w.at(i, j) * w.at(t, t) - w.at(i, t) * w.at(t, j);
        w.at(i, j) = num / prev;  // Bareiss: division is exact
      }
      w.at(i, t) = 0;
    }
    prev = w.at(t, t);
  }
  return sign * w.at(n - 1, n - 1);
}

namespace {

// Transform bookkeeping for the Smith normal form. Row operations L applied
// to the work matrix (w := L w) update s := s L^{-1}; column operations R
// (w := w R) update u := R^{-1} u, keeping m == s * w * u throughout.
struct SnfWork {
  IntMatrix w, s, u;

  void swap_rows(int i, int j) {
    w.swap_rows(i, j);
    s.swap_cols(i, j);
  }
  void swap_cols(int i, int j) {
    w.swap_cols(i, j);
    u.swap_rows(i, j);
  }
  void negate_row(int i) {
    w.negate_row(i);
    s.negate_col(i);
  }
  void row_sub(int i, int j, const Int& f) {  // row_i -= f * row_j
    w.add_row_multiple(i, j, -f);
    s.add_col_multiple(j, i, f);
  }
  void col_sub(int i, int j, const Int& f) {  // col_i -= f * col_j
    w.add_col_multiple(i, j, -f);
    u.add_row_multiple(j, i, f);
  }
};

}  // namespace

SnfResult smith_normal_form(const IntMatrix& m) {
  int k = m.rows(), n = m.cols();
  SnfWork wk{m, IntMatrix::identity(k), IntMatrix::identity(n)};
  int t = 0;
  int limit = std::min(k, n);
  while (t < limit) {
    // smallest nonzero absolute value; ties by lowest (row, col)
    int pr = -1, pc = -1;
    Int best = 0;
    for (int i = t; i < k; ++i)
      for (int j = t; j < n; ++j) {
        const Int& v = wk.w.at(i, j);
        if (v == 0) continue;
        Int a = int_abs(v);
        if (pr < 0 || a < best) {
          best = a;
          pr = i;
          pc = j;
        }
      }
    if (pr < 0) break;  // remaining block is zero
    wk.swap_rows(t, pr);
    wk.swap_cols(t, pc);
    if (wk.w.at(t, t) < 0) wk.negate_row(t);

    bool clean = true;
    for (int i = t + 1; i < k; ++i) {
      if (wk.w.at(i, t) == 0) continue;
      Int q = floor_div(wk.w.at(i, t), wk.w.at(t, t));
      wk.row_sub(i, t, q);
      if (wk.w.at(i, t) != 0) clean = false;
    }
    for (int j = t + 1; j < n; ++j) {
      if (wk.w.at(t, j) == 0) continue;
      Int q = floor_div(wk.w.at(t, j), wk.w.at(t, t));
      wk.col_sub(j, t, q);
      if (wk.w.at(t, j) != 0) clean = false;
    }
    if (!clean) continue;  // smaller pivot now exists in the block
    ++t;
  }

  // enforce the divisibility chain d_1 | d_2 | ...
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i + 1 < limit; ++i) {
      const Int& a = wk.w.at(i, i);
      const Int& b = wk.w.at(i + 1, i + 1);
      if (a == 0 && b != 0) {
        wk.swap_rows(i, i + 1);
        wk.swap_cols(i, i + 1);
        changed = true;
        continue;
      }
      if (a != 0 && b % a != 0) {
        // fold d_{i+1} into column i and re-diagonalize the 2x2 block
        wk.col_sub(i, i + 1, Int(-1));
        Int x = wk.w.at(i, i), y = wk.w.at(i + 1, i);
        while (y != 0) {
          Int q = floor_div(y, x);
          wk.row_sub(i + 1, i, q);
          y = wk.w.at(i + 1, i);
          if (y != 0) {
            wk.swap_rows(i, i + 1);
            x = wk.w.at(i, i);
            y = wk.w.at(i + 1, i);
          }
        }
        // clear the fill-in above the new d_{i+1}
        Int r = wk.w.at(i, i + 1);
        if (r != 0) {
          Int q = r / wk.w.at(i, i);
          require(q * wk.w.at(i, i) == r, errc::internal, "snf: non-exact chain cleanup");
          wk.col_sub(i + 1, i, q);
        }
        if (wk.w.at(i, i) < 0) wk.negate_row(i);
        if (wk.w.at(i + 1, i + 1) < 0) wk.negate_row(i + 1);
        changed = true;
      }
    }
  }
  for (int i = 0; i < limit; ++i)
    if (wk.w.at(i, i) < 0) wk.negate_row(i);

  return SnfResult{wk.s, wk.w, wk.u};
}

namespace {

bool ghouila_houri_rows(const IntMatrix& m) {
  // Every row subset must admit a +-1 signing whose signed sum lands in
  // {0,+-1}^n (Ghouila-Houri). Subsets are enumerated by DFS; the signing
  // search prunes on coordinates that can no longer return to range.
  struct Dfs {
    const IntMatrix& m;
    int k, n;
    std::vector<int> rows;  // subset under construction

    explicit Dfs(const IntMatrix& mm) : m(mm), k(mm.rows()), n(mm.cols()) {}

    bool signing_ok(size_t idx, std::vector<int>& acc) {
      if (idx == rows.size()) {
        for (int j = 0; j < n; ++j)
          if (acc[j] < -1 || acc[j] > 1) return false;
        return true;
      }
      int remaining = int(rows.size() - idx) - 1;
      for (int sgn = 0; sgn < 2; ++sgn) {
        bool viable = true;
        for (int j = 0; j < n; ++j) {
          int e = int(m.at(rows[idx], j));
          acc[j] += sgn ? -e : e;
          if (acc[j] < -1 - remaining || acc[j] > 1 + remaining) viable = false;
        }
        if (viable && signing_ok(idx + 1, acc)) return true;
        for (int j = 0; j < n; ++j) {
          int e = int(m.at(rows[idx], j));
          acc[j] -= sgn ? -e : e;
        }
      }
      return false;
    }

    bool subsets_ok(int from) {
      if (!rows.empty()) {
        std::vector<int> acc(n, 0);
        if (!signing_ok(0, acc)) return false;
      }
      for (int i = from; i < k; ++i) {
        rows.push_back(i);
        if (!subsets_ok(i + 1)) return false;
        rows.pop_back();
      }
      return true;
    }
  } dfs(m);
  return dfs.subsets_ok(0);
}

bool entries_in_pm_one(const IntMatrix& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const Int& v = m.at(i, j);
      if (v < -1 || v > 1) return false;
    }
  return true;
}

}  // namespace

TuVerdict check_totally_unimodular(const IntMatrix& m, int cap, uint64_t sample_seed,
                                   int samples) {
  TuVerdict out;
  if (m.rows() == 0 || m.cols() == 0) {
    out.tu = true;
    return out;
  }
  if (!entries_in_pm_one(m)) {
    out.tu = false;
    return out;
  }
  int small = std::min(m.rows(), m.cols());
  if (small <= cap) {
    out.tu = m.rows() <= m.cols() ? ghouila_houri_rows(m) : ghouila_houri_rows(m.transpose());
    out.exhaustive = true;
    return out;
  }
  // probabilistic: random square submatrices only
  out.exhaustive = false;
  out.tu = true;
  Rng rng(sample_seed);
  for (int it = 0; it < samples; ++it) {
    int s = int(rng.uniform(1, std::min({m.rows(), m.cols(), cap})));
    std::vector<int> ri(m.rows()), ci(m.cols());
    std::iota(ri.begin(), ri.end(), 0);
    std::iota(ci.begin(), ci.end(), 0);
    for (int i = 0; i < s; ++i) std::swap(ri[i], ri[rng.uniform(i, m.rows() - 1)]);
    for (int j = 0; j < s; ++j) std::swap(ci[j], ci[rng.uniform(j, m.cols() - 1)]);
    ri.resize(s);
    ci.resize(s);
    Int d = determinant(m.submatrix(ri, ci));
    if (d < -1 || d > 1) {
      out.tu = false;
      return out;
    }
  }
  return out;
}

bool is_totally_unimodular(const IntMatrix& m, int cap) {
  TuVerdict v = check_totally_unimodular(m, cap);
  require(v.exhaustive, errc::budget, "matrix too large for exhaustive TU check");
  return v.tu;
}

DeltaVerdict delta_modularity(const IntMatrix& a, int cap) {
  int k = a.rows(), n = a.cols();
  require(n >= 1, errc::invalid, "delta-modularity of empty matrix");
  require(rank_of(a) == n, errc::invalid, "delta-modularity requires full column rank");
  require(n <= cap, errc::budget, "matrix too large for minor enumeration");
  {
    Int count = 1;
    for (int i = 0; i < n; ++i) count = count * (k - i) / (i + 1);
    require(count <= 2'000'000, errc::budget, "too many maximal minors to enumerate");
  }

  DeltaVerdict out;
  out.delta = 0;
  out.strict = true;
  std::vector<int> cols(n);
  std::iota(cols.begin(), cols.end(), 0);
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<Int> nonzero_minors;
  // enumerate all n-subsets of rows in lexicographic order
  while (true) {
    Int d = int_abs(determinant(a.submatrix(idx, cols)));
    if (d != 0) {
      nonzero_minors.push_back(d);
      if (d > out.delta) out.delta = d;
    }
    int i = n - 1;
    while (i >= 0 && idx[i] == k - n + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  for (const Int& d : nonzero_minors)
    if (d != out.delta) {
      out.strict = false;
      break;
    }
  return out;
}

int rank_of(const IntMatrix& m) {
  int k = m.rows(), n = m.cols();
  std::vector<std::vector<Rat>> w(k, std::vector<Rat>(n));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < n; ++j) w[i][j] = Rat(m.at(i, j));
  int r = 0;
  for (int c = 0; c < n && r < k; ++c) {
    int p = -1;
    for (int i = r; i < k; ++i)
      if (w[i][c] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(w[r], w[p]);
    for (int i = r + 1; i < k; ++i) {
      if (w[i][c] == 0) continue;
      Rat f = w[i][c] / w[r][c];
      for (int j = c; j < n; ++j) w[i][j] -= f * w[r][j];
    }
    ++r;
  }
  return r;
}

namespace {

// Reduced row echelon form over the rationals; returns pivot column per row.
std::vector<int> rref(std::vector<std::vector<Rat>>& w) {
  int k = int(w.size());
  int n = k == 0 ? 0 : int(w[0].size());
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < n && r < k; ++c) {
    int p = -1;
    for (int i = r; i < k; ++i)
      if (w[i][c] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(w[r], w[p]);
    Rat inv = Rat(1) / w[r][c];
    for (int j = 0; j < n; ++j) w[r][j] *= inv;
    for (int i = 0; i < k; ++i) {
      if (i == r || w[i][c] == 0) continue;
      Rat f = w[i][c];
      for (int j = 0; j < n; ++j) w[i][j] -= f * w[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::optional<std::vector<Rat>> solve_linear(const IntMatrix& a, const std::vector<Rat>& rhs) {
  require(int(rhs.size()) == a.rows(), errc::invalid, "solve_linear dimension mismatch");
  int k = a.rows(), n = a.cols();
  std::vector<std::vector<Rat>> w(k, std::vector<Rat>(n + 1));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < n; ++j) w[i][j] = Rat(a.at(i, j));
    w[i][n] = rhs[i];
  }
  std::vector<int> pivots = rref(w);
  // inconsistency: pivot in the rhs column
  for (int i = 0; i < k; ++i) {
    bool zero_row = true;
    for (int j = 0; j < n; ++j)
      if (w[i][j] != 0) {
        zero_row = false;
        break;
      }
    if (zero_row && w[i][n] != 0) return std::nullopt;
  }
  std::vector<Rat> x(n);
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = w[r][n];
  return x;
}

std::vector<std::vector<Rat>> null_space(const IntMatrix& a) {
  int k = a.rows(), n = a.cols();
  std::vector<std::vector<Rat>> w(k, std::vector<Rat>(n));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < n; ++j) w[i][j] = Rat(a.at(i, j));
  std::vector<int> pivots = rref(w);
  std::vector<bool> is_pivot(n, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rat>> basis;
  for (int c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Rat> v(n);
    v[c] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -w[r][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<std::vector<Rat>>> inverse(const IntMatrix& a) {
  require(a.rows() == a.cols(), errc::invalid, "inverse of non-square matrix");
  int n = a.rows();
  std::vector<std::vector<Rat>> w(n, std::vector<Rat>(2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w[i][j] = Rat(a.at(i, j));
    w[i][n + i] = 1;
  }
  std::vector<int> pivots = rref(w);
  if (int(pivots.size()) < n || (n > 0 && pivots[n - 1] >= n)) return std::nullopt;
  std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = w[i][n + j];
  return inv;
}

std::optional<std::vector<Int>> solve_integral(const IntMatrix& a, const std::vector<Int>& rhs) {
  require(int(rhs.size()) == a.rows(), errc::invalid, "solve_integral dimension mismatch");
  int k = a.rows(), n = a.cols();
  SnfResult snf = smith_normal_form(a);
  // a x = rhs  <=>  d (u x) = s^{-1} rhs
  std::vector<Rat> rhs_r(k);
  for (int i = 0; i < k; ++i) rhs_r[i] = Rat(rhs[i]);
  auto y = solve_linear(snf.s, rhs_r);
  if (!y) return std::nullopt;
  std::vector<Int> z(n, Int(0));
  int limit = std::min(k, n);
  for (int i = 0; i < k; ++i) {
    Rat yi = (*y)[i];
    require(rat_is_integer(yi), errc::internal, "unimodular solve returned fraction");
    Int v = numerator(yi);
    if (i < limit && snf.d.at(i, i) != 0) {
      if (v % snf.d.at(i, i) != 0) return std::nullopt;
      z[i] = v / snf.d.at(i, i);
    } else if (v != 0) {
      return std::nullopt;
    }
  }
  std::vector<Rat> z_r(n);
  for (int i = 0; i < n; ++i) z_r[i] = Rat(z[i]);
  auto x = solve_linear(snf.u, z_r);
  require(x.has_value(), errc::internal, "unimodular system must be solvable");
  std::vector<Int> out(n);
  for (int i = 0; i < n; ++i) {
    require(rat_is_integer((*x)[i]), errc::internal, "unimodular solve returned fraction");
    out[i] = numerator((*x)[i]);
  }
  return out;
}

}  // namespace gctuf
