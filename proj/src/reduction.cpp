#include "reduction.hpp"

#include <numeric>

#include "linalg.hpp"

namespace gctuf {

MaxMinor find_max_minor_submatrix(const IntMatrix& a, const Int& minor_budget) {
  int k = a.rows(), n = a.cols();
  require(n >= 1 && k >= n, errc::invalid, "matrix has no n x n submatrix");
  require(rank_of(a) == n, errc::invalid, "rank deficiency: no nonsingular n x n submatrix");

  Int count = 1;
  bool exhaustive = true;
  for (int i = 0; i < n && exhaustive; ++i) {
    count = count * (k - i) / (i + 1);
    if (count > minor_budget) exhaustive = false;
  }

  std::vector<int> all_cols(n);
  std::iota(all_cols.begin(), all_cols.end(), 0);

  MaxMinor out;
  out.exhaustive = exhaustive;
  if (exhaustive) {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    Int best = 0;
    std::vector<int> best_rows;
    while (true) {
      Int d = determinant(a.submatrix(idx, all_cols));
      if (int_abs(d) > best) {
        best = int_abs(d);
        best_rows = idx;
      }
      int i = n - 1;
      while (i >= 0 && idx[i] == k - n + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
    }
    out.rows = best_rows;
  } else {
    // greedy rational row pivoting: per column, take the unused row with the
    // largest absolute pivot after elimination
    std::vector<std::vector<Rat>> w(k, std::vector<Rat>(n));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < n; ++j) w[i][j] = Rat(a.at(i, j));
    std::vector<bool> used(k, false);
    std::vector<int> rows;
    for (int c = 0; c < n; ++c) {
      int pick = -1;
      Rat best = 0;
      for (int i = 0; i < k; ++i) {
        if (used[i]) continue;
        Rat v = w[i][c] < 0 ? Rat(-w[i][c]) : w[i][c];
        if (pick < 0 || v > best) {
          best = v;
          pick = i;
        }
      }
      require(pick >= 0 && w[pick][c] != 0, errc::internal, "greedy pivot failed on full-rank input");
      used[pick] = true;
      rows.push_back(pick);
      for (int i = 0; i < k; ++i) {
        if (i == pick || w[i][c] == 0) continue;
        Rat f = w[i][c] / w[pick][c];
        for (int j = 0; j < n; ++j) w[i][j] -= f * w[pick][j];
      }
    }
    std::sort(rows.begin(), rows.end());
    out.rows = rows;
  }
  out.h = a.submatrix(out.rows, all_cols);
  out.det = determinant(out.h);
  return out;
}

Reduction reduce_ip(const IpInstance& ip) {
  ip.validate();
  require(!ip.box.has_value(), errc::invalid,
          "reduce expects bounds as matrix rows, not a box section");
  int n = ip.a.cols();
  DeltaVerdict dv = delta_modularity(ip.a);
  require(dv.strict, errc::invalid, "matrix is not strictly delta-modular");
  Int delta = dv.delta;

  MaxMinor mm = find_max_minor_submatrix(ip.a);
  require(int_abs(mm.det) == delta, errc::internal, "maximal minor does not attain delta");
  auto hinv = inverse(mm.h);
  require(hinv.has_value(), errc::internal, "maximal minor must be nonsingular");

  // t = a h^{-1}, integral with entries in {-1,0,1} for strictly
  // delta-modular inputs; checked rather than assumed
  IntMatrix t(ip.a.rows(), n);
  for (int i = 0; i < ip.a.rows(); ++i)
    for (int j = 0; j < n; ++j) {
      Rat v = 0;
      for (int l = 0; l < n; ++l) v += Rat(ip.a.at(i, l)) * (*hinv)[l][j];
      require(rat_is_integer(v), errc::invalid,
              "a h^{-1} is not integral; input violates the strictness hypothesis");
      t.at(i, j) = numerator(v);
    }
  require(is_totally_unimodular(t), errc::invalid,
          "a h^{-1} is not TU; input violates the strictness hypothesis");

  // fractional part h_f of h^{-1} (entrywise floor, negatives included), then
  // the smith form of delta * h_f yields the congruency moduli
  IntMatrix hf_tilde(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat v = (*hinv)[i][j];
      Rat frac = v - Rat(rat_floor(v));
      Rat scaled = Rat(delta) * frac;
      require(rat_is_integer(scaled), errc::internal, "delta * h_f must be integral");
      hf_tilde.at(i, j) = numerator(scaled);
    }
  SnfResult snf = smith_normal_form(hf_tilde);

  Reduction out;
  out.delta = delta;
  out.h = mm.h;
  out.mcctu.t = t;
  out.mcctu.b = ip.b;
  Int prod = 1;
  for (int i = 0; i < n; ++i) {
    Int mt = snf.d.at(i, i);
    Int mi = delta / int_gcd(delta, mt);
    prod *= mi;
    if (mi == 1) continue;
    Congruency cc;
    cc.gamma = snf.u.row(i);
    cc.r = 0;
    cc.m = mi;
    out.mcctu.congruencies.push_back(std::move(cc));
  }
  require(prod == delta, errc::internal, "congruency moduli must multiply to delta");

  if (ip.c) {
    std::vector<Rat> cbar(n, Rat(0));
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) cbar[j] += Rat((*ip.c)[l]) * (*hinv)[l][j];
    out.mcctu.cbar = std::move(cbar);
  }
  return out;
}

GctufInstance congruencies_to_group(const McctuInstance& m) {
  int n = m.t.cols();
  std::vector<int64_t> moduli;
  std::vector<const Congruency*> active;
  for (const Congruency& cc : m.congruencies) {
    require(cc.m >= 1, errc::invalid, "congruency modulus must be >= 1");
    require(int(cc.gamma.size()) == n, errc::invalid, "congruency arity mismatch");
    if (cc.m == 1) continue;  // vacuous
    moduli.push_back(to_int64(cc.m));
    active.push_back(&cc);
  }
  GctufInstance inst;
  inst.t = m.t;
  inst.b = m.b;
  inst.box = m.box;
  inst.group = AbelianGroup(moduli);
  for (int j = 0; j < n; ++j) {
    std::vector<Int> res;
    for (const Congruency* cc : active) res.push_back(cc->gamma[j]);
    inst.labels.push_back(inst.group.reduce(res));
  }
  std::vector<Int> rres;
  for (const Congruency* cc : active) rres.push_back(cc->r);
  inst.targets = TargetSet::of(inst.group, {inst.group.reduce(rres)});
  inst.validate();
  return inst;
}

std::vector<Int> lift_solution(const std::vector<Int>& y, const IntMatrix& h) {
  require(int(y.size()) == h.rows(), errc::invalid, "lift dimension mismatch");
  std::vector<Rat> rhs(y.size());
  for (size_t i = 0; i < y.size(); ++i) rhs[i] = Rat(y[i]);
  auto x = solve_linear(h, rhs);
  require(x.has_value(), errc::invalid, "no preimage under h");
  std::vector<Int> out;
  for (const Rat& v : *x) {
    require(rat_is_integer(v), errc::invalid, "preimage is not integral");
    out.push_back(numerator(v));
  }
  return out;
}

IpInstance split_variables(const IpInstance& ip) {
  int n = ip.a.cols();
  IpInstance out;
  out.a = IntMatrix(ip.a.rows() + 2 * n, 2 * n);
  for (int i = 0; i < ip.a.rows(); ++i)
    for (int j = 0; j < n; ++j) {
      out.a.at(i, j) = ip.a.at(i, j);
      out.a.at(i, n + j) = -ip.a.at(i, j);
    }
  out.b = ip.b;
  // non-negativity rows give full column rank
  for (int j = 0; j < 2 * n; ++j) {
    out.a.at(ip.a.rows() + j, j) = -1;
    out.b.push_back(0);
  }
  if (ip.c) {
    std::vector<Int> c2(2 * n);
    for (int j = 0; j < n; ++j) {
      c2[j] = (*ip.c)[j];
      c2[n + j] = -(*ip.c)[j];
    }
    out.c = c2;
  }
  return out;
}

}  // namespace gctuf
