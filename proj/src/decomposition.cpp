#include "decomposition.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "linalg.hpp"

namespace gctuf {

const IntMatrix& core_matrix(int id) {
  static const IntMatrix c1 = IntMatrix::from_rows({
      {Int(1), Int(-1), Int(0), Int(0), Int(-1)},
      {Int(-1), Int(1), Int(-1), Int(0), Int(0)},
      {Int(0), Int(-1), Int(1), Int(-1), Int(0)},
      {Int(0), Int(0), Int(-1), Int(1), Int(-1)},
      {Int(-1), Int(0), Int(0), Int(-1), Int(1)},
  });
  static const IntMatrix c2 = IntMatrix::from_rows({
      {Int(1), Int(1), Int(1), Int(1), Int(1)},
      {Int(1), Int(1), Int(1), Int(0), Int(0)},
      {Int(1), Int(0), Int(1), Int(1), Int(0)},
      {Int(1), Int(0), Int(0), Int(1), Int(1)},
      {Int(1), Int(1), Int(0), Int(0), Int(1)},
  });
  require(id == 1 || id == 2, errc::invalid, "core id must be 1 or 2");
  return id == 1 ? c1 : c2;
}

IntMatrix pivot(const IntMatrix& t, int i, int j) {
  require(i >= 0 && i < t.rows() && j >= 0 && j < t.cols(), errc::invalid,
          "pivot position out of range");
  const Int& eps = t.at(i, j);
  require(eps == 1 || eps == -1, errc::invalid, "pivot entry must be +-1");
  IntMatrix out(t.rows(), t.cols());
  for (int r = 0; r < t.rows(); ++r)
    for (int c = 0; c < t.cols(); ++c) {
      if (r == i && c == j)
        out.at(r, c) = -eps;
      else if (r == i)
        out.at(r, c) = eps * t.at(r, c);
      else if (c == j)
        out.at(r, c) = eps * t.at(r, c);
      else
        out.at(r, c) = t.at(r, c) - eps * t.at(r, j) * t.at(i, c);
    }
  return out;
}

IntMatrix NetworkRealization::derive() const {
  int k = int(row_arcs.size());
  int n = int(col_arcs.size());
  IntMatrix t(k, n);
  // tree adjacency: (neighbor, row index, forward flag)
  struct Half {
    int to, row;
    bool forward;
  };
  std::vector<std::vector<Half>> adj(nv);
  for (int u = 0; u < k; ++u) {
    require(row_arcs[u].tail >= 0 && row_arcs[u].tail < nv && row_arcs[u].head >= 0 &&
                row_arcs[u].head < nv,
            errc::invalid, "realization arc out of range");
    adj[row_arcs[u].tail].push_back({row_arcs[u].head, u, true});
    adj[row_arcs[u].head].push_back({row_arcs[u].tail, u, false});
  }
  for (int c = 0; c < n; ++c) {
    int v = col_arcs[c].tail, w = col_arcs[c].head;
    if (v == w) continue;  // zero column
    // BFS path v -> w in the tree
    std::vector<int> prev_vertex(nv, -1), prev_row(nv, -1);
    std::vector<signed char> prev_fwd(nv, 0);
    std::vector<int> queue{v};
    prev_vertex[v] = v;
    for (size_t qi = 0; qi < queue.size() && prev_vertex[w] == -1; ++qi) {
      int x = queue[qi];
      for (const Half& hh : adj[x]) {
        if (prev_vertex[hh.to] != -1) continue;
        prev_vertex[hh.to] = x;
        prev_row[hh.to] = hh.row;
        prev_fwd[hh.to] = hh.forward ? 1 : -1;
        queue.push_back(hh.to);
      }
    }
    require(prev_vertex[w] != -1, errc::invalid, "realization tree is not connected");
    for (int x = w; x != v; x = prev_vertex[x]) t.at(prev_row[x], c) = Int(prev_fwd[x]);
  }
  return t;
}

// ---------------------------------------------------------------------------
// network recognition

namespace {

struct NetSearch {
  const IntMatrix& t;
  int k, n;
  SearchCaps caps;
  int64_t nodes = 0;

  std::vector<std::pair<int, int>> edges;       // undirected, reference orientation
  std::vector<std::vector<int>> support;        // rows per column
  std::vector<int> placed_count;                // per column
  int nv = 0;

  explicit NetSearch(const IntMatrix& tt, const SearchCaps& c) : t(tt), caps(c) {
    k = t.rows();
    n = t.cols();
    support.resize(n);
    placed_count.assign(n, 0);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < k; ++i)
        if (t.at(i, j) != 0) support[j].push_back(i);
  }

  // components of the placed forest
  int component_count(std::vector<int>* comp_out = nullptr) const {
    std::vector<std::vector<int>> adj(nv);
    for (auto [u, v] : edges) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    std::vector<int> comp(nv, -1);
    int c = 0;
    for (int s = 0; s < nv; ++s) {
      if (comp[s] != -1) continue;
      std::vector<int> queue{s};
      comp[s] = c;
      for (size_t qi = 0; qi < queue.size(); ++qi)
        for (int x : adj[queue[qi]])
          if (comp[x] == -1) {
            comp[x] = c;
            queue.push_back(x);
          }
      ++c;
    }
    if (comp_out) *comp_out = comp;
    return c;
  }

  // paths-so-far check for column j; complete means all support rows placed
  bool column_ok(int j, bool complete) const {
    std::map<int, int> deg;
    int edge_cnt = 0;
    for (int r : support[j]) {
      if (r >= int(edges.size())) continue;
      auto [u, v] = edges[r];
      if (++deg[u] > 2 || ++deg[v] > 2) return false;
      ++edge_cnt;
    }
    if (!complete || edge_cnt == 0) return true;
    // support edges lie in a forest, so "path" = connected with max degree 2
    int endpoints = 0;
    for (auto [vtx, d] : deg)
      if (d == 1) ++endpoints;
    if (endpoints != 2) return false;
    return int(deg.size()) == edge_cnt + 1;
  }

  // joint sign consistency for all fully placed columns; fills orientations
  // when `assign` is given
  bool signs_ok(std::vector<int>* row_flip, std::vector<int>* col_flip) const {
    int vars = k + n;
    std::vector<int> color(vars, 0);
    std::vector<std::vector<std::pair<int, int>>> cg(vars);  // (other, parity)
    for (int j = 0; j < n; ++j) {
      if (placed_count[j] != int(support[j].size()) || support[j].empty()) continue;
      // reference path direction: from the smaller endpoint id
      std::map<int, std::vector<std::pair<int, int>>> adj;  // vertex -> (other, row)
      for (int r : support[j]) {
        auto [u, v] = edges[r];
        adj[u].push_back({v, r});
        adj[v].push_back({u, r});
      }
      int start = -1;
      for (auto& [vtx, lst] : adj)
        if (lst.size() == 1) {
          start = vtx;
          break;
        }
      if (start < 0) return false;
      int cur = start, prev = -1;
      while (true) {
        bool moved = false;
        for (auto [nxt, r] : adj[cur]) {
          if (nxt == prev) continue;
          int tau = edges[r].first == cur ? 1 : -1;  // forward along reference path
          int val = int(t.at(r, j));
          int parity = val * tau;  // o_r * d_j must equal this
          cg[r].push_back({k + j, parity});
          cg[k + j].push_back({r, parity});
          prev = cur;
          cur = nxt;
          moved = true;
          break;
        }
        if (!moved) break;
      }
    }
    for (int s = 0; s < vars; ++s) {
      if (color[s] != 0 || cg[s].empty()) continue;
      color[s] = 1;
      std::vector<int> queue{s};
      for (size_t qi = 0; qi < queue.size(); ++qi) {
        int x = queue[qi];
        for (auto [y, parity] : cg[x]) {
          int want = color[x] * parity;
          if (color[y] == 0) {
            color[y] = want;
            queue.push_back(y);
          } else if (color[y] != want) {
            return false;
          }
        }
      }
    }
    if (row_flip) {
      row_flip->assign(k, 1);
      col_flip->assign(n, 1);
      for (int r = 0; r < k; ++r) (*row_flip)[r] = color[r] == 0 ? 1 : color[r];
      for (int j = 0; j < n; ++j) (*col_flip)[j] = color[k + j] == 0 ? 1 : color[k + j];
    }
    return true;
  }

  bool place_ok(int row) const {
    for (int j = 0; j < n; ++j) {
      const auto& sup = support[j];
      if (!std::binary_search(sup.begin(), sup.end(), row)) continue;
      bool complete = placed_count[j] == int(sup.size());
      if (!column_ok(j, complete)) return false;
    }
    return signs_ok(nullptr, nullptr);
  }

  std::optional<NetworkRealization> found;

  void finish() {
    if (component_count() != 1) return;
    std::vector<int> row_flip, col_flip;
    if (!signs_ok(&row_flip, &col_flip)) return;
    NetworkRealization real;
    real.nv = nv;
    for (int r = 0; r < k; ++r) {
      auto [u, v] = edges[r];
      real.row_arcs.push_back(row_flip[r] == 1 ? NetworkRealization::Arc{u, v}
                                               : NetworkRealization::Arc{v, u});
    }
    for (int j = 0; j < n; ++j) {
      if (support[j].empty()) {
        real.col_arcs.push_back({0, 0});
        continue;
      }
      std::map<int, int> deg;
      for (int r : support[j]) {
        deg[edges[r].first]++;
        deg[edges[r].second]++;
      }
      std::vector<int> ends;
      for (auto [vtx, d] : deg)
        if (d == 1) ends.push_back(vtx);
      std::sort(ends.begin(), ends.end());
      int p = ends[0], q = ends[1];
      real.col_arcs.push_back(col_flip[j] == 1 ? NetworkRealization::Arc{p, q}
                                               : NetworkRealization::Arc{q, p});
    }
    if (real.derive() == t) found = real;
  }

  void bump(int row, int delta) {
    for (int j = 0; j < n; ++j)
      if (std::binary_search(support[j].begin(), support[j].end(), row)) placed_count[j] += delta;
  }

  void dfs(int row) {
    if (found) return;
    require(++nodes <= caps.node_budget, errc::budget, "network recognition budget exceeded");
    if (row == k) {
      finish();
      return;
    }
    std::vector<int> comp;
    int ncomp = component_count(&comp);
    auto try_edge = [&](int u, int v, int new_vertices) {
      int old_nv = nv;
      nv += new_vertices;
      edges.push_back({u, v});
      bump(row, +1);
      if (place_ok(row)) dfs(row + 1);
      bump(row, -1);
      edges.pop_back();
      nv = old_nv;
      if (found) return true;
      return false;
    };
    // connect two existing components
    for (int u = 0; u < nv; ++u)
      for (int v = u + 1; v < nv; ++v) {
        if (comp[u] == comp[v]) continue;
        if (try_edge(u, v, 0)) return;
      }
    // attach a new vertex
    for (int u = 0; u < nv; ++u)
      if (try_edge(u, nv, 1)) return;
    // fresh component; only useful while enough rows remain to reconnect
    if (ncomp == 0 || int(edges.size()) + (ncomp + 1) <= k + 0) {
      if (try_edge(nv, nv + 1, 2)) return;
    }
  }
};

}  // namespace

std::optional<NetworkRealization> recognize_network(const IntMatrix& t, const SearchCaps& caps) {
  int k = t.rows(), n = t.cols();
  require(k <= caps.network_rows, errc::budget, "row count exceeds network recognition cap");
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < n; ++j)
      if (t.at(i, j) < -1 || t.at(i, j) > 1) return std::nullopt;
  if (k == 0) {
    // single-vertex tree; every column must be zero
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < k; ++i)
        if (t.at(i, j) != 0) return std::nullopt;
    NetworkRealization real;
    real.nv = 1;
    real.col_arcs.assign(size_t(n), {0, 0});
    return real;
  }
  NetSearch search(t, caps);
  search.dfs(0);
  return search.found;
}

// ---------------------------------------------------------------------------
// core recognition

namespace {

int nonzeros(const std::vector<Int>& v) {
  int c = 0;
  for (const Int& x : v)
    if (x != 0) ++c;
  return c;
}

bool equal_or_negated(const std::vector<Int>& a, const std::vector<Int>& b) {
  if (a == b) return true;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != -b[i]) return false;
  return true;
}

// sign-matching of `red` against a core matrix under given permutations
bool sign_match(const IntMatrix& red, const IntMatrix& core, const std::vector<int>& p,
                const std::vector<int>& q, std::vector<int>& rs, std::vector<int>& cs) {
  // zero patterns must coincide
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      if ((core.at(i, j) == 0) != (red.at(p[i], q[j]) == 0)) return false;
  rs.assign(5, 0);
  cs.assign(5, 0);
  rs[0] = 1;
  bool progress = true;
  while (progress) {
    progress = false;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) {
        if (core.at(i, j) == 0) continue;
        int prod = int(core.at(i, j) * red.at(p[i], q[j]));  // rs[i]*cs[j] must equal this
        if (rs[i] != 0 && cs[j] == 0) {
          cs[j] = prod * rs[i];
          progress = true;
        } else if (rs[i] == 0 && cs[j] != 0) {
          rs[i] = prod * cs[j];
          progress = true;
        } else if (rs[i] != 0 && cs[j] != 0 && rs[i] * cs[j] != prod) {
          return false;
        }
      }
    // support graph of both cores is connected, but stay safe
    for (int i = 0; i < 5 && !progress; ++i)
      if (rs[i] == 0) {
        rs[i] = 1;
        progress = true;
        break;
      }
  }
  for (int j = 0; j < 5; ++j)
    if (cs[j] == 0) cs[j] = 1;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      if (core.at(i, j) != rs[i] * cs[j] * red.at(p[i], q[j])) return false;
  return true;
}

}  // namespace

std::optional<CoreMatch> recognize_core(const IntMatrix& t) {
  IntMatrix red = t;
  CoreTrace trace;
  // reduction to fixpoint: unit deletions first, then duplicate deletions
  bool changed = true;
  while (changed) {
    changed = false;
    if (red.rows() == 0 || red.cols() == 0) break;
    for (int i = 0; i < red.rows() && !changed; ++i)
      if (nonzeros(red.row(i)) <= 1) {
        trace.ops.push_back({true, i, red.row(i)});
        std::vector<int> keep_r, all_c(red.cols());
        for (int r = 0; r < red.rows(); ++r)
          if (r != i) keep_r.push_back(r);
        std::iota(all_c.begin(), all_c.end(), 0);
        red = red.submatrix(keep_r, all_c);
        changed = true;
      }
    for (int j = 0; j < red.cols() && !changed; ++j)
      if (nonzeros(red.col(j)) <= 1) {
        trace.ops.push_back({false, j, red.col(j)});
        std::vector<int> all_r(red.rows()), keep_c;
        std::iota(all_r.begin(), all_r.end(), 0);
        for (int c = 0; c < red.cols(); ++c)
          if (c != j) keep_c.push_back(c);
        red = red.submatrix(all_r, keep_c);
        changed = true;
      }
    for (int i = 0; i < red.rows() && !changed; ++i)
      for (int j = i + 1; j < red.rows() && !changed; ++j)
        if (equal_or_negated(red.row(i), red.row(j))) {
          trace.ops.push_back({true, j, red.row(j)});
          std::vector<int> keep_r, all_c(red.cols());
          for (int r = 0; r < red.rows(); ++r)
            if (r != j) keep_r.push_back(r);
          std::iota(all_c.begin(), all_c.end(), 0);
          red = red.submatrix(keep_r, all_c);
          changed = true;
        }
    for (int i = 0; i < red.cols() && !changed; ++i)
      for (int j = i + 1; j < red.cols() && !changed; ++j)
        if (equal_or_negated(red.col(i), red.col(j))) {
          trace.ops.push_back({false, j, red.col(j)});
          std::vector<int> all_r(red.rows()), keep_c;
          std::iota(all_r.begin(), all_r.end(), 0);
          for (int c = 0; c < red.cols(); ++c)
            if (c != j) keep_c.push_back(c);
          red = red.submatrix(all_r, keep_c);
          changed = true;
        }
  }
  if (red.rows() != 5 || red.cols() != 5) return std::nullopt;

  std::vector<int> p{0, 1, 2, 3, 4};
  do {
    std::vector<int> q{0, 1, 2, 3, 4};
    do {
      for (int id = 1; id <= 2; ++id) {
        std::vector<int> rs, cs;
        if (sign_match(red, core_matrix(id), p, q, rs, cs)) {
          CoreMatch m;
          m.core_id = id;
          m.trace = trace;
          m.trace.row_perm = p;
          m.trace.col_perm = q;
          m.trace.row_sign = rs;
          m.trace.col_sign = cs;
          return m;
        }
      }
    } while (std::next_permutation(q.begin(), q.end()));
  } while (std::next_permutation(p.begin(), p.end()));
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// three-sum search

namespace {

// normalized direction of a (possibly zero) vector: first nonzero made +1;
// returns sign relative to the normalized pattern (0 for the zero vector)
int normalize(std::vector<Int>& v) {
  for (const Int& x : v) {
    if (x == 0) continue;
    if (x < 0) {
      for (Int& y : v) y = -y;
      return -1;
    }
    return 1;
  }
  return 0;
}

}  // namespace

IntMatrix three_sum_assemble(const IntMatrix& a, const std::vector<Int>& e,
                             const std::vector<Int>& f, const std::vector<Int>& g,
                             const std::vector<Int>& h, const IntMatrix& b) {
  int ka = a.rows(), na = a.cols(), kb = b.rows(), nb = b.cols();
  require(int(e.size()) == ka && int(f.size()) == nb && int(g.size()) == kb &&
              int(h.size()) == na,
          errc::invalid, "three-sum vector dimensions inconsistent");
  IntMatrix t(ka + kb, na + nb);
  for (int i = 0; i < ka; ++i)
    for (int j = 0; j < na; ++j) t.at(i, j) = a.at(i, j);
  for (int i = 0; i < ka; ++i)
    for (int j = 0; j < nb; ++j) t.at(i, na + j) = e[i] * f[j];
  for (int i = 0; i < kb; ++i)
    for (int j = 0; j < na; ++j) t.at(ka + i, j) = g[i] * h[j];
  for (int i = 0; i < kb; ++i)
    for (int j = 0; j < nb; ++j) t.at(ka + i, na + j) = b.at(i, j);
  return t;
}

std::optional<ThreeSumSplit> find_three_sum(const IntMatrix& t, const SearchCaps& caps) {
  int k = t.rows(), n = t.cols();
  require(n <= caps.three_sum_cols, errc::budget, "column count exceeds three-sum search cap");
  if (n < 4) return std::nullopt;

  std::vector<int> all_rows(k);
  std::iota(all_rows.begin(), all_rows.end(), 0);

  for (int s = n / 2; s >= 2; --s) {
    // lexicographic size-s subsets as cols_b
    std::vector<int> cb(s);
    std::iota(cb.begin(), cb.end(), 0);
    while (true) {
      std::vector<bool> in_b(n, false);
      for (int c : cb) in_b[c] = true;
      std::vector<int> ca;
      for (int c = 0; c < n; ++c)
        if (!in_b[c]) ca.push_back(c);

      // per-row restrictions and candidate direction patterns
      std::vector<std::vector<Int>> va(k), vb(k);
      std::vector<int> sa(k), sb(k);
      std::vector<std::vector<Int>> f_cands, h_cands;
      for (int r = 0; r < k; ++r) {
        for (int c : ca) va[r].push_back(t.at(r, c));
        for (int c : cb) vb[r].push_back(t.at(r, c));
        sa[r] = normalize(va[r]);
        sb[r] = normalize(vb[r]);
        if (sb[r] != 0 && std::find(f_cands.begin(), f_cands.end(), vb[r]) == f_cands.end())
          f_cands.push_back(vb[r]);
        if (sa[r] != 0 && std::find(h_cands.begin(), h_cands.end(), va[r]) == h_cands.end())
          h_cands.push_back(va[r]);
      }
      f_cands.push_back(std::vector<Int>(size_t(s), Int(0)));
      h_cands.push_back(std::vector<Int>(size_t(n - s), Int(0)));

      for (const auto& fc : f_cands) {
        for (const auto& hc : h_cands) {
          std::vector<int> rows_a, rows_b;
          std::vector<Int> e, g;
          bool ok = true;
          for (int r = 0; r < k && ok; ++r) {
            bool can_a = sb[r] == 0 || vb[r] == fc;
            bool can_b = sa[r] == 0 || va[r] == hc;
            if (can_a) {
              rows_a.push_back(r);
              e.push_back(Int(sb[r]));
            } else if (can_b) {
              rows_b.push_back(r);
              g.push_back(Int(sa[r]));
            } else {
              ok = false;
            }
          }
          if (!ok) continue;

          ThreeSumSplit split;
          split.rows_a = rows_a;
          split.cols_a = ca;
          split.rows_b = rows_b;
          split.cols_b = cb;
          split.e = e;
          split.f = fc;
          split.g = g;
          split.h = hc;

          // exact block structure
          IntMatrix a = t.submatrix(rows_a, ca);
          IntMatrix b = t.submatrix(rows_b, cb);
          if (three_sum_assemble(a, split.e, split.f, split.g, split.h, b) !=
              t.submatrix([&] {
                 std::vector<int> rr = rows_a;
                 rr.insert(rr.end(), rows_b.begin(), rows_b.end());
                 return rr;
               }(),
                          [&] {
                            std::vector<int> cc = ca;
                            cc.insert(cc.end(), cb.begin(), cb.end());
                            return cc;
                          }()))
            continue;

          // side systems must stay TU for the sub-problems to be exact
          IntMatrix side_a = a.with_rows_appended({split.h});
          IntMatrix side_b = b.with_rows_appended({split.f});
          TuVerdict ta = check_totally_unimodular(side_a, caps.tu_cap);
          TuVerdict tb = check_totally_unimodular(side_b, caps.tu_cap);
          if (!ta.exhaustive || !tb.exhaustive || !ta.tu || !tb.tu) continue;
          return split;
        }
      }

      // next subset
      int i = s - 1;
      while (i >= 0 && cb[i] == n - s + i) --i;
      if (i < 0) break;
      ++cb[i];
      for (int j = i + 1; j < s; ++j) cb[j] = cb[j - 1] + 1;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// recompose / decompose

namespace {

IntMatrix unpivot(const IntMatrix& m, int i, int j) {
  IntMatrix x = pivot(m, i, j);
  // double pivot returns the original with row i and column j negated except
  // the pivot entry itself
  for (int c = 0; c < x.cols(); ++c)
    if (c != j) x.at(i, c) = -x.at(i, c);
  for (int r = 0; r < x.rows(); ++r)
    if (r != i) x.at(r, j) = -x.at(r, j);
  return x;
}

IntMatrix replay_core(const CoreTrace& trace, int core_id) {
  const IntMatrix& core = core_matrix(core_id);
  IntMatrix red(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      red.at(trace.row_perm[i], trace.col_perm[j]) =
          Int(trace.row_sign[i] * trace.col_sign[j]) * core.at(i, j);
  // undo the deletions in reverse
  for (auto it = trace.ops.rbegin(); it != trace.ops.rend(); ++it) {
    const CoreOp& op = *it;
    if (op.is_row) {
      IntMatrix next(red.rows() + 1, red.cols());
      require(int(op.removed.size()) == red.cols(), errc::invalid, "core trace row mismatch");
      for (int i = 0, src = 0; i < next.rows(); ++i) {
        if (i == op.index) {
          for (int j = 0; j < next.cols(); ++j) next.at(i, j) = op.removed[j];
        } else {
          for (int j = 0; j < next.cols(); ++j) next.at(i, j) = red.at(src, j);
          ++src;
        }
      }
      red = next;
    } else {
      IntMatrix next(red.rows(), red.cols() + 1);
      require(int(op.removed.size()) == red.rows(), errc::invalid, "core trace column mismatch");
      for (int j = 0, src = 0; j < next.cols(); ++j) {
        if (j == op.index) {
          for (int i = 0; i < next.rows(); ++i) next.at(i, j) = op.removed[i];
        } else {
          for (int i = 0; i < next.rows(); ++i) next.at(i, j) = red.at(i, src);
          ++src;
        }
      }
      red = next;
    }
  }
  return red;
}

}  // namespace

IntMatrix recompose(const DecompNode& node) {
  switch (node.kind) {
    case DecompNode::Kind::network:
      return node.realization.derive();
    case DecompNode::Kind::transposed_network:
      return node.realization.derive().transpose();
    case DecompNode::Kind::core:
      return replay_core(node.trace, node.core_id);
    case DecompNode::Kind::pivot: {
      require(node.child != nullptr, errc::invalid, "pivot node without child");
      return unpivot(recompose(*node.child), node.pivot_row, node.pivot_col);
    }
    case DecompNode::Kind::three_sum: {
      require(node.child_a && node.child_b, errc::invalid, "three-sum node without children");
      IntMatrix a = recompose(*node.child_a);
      IntMatrix b = recompose(*node.child_b);
      IntMatrix packed = three_sum_assemble(a, node.split.e, node.split.f, node.split.g,
                                            node.split.h, b);
      // scatter back through the recorded index lists
      int rows = int(node.split.rows_a.size() + node.split.rows_b.size());
      int cols = int(node.split.cols_a.size() + node.split.cols_b.size());
      IntMatrix t(rows, cols);
      std::vector<int> rmap = node.split.rows_a;
      rmap.insert(rmap.end(), node.split.rows_b.begin(), node.split.rows_b.end());
      std::vector<int> cmap = node.split.cols_a;
      cmap.insert(cmap.end(), node.split.cols_b.begin(), node.split.cols_b.end());
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) t.at(rmap[i], cmap[j]) = packed.at(i, j);
      return t;
    }
  }
  fail(errc::internal, "unreachable");
}

DecompPtr decompose(const IntMatrix& t, const SearchCaps& caps, DecompPtr hint) {
  if (hint) {
    verify_decomposition(t, *hint, caps);
    return hint;
  }
  for (int i = 0; i < t.rows(); ++i)
    for (int j = 0; j < t.cols(); ++j)
      require(t.at(i, j) >= -1 && t.at(i, j) <= 1, errc::invalid,
              "matrix with entries outside {-1,0,1} is not TU");

  // recognition budget exhaustion is treated as "not recognized"; the other
  // cases may still apply
  auto try_network = [&](const IntMatrix& m) -> std::optional<NetworkRealization> {
    if (m.rows() > caps.network_rows) return std::nullopt;
    try {
      return recognize_network(m, caps);
    } catch (const error& e) {
      if (e.kind() == errc::budget) return std::nullopt;
      throw;
    }
  };
  auto leaf = [&]() -> DecompPtr {
    if (auto real = try_network(t)) {
      auto node = std::make_shared<DecompNode>();
      node->kind = DecompNode::Kind::network;
      node->realization = *real;
      return node;
    }
    if (auto real = try_network(t.transpose())) {
      auto node = std::make_shared<DecompNode>();
      node->kind = DecompNode::Kind::transposed_network;
      node->realization = *real;
      return node;
    }
    if (auto core = recognize_core(t)) {
      auto node = std::make_shared<DecompNode>();
      node->kind = DecompNode::Kind::core;
      node->core_id = core->core_id;
      node->trace = core->trace;
      return node;
    }
    return nullptr;
  }();
  if (leaf) return leaf;

  if (auto split = find_three_sum(t, caps)) {
    auto node = std::make_shared<DecompNode>();
    node->kind = DecompNode::Kind::three_sum;
    node->split = *split;
    node->child_a = decompose(t.submatrix(split->rows_a, split->cols_a), caps);
    node->child_b = decompose(t.submatrix(split->rows_b, split->cols_b), caps);
    return node;
  }

  for (int i = 0; i < t.rows(); ++i)
    for (int j = 0; j < t.cols(); ++j) {
      if (t.at(i, j) != 1 && t.at(i, j) != -1) continue;
      IntMatrix p = pivot(t, i, j);
      if (auto split = find_three_sum(p, caps)) {
        auto inner = std::make_shared<DecompNode>();
        inner->kind = DecompNode::Kind::three_sum;
        inner->split = *split;
        inner->child_a = decompose(p.submatrix(split->rows_a, split->cols_a), caps);
        inner->child_b = decompose(p.submatrix(split->rows_b, split->cols_b), caps);
        auto node = std::make_shared<DecompNode>();
        node->kind = DecompNode::Kind::pivot;
        node->pivot_row = i;
        node->pivot_col = j;
        node->child = inner;
        return node;
      }
    }

  fail(errc::budget, "matrix is undecomposable at desk scale");
}

void verify_decomposition(const IntMatrix& t, const DecompNode& node, const SearchCaps& caps) {
  require(recompose(node) == t, errc::invalid, "decomposition does not recompose to the matrix");
  // structural checks per node
  switch (node.kind) {
    case DecompNode::Kind::network:
    case DecompNode::Kind::transposed_network:
    case DecompNode::Kind::core:
      return;
    case DecompNode::Kind::pivot:
      require(node.child != nullptr, errc::invalid, "pivot node without child");
      verify_decomposition(pivot(t, node.pivot_row, node.pivot_col), *node.child, caps);
      return;
    case DecompNode::Kind::three_sum: {
      require(node.split.na() >= 2 && node.split.nb() >= 2, errc::invalid,
              "three-sum parts need >= 2 columns each");
      IntMatrix a = t.submatrix(node.split.rows_a, node.split.cols_a);
      IntMatrix b = t.submatrix(node.split.rows_b, node.split.cols_b);
      require(check_totally_unimodular(a.with_rows_appended({node.split.h}), caps.tu_cap).tu,
              errc::invalid, "three-sum A-side system is not TU");
      require(check_totally_unimodular(b.with_rows_appended({node.split.f}), caps.tu_cap).tu,
              errc::invalid, "three-sum B-side system is not TU");
      verify_decomposition(a, *node.child_a, caps);
      verify_decomposition(b, *node.child_b, caps);
      return;
    }
  }
}

}  // namespace gctuf
