#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "matrix.hpp"
#include "support.hpp"
#include "types.hpp"

namespace gctuf {

// Directed spanning tree plus one arc per column; rows are indexed by tree
// arcs. A column arc with tail == head encodes a zero column.
struct NetworkRealization {
  struct Arc {
    int tail = 0, head = 0;
  };
  int nv = 0;
  std::vector<Arc> row_arcs;
  std::vector<Arc> col_arcs;

  // Matrix given by the path rule: entry (u, a) is +1/-1/0 as the tree path
  // from tail(a) to head(a) passes arc u forwardly / backwardly / not at all.
  IntMatrix derive() const;
};

// One deletion step of the core reduction (unit or duplicate/negated row or
// column); `removed` keeps the deleted line so the reduction replays both ways.
struct CoreOp {
  bool is_row = true;
  int index = 0;
  std::vector<Int> removed;
};

struct CoreTrace {
  std::vector<CoreOp> ops;              // applied input -> reduced, in order
  std::vector<int> row_perm, col_perm;  // core[i][j] = rs[i]*cs[j]*reduced[p[i]][q[j]]
  std::vector<int> row_sign, col_sign;
};

struct ThreeSumSplit {
  std::vector<int> rows_a, cols_a, rows_b, cols_b;  // index lists into the parent
  std::vector<Int> e, f, g, h;  // t[rows_a][cols_b] = e f^T, t[rows_b][cols_a] = g h^T

  int na() const { return int(cols_a.size()); }
  int nb() const { return int(cols_b.size()); }
};

struct DecompNode {
  enum class Kind { network, transposed_network, core, pivot, three_sum };
  Kind kind = Kind::network;

  NetworkRealization realization;  // network / transposed_network

  int core_id = 0;  // 1 or 2
  CoreTrace trace;

  int pivot_row = -1, pivot_col = -1;
  DecompPtr child;  // decomposition of the pivoted matrix

  ThreeSumSplit split;
  DecompPtr child_a, child_b;  // decompositions of the diagonal blocks
};

const IntMatrix& core_matrix(int id);

// Matrix pivot on entry (i, j); requires t(i,j) in {-1, 1}.
IntMatrix pivot(const IntMatrix& t, int i, int j);

struct SearchCaps {
  int network_rows = 10;        // exhaustive tree search row cap
  int three_sum_cols = 14;      // total column cap for bipartition search
  int tu_cap = 14;              // Ghouila-Houri dimension cap
  int64_t node_budget = 4'000'000;  // backtracking node cap per search
};

std::optional<NetworkRealization> recognize_network(const IntMatrix& t,
                                                    const SearchCaps& caps = {});

struct CoreMatch {
  int core_id = 0;
  CoreTrace trace;
};
std::optional<CoreMatch> recognize_core(const IntMatrix& t);

// Balanced-first exhaustive bipartition search. Returned splits always have
// na, nb >= 2, exactly rank-one off-diagonal blocks, and TU side systems
// [A; h^T] and [B; f^T].
std::optional<ThreeSumSplit> find_three_sum(const IntMatrix& t, const SearchCaps& caps = {});

IntMatrix three_sum_assemble(const IntMatrix& a, const std::vector<Int>& e,
                             const std::vector<Int>& f, const std::vector<Int>& g,
                             const std::vector<Int>& h, const IntMatrix& b);

IntMatrix recompose(const DecompNode& node);

// Full decomposition tree; throws errc::budget when the matrix is
// undecomposable within the caps. A hint tree is verified instead of searched.
DecompPtr decompose(const IntMatrix& t, const SearchCaps& caps = {}, DecompPtr hint = nullptr);

void verify_decomposition(const IntMatrix& t, const DecompNode& node, const SearchCaps& caps = {});

}  // namespace gctuf
