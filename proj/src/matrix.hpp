#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "support.hpp"

namespace gctuf {

// Dense matrix with arbitrary-precision integer entries. Value semantics;
// all operations return fresh matrices.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(size_t(rows) * cols) {
    require(rows >= 0 && cols >= 0, errc::invalid, "negative matrix dimension");
  }

  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Int& at(int i, int j) { return data_[size_t(i) * cols_ + j]; }
  const Int& at(int i, int j) const { return data_[size_t(i) * cols_ + j]; }

  std::vector<Int> row(int i) const;
  std::vector<Int> col(int j) const;

  IntMatrix transpose() const;
  IntMatrix submatrix(const std::vector<int>& row_idx, const std::vector<int>& col_idx) const;
  IntMatrix with_rows_appended(const std::vector<std::vector<Int>>& extra) const;

  void swap_rows(int i, int j);
  void swap_cols(int i, int j);
  void negate_row(int i);
  void negate_col(int j);
  // row i += factor * row j
  void add_row_multiple(int i, int j, const Int& factor);
  void add_col_multiple(int i, int j, const Int& factor);

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }

  // One row per line, whitespace-separated decimal integers.
  std::string to_text() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Int> data_;
};

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b);
std::vector<Int> mat_vec(const IntMatrix& a, const std::vector<Int>& x);
std::vector<Rat> mat_vec_rat(const IntMatrix& a, const std::vector<Rat>& x);
Int dot(const std::vector<Int>& a, const std::vector<Int>& b);

// True iff m*x <= b componentwise.
bool satisfies(const IntMatrix& m, const std::vector<Int>& b, const std::vector<Int>& x);

}  // namespace gctuf
