#include "matrix.hpp"

#include <sstream>

namespace gctuf {

std::string int_to_string(const Int& v) { return v.str(); }

std::string rat_to_string(const Rat& v) {
  if (denominator(v) == 1) return numerator(v).str();
  return numerator(v).str() + "/" + denominator(v).str();
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
  int r = int(rows.size());
  int c = r == 0 ? 0 : int(rows[0].size());
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    require(int(rows[i].size()) == c, errc::invalid, "ragged rows in matrix literal");
    for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

std::vector<Int> IntMatrix::row(int i) const {
  std::vector<Int> out(cols_);
  for (int j = 0; j < cols_; ++j) out[j] = at(i, j);
  return out;
}

std::vector<Int> IntMatrix::col(int j) const {
  std::vector<Int> out(rows_);
  for (int i = 0; i < rows_; ++i) out[i] = at(i, j);
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
  return m;
}

IntMatrix IntMatrix::submatrix(const std::vector<int>& row_idx,
                               const std::vector<int>& col_idx) const {
  IntMatrix m(int(row_idx.size()), int(col_idx.size()));
  for (size_t i = 0; i < row_idx.size(); ++i)
    for (size_t j = 0; j < col_idx.size(); ++j) m.at(int(i), int(j)) = at(row_idx[i], col_idx[j]);
  return m;
}

IntMatrix IntMatrix::with_rows_appended(const std::vector<std::vector<Int>>& extra) const {
  IntMatrix m(rows_ + int(extra.size()), cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
  for (size_t k = 0; k < extra.size(); ++k) {
    require(int(extra[k].size()) == cols_, errc::invalid, "appended row has wrong width");
    for (int j = 0; j < cols_; ++j) m.at(rows_ + int(k), j) = extra[k][j];
  }
  return m;
}

void IntMatrix::swap_rows(int i, int j) {
  if (i == j) return;
  for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void IntMatrix::swap_cols(int i, int j) {
  if (i == j) return;
  for (int r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}

void IntMatrix::negate_row(int i) {
  for (int c = 0; c < cols_; ++c) at(i, c) = -at(i, c);
}

void IntMatrix::negate_col(int j) {
  for (int r = 0; r < rows_; ++r) at(r, j) = -at(r, j);
}

void IntMatrix::add_row_multiple(int i, int j, const Int& factor) {
  for (int c = 0; c < cols_; ++c) at(i, c) += factor * at(j, c);
}

void IntMatrix::add_col_multiple(int i, int j, const Int& factor) {
  for (int r = 0; r < rows_; ++r) at(r, i) += factor * at(r, j);
}

std::string IntMatrix::to_text() const {
  std::ostringstream os;
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) {
      if (j) os << ' ';
      os << at(i, j).str();
    }
    os << '\n';
  }
  return os.str();
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
  require(a.cols() == b.rows(), errc::invalid, "matrix product dimension mismatch");
  IntMatrix m(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Int& aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols(); ++j) m.at(i, j) += aik * b.at(k, j);
    }
  return m;
}

std::vector<Int> mat_vec(const IntMatrix& a, const std::vector<Int>& x) {
  require(int(x.size()) == a.cols(), errc::invalid, "matrix-vector dimension mismatch");
  std::vector<Int> out(a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out[i] += a.at(i, j) * x[j];
  return out;
}

std::vector<Rat> mat_vec_rat(const IntMatrix& a, const std::vector<Rat>& x) {
  require(int(x.size()) == a.cols(), errc::invalid, "matrix-vector dimension mismatch");
  std::vector<Rat> out(a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out[i] += Rat(a.at(i, j)) * x[j];
  return out;
}

Int dot(const std::vector<Int>& a, const std::vector<Int>& b) {
  require(a.size() == b.size(), errc::invalid, "dot product dimension mismatch");
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool satisfies(const IntMatrix& m, const std::vector<Int>& b, const std::vector<Int>& x) {
  auto mx = mat_vec(m, x);
  for (int i = 0; i < m.rows(); ++i)
    if (mx[i] > b[i]) return false;
  return true;
}

}  // namespace gctuf
