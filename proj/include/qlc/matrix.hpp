#pragma once

#include <cmath>
#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qlc/errors.hpp"

namespace qlc {

// Small dense real matrix, row-major.
class Matrix {
 public:
  Matrix() = default;

  Matrix(int rows, int cols, std::vector<double> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    detail::require(rows >= 1 && cols >= 1,
                    "matrix dimensions must be positive");
    detail::require(entries_.size() == static_cast<std::size_t>(rows) * cols,
                    "matrix entry count does not match rows x cols");
    integral_ = true;
    for (double v : entries_) {
      detail::require(std::isfinite(v), "matrix entries must be finite");
      if (v != std::nearbyint(v)) integral_ = false;
    }
  }

  Matrix(int rows, int cols) : Matrix(rows, cols, std::vector<double>(
                                                      static_cast<std::size_t>(rows) * cols, 0.0)) {}

  static Matrix from_rows(const std::vector<std::vector<double>>& rows) {
    detail::require(!rows.empty() && !rows.front().empty(), "empty matrix");
    const int cols = static_cast<int>(rows.front().size());
    std::vector<double> entries;
    entries.reserve(rows.size() * cols);
    for (const auto& row : rows) {
      detail::require(static_cast<int>(row.size()) == cols, "ragged matrix rows");
      entries.insert(entries.end(), row.begin(), row.end());
    }
    return Matrix(static_cast<int>(rows.size()), cols, std::move(entries));
  }

  static Matrix identity(int n) {
    Matrix out(n, n);
    for (int i = 0; i < n; ++i) out.set(i, i, 1.0);
    return out;
  }

  static Matrix from_eigen(const Eigen::MatrixXd& m) {
    Matrix out(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
    for (int i = 0; i < out.rows_; ++i)
      for (int j = 0; j < out.cols_; ++j) out.set(i, j, m(i, j));
    return out;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool integral() const { return integral_; }
  std::span<const double> entries() const { return entries_; }

  double operator()(int i, int j) const {
    return entries_[static_cast<std::size_t>(i) * cols_ + j];
  }

  std::vector<double> column(int j) const {
    std::vector<double> out(rows_);
    for (int i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  std::vector<double> row(int i) const {
    auto begin = entries_.begin() + static_cast<std::ptrdiff_t>(i) * cols_;
    return {begin, begin + cols_};
  }

  Matrix select_columns(std::span<const int> indices) const {
    detail::require(!indices.empty(), "column selection must be nonempty");
    Matrix out(rows_, static_cast<int>(indices.size()));
    for (std::size_t c = 0; c < indices.size(); ++c) {
      detail::require(indices[c] >= 0 && indices[c] < cols_,
                      "column index out of range");
      for (int i = 0; i < rows_; ++i)
        out.set(i, static_cast<int>(c), (*this)(i, indices[c]));
    }
    return out;
  }

  // [this | other]
  Matrix hconcat(const Matrix& other) const {
    detail::require(other.rows_ == rows_, "hconcat row mismatch");
    Matrix out(rows_, cols_ + other.cols_);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) out.set(i, j, (*this)(i, j));
      for (int j = 0; j < other.cols_; ++j) out.set(i, cols_ + j, other(i, j));
    }
    return out;
  }

  Eigen::MatrixXd to_eigen() const {
    Eigen::MatrixXd out(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  void set(int i, int j, double v) {
    entries_[static_cast<std::size_t>(i) * cols_ + j] = v;
    if (v != std::nearbyint(v)) integral_ = false;
  }

  int rows_ = 0;
  int cols_ = 0;
  bool integral_ = true;
  std::vector<double> entries_;
};

// I_m (x) M: m copies of M along the block diagonal.
inline Matrix kron_identity(int m, const Matrix& block) {
  detail::require(m >= 1, "block count must be positive");
  const int r = block.rows(), c = block.cols();
  std::vector<double> entries(static_cast<std::size_t>(m) * r * m * c, 0.0);
  const std::size_t stride = static_cast<std::size_t>(m) * c;
  for (int b = 0; b < m; ++b)
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j)
        entries[(static_cast<std::size_t>(b) * r + i) * stride +
                static_cast<std::size_t>(b) * c + j] = block(i, j);
  return Matrix(m * r, m * c, std::move(entries));
}

// Text format: "rows cols" on the first line, then one line per row.
inline Matrix read_matrix_text(std::istream& in) {
  int rows = 0, cols = 0;
  if (!(in >> rows >> cols) || rows < 1 || cols < 1)
    throw FormatError("matrix header must be 'rows cols' with positive values");
  std::vector<double> entries(static_cast<std::size_t>(rows) * cols);
  for (auto& v : entries)
    if (!(in >> v)) throw FormatError("matrix has fewer entries than rows x cols");
  std::string trailing;
  if (in >> trailing) throw FormatError("unexpected trailing matrix content");
  return Matrix(rows, cols, std::move(entries));
}

inline Matrix parse_matrix_text(const std::string& text) {
  std::istringstream in(text);
  return read_matrix_text(in);
}

inline void write_matrix_text(std::ostream& out, const Matrix& m) {
  std::ostringstream buf;
  buf.precision(12);
  buf << m.rows() << ' ' << m.cols() << '\n';
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) buf << (j ? " " : "") << m(i, j);
    buf << '\n';
  }
  out << buf.str();
}

}  // namespace qlc
