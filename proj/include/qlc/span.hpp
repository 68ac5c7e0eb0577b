#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qlc/errors.hpp"
#include "qlc/matrix.hpp"
#include "qlc/sign_vector.hpp"

namespace qlc {

// Absolute residual tolerance of the floating-point membership test.
inline constexpr double kDefaultTolerance = 1e-9;
// count_pm1_in_span enumerates at most 2^20 candidates.
inline constexpr int kMaxSpanCountLength = 20;

namespace detail {

using int128 = __int128;

struct Overflow {};

inline int128 checked_mul(int128 a, int128 b) {
  int128 out;
  if (__builtin_mul_overflow(a, b, &out)) throw Overflow{};
  return out;
}

inline int128 checked_add(int128 a, int128 b) {
  int128 out;
  if (__builtin_add_overflow(a, b, &out)) throw Overflow{};
  return out;
}

inline int128 checked_sub(int128 a, int128 b) {
  int128 out;
  if (__builtin_sub_overflow(a, b, &out)) throw Overflow{};
  return out;
}

inline int128 abs128(int128 a) { return a < 0 ? -a : a; }

inline int128 gcd128(int128 a, int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Reduced fraction with a positive denominator.
struct Rational {
  int128 num = 0;
  int128 den = 1;

  static Rational make(int128 n, int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const int128 g = gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    return {n, d};
  }

  Rational operator-(const Rational& o) const {
    const int128 g = gcd128(den, o.den);
    const int128 lhs = checked_mul(num, o.den / g);
    const int128 rhs = checked_mul(o.num, den / g);
    return make(checked_sub(lhs, rhs), checked_mul(den, o.den / g));
  }

  Rational operator*(const Rational& o) const {
    const int128 g1 = gcd128(num, o.den);
    const int128 g2 = gcd128(o.num, den);
    const int128 n1 = g1 ? num / g1 : num, d2 = g1 ? o.den / g1 : o.den;
    const int128 n2 = g2 ? o.num / g2 : o.num, d1 = g2 ? den / g2 : den;
    return make(checked_mul(n1, n2), checked_mul(d1, d2));
  }

  Rational divided_by(int128 d) const {
    const int128 g = gcd128(num, d);
    return make(g ? num / g : num, checked_mul(den, g ? d / g : d));
  }

  double to_double() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
};

}  // namespace detail

// Membership oracle for the column span of a fixed k x p matrix.
//
// Integral matrices go through fraction-free (Bareiss) elimination of
// [A | I_k], so membership is decided exactly by the left null space and
// coefficients are recovered by rational back substitution. If 128-bit
// arithmetic would overflow, the tester falls back to the floating path,
// which decides membership by the least-squares residual against tol.
class SpanTester {
 public:
  SpanTester(const Matrix& columns, double tol = kDefaultTolerance)
      : rows_(columns.rows()), cols_(columns.cols()), tol_(tol) {
    detail::require(tol > 0.0, "span tolerance must be positive");
    eigen_ = columns.to_eigen();
    qr_.setThreshold(1e-12);
    qr_.compute(eigen_);
    if (columns.integral()) {
      try {
        build_exact(columns);
        exact_ = true;
      } catch (const detail::Overflow&) {
        exact_ = false;
      }
    }
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool exact() const { return exact_; }

  int rank() const {
    return exact_ ? static_cast<int>(pivots_.size())
                  : static_cast<int>(qr_.rank());
  }

  // Coefficients c with columns * c == w, or nullopt when w is outside
  // the span.
  std::optional<std::vector<double>> solve(const SignVector& w) const {
    detail::require(w.length() == rows_,
                    "sign vector length " + std::to_string(w.length()) +
                        " does not match matrix rows " + std::to_string(rows_));
    if (exact_) {
      try {
        return solve_exact(w);
      } catch (const detail::Overflow&) {
      }
    }
    return solve_float(w);
  }

  std::optional<std::vector<double>> solve_float(const SignVector& w) const {
    Eigen::VectorXd target(rows_);
    for (int i = 0; i < rows_; ++i) target(i) = w[i];
    Eigen::VectorXd c = qr_.solve(target);
    const double residual = (eigen_ * c - target).cwiseAbs().maxCoeff();
    if (!(residual <= tol_)) return std::nullopt;
    return std::vector<double>(c.data(), c.data() + c.size());
  }

 private:
  void build_exact(const Matrix& columns) {
    const int width = cols_ + rows_;
    std::vector<std::vector<detail::int128>> m(
        rows_, std::vector<detail::int128>(width, 0));
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j)
        m[i][j] = static_cast<detail::int128>(std::llround(columns(i, j)));
      m[i][cols_ + i] = 1;
    }
    detail::int128 prev = 1;
    int row = 0;
    for (int col = 0; col < cols_ && row < rows_; ++col) {
      int pivot = -1;
      for (int i = row; i < rows_; ++i)
        if (m[i][col] != 0) {
          pivot = i;
          break;
        }
      if (pivot < 0) continue;
      std::swap(m[row], m[pivot]);
      for (int i = row + 1; i < rows_; ++i) {
        for (int j = col + 1; j < width; ++j) {
          const detail::int128 v =
              detail::checked_sub(detail::checked_mul(m[row][col], m[i][j]),
                                  detail::checked_mul(m[i][col], m[row][j]));
          m[i][j] = v / prev;
        }
        m[i][col] = 0;
      }
      prev = m[row][col];
      pivots_.push_back(col);
      ++row;
    }
    echelon_ = std::move(m);
  }

  std::optional<std::vector<double>> solve_exact(const SignVector& w) const {
    const int rank = static_cast<int>(pivots_.size());
    std::vector<detail::int128> y(rows_, 0);
    for (int i = 0; i < rows_; ++i) {
      detail::int128 acc = 0;
      for (int j = 0; j < rows_; ++j) {
        const detail::int128 t = echelon_[i][cols_ + j];
        acc = w[j] > 0 ? detail::checked_add(acc, t) : detail::checked_sub(acc, t);
      }
      y[i] = acc;
    }
    for (int i = rank; i < rows_; ++i)
      if (y[i] != 0) return std::nullopt;

    std::vector<detail::Rational> coeff(cols_);
    for (int r = rank - 1; r >= 0; --r) {
      detail::Rational acc{y[r], 1};
      for (int s = r + 1; s < rank; ++s) {
        const detail::int128 entry = echelon_[r][pivots_[s]];
        if (entry != 0)
          acc = acc - coeff[pivots_[s]] * detail::Rational{entry, 1};
      }
      coeff[pivots_[r]] = acc.divided_by(echelon_[r][pivots_[r]]);
    }
    std::vector<double> out(cols_);
    for (int j = 0; j < cols_; ++j) out[j] = coeff[j].to_double();
    return out;
  }

  int rows_;
  int cols_;
  double tol_;
  bool exact_ = false;
  Eigen::MatrixXd eigen_;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_;
  std::vector<std::vector<detail::int128>> echelon_;
  std::vector<int> pivots_;
};

inline std::optional<std::vector<double>> span_contains(
    const Matrix& columns, const SignVector& w, double tol = kDefaultTolerance) {
  detail::require(columns.rows() == w.length(),
                  "span_contains: matrix has " + std::to_string(columns.rows()) +
                      " rows but w has length " + std::to_string(w.length()));
  return SpanTester(columns, tol).solve(w);
}

// Number of w in {+1,-1}^k lying in the column span.
inline std::uint64_t count_pm1_in_span(const Matrix& columns, int k,
                                       double tol = kDefaultTolerance) {
  check_enumeration_budget(k, kMaxSpanCountLength);
  detail::require(columns.rows() == k, "count_pm1_in_span: row count must equal k");
  const SpanTester tester(columns, tol);
  std::uint64_t count = 0;
  for (const SignVector& w : SignVectorRange(k))
    if (tester.solve(w)) ++count;
  return count;
}

}  // namespace qlc
