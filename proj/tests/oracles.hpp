#pragma once

// Reference implementations used only by the tests. Each one is written
// independently of the library path it checks: Gram-Schmidt in long double
// instead of QR or fraction-free elimination, pairwise Hamming distances
// instead of breadth-first search, Pascal's triangle instead of lgamma.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

using Column = std::vector<long double>;

// Squared distance from target to the span of cols.
inline long double lsq_residual(const std::vector<Column>& cols, const Column& target) {
  std::vector<Column> basis;
  for (const Column& c : cols) {
    Column v = c;
    for (int pass = 0; pass < 2; ++pass)
      for (const Column& q : basis) {
        long double dot = 0;
        for (std::size_t i = 0; i < v.size(); ++i) dot += q[i] * v[i];
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= dot * q[i];
      }
    long double norm = 0;
    for (long double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm < 1e-9L) continue;
    for (long double& x : v) x /= norm;
    basis.push_back(std::move(v));
  }
  Column r = target;
  for (int pass = 0; pass < 2; ++pass)
    for (const Column& q : basis) {
      long double dot = 0;
      for (std::size_t i = 0; i < r.size(); ++i) dot += q[i] * r[i];
      for (std::size_t i = 0; i < r.size(); ++i) r[i] -= dot * q[i];
    }
  long double out = 0;
  for (long double x : r) out += x * x;
  return out;
}

inline Column sign_column(int k, std::uint64_t bits) {
  Column c(k);
  for (int i = 0; i < k; ++i) c[i] = (bits >> i) & 1 ? 1.0L : -1.0L;
  return c;
}

// rows x cols, row-major.
struct Dense {
  int rows = 0, cols = 0;
  std::vector<long double> a;
  Column column(int j) const {
    Column c(rows);
    for (int i = 0; i < rows; ++i) c[i] = a[static_cast<std::size_t>(i) * cols + j];
    return c;
  }
};

inline bool in_span(const Dense& m, std::uint64_t bits, const std::vector<int>& subset) {
  std::vector<Column> cols;
  for (int j : subset) cols.push_back(m.column(j));
  return lsq_residual(cols, sign_column(m.rows, bits)) < 1e-12L;
}

inline void next_subsets(int n, int s, std::vector<std::vector<int>>& out,
                         std::vector<int>& cur, int start) {
  if (static_cast<int>(cur.size()) == s) {
    out.push_back(cur);
    return;
  }
  for (int j = start; j < n; ++j) {
    cur.push_back(j);
    next_subsets(n, s, out, cur, j + 1);
    cur.pop_back();
  }
}

inline std::vector<std::vector<int>> subsets(int n, int s) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  next_subsets(n, s, out, cur, 0);
  return out;
}

// Smallest s such that every sign vector is spanned by some s columns, or
// -1 when some sign vector is outside the full span.
inline int min_access(const Dense& m) {
  int worst = 0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m.rows); ++bits) {
    int need = -1;
    for (int s = 0; s <= m.cols && need < 0; ++s)
      for (const auto& sub : subsets(m.cols, s))
        if (in_span(m, bits, sub)) {
          need = s;
          break;
        }
    if (need < 0) return -1;
    worst = std::max(worst, need);
  }
  return worst;
}

inline int count_pm1_in_span(const Dense& m) {
  std::vector<int> all(m.cols);
  for (int j = 0; j < m.cols; ++j) all[j] = j;
  int count = 0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m.rows); ++bits)
    count += in_span(m, bits, all);
  return count;
}

inline int hamming(std::uint64_t a, std::uint64_t b) {
  return __builtin_popcountll(a ^ b);
}

inline int covering_radius(int k, const std::vector<std::uint64_t>& code) {
  int radius = 0;
  for (std::uint64_t w = 0; w < (std::uint64_t{1} << k); ++w) {
    int best = k + 1;
    for (std::uint64_t c : code) best = std::min(best, hamming(w, c));
    radius = std::max(radius, best);
  }
  return radius;
}

inline long double binomial(int n, int k) {
  std::vector<std::vector<long double>> t(n + 1, std::vector<long double>(n + 1, 0));
  for (int i = 0; i <= n; ++i) {
    t[i][0] = 1;
    for (int j = 1; j <= i; ++j) t[i][j] = t[i - 1][j - 1] + (j <= i - 1 ? t[i - 1][j] : 0);
  }
  return t[n][k];
}

// Covering-code approximation, brute force: for each w, the best over
// signed codewords sigma*c at distance d <= r, and over every choice of
// min(d, r-b) corrected positions I, of min over (alpha, beta) of
// ||alpha sigma c + beta sum_{j in I} w_j e_j - w||^2. Returns max over w / k0.
inline long double covering_approx_epsilon(int k0, const std::vector<std::uint64_t>& code,
                                           int r, int b) {
  long double worst = 0;
  const std::uint64_t full = (std::uint64_t{1} << k0) - 1;
  for (std::uint64_t w = 0; w <= full; ++w) {
    const Column wc = sign_column(k0, w);
    long double best = std::numeric_limits<long double>::infinity();
    for (std::uint64_t c0 : code)
      for (std::uint64_t c : {c0, ~c0 & full}) {
        const int d = hamming(w, c);
        if (d > r) continue;
        std::vector<int> diff;
        for (int i = 0; i < k0; ++i)
          if (((w ^ c) >> i) & 1) diff.push_back(i);
        const int corrected = std::min(d, r - b);
        for (const auto& pick : subsets(d, corrected)) {
          Column e(k0, 0.0L);
          for (int p : pick) e[diff[p]] = wc[diff[p]];
          std::vector<Column> cols{sign_column(k0, c)};
          if (!pick.empty()) cols.push_back(e);
          best = std::min(best, lsq_residual(cols, wc));
        }
      }
    worst = std::max(worst, best);
  }
  return worst / k0;
}

// Random integer matrix with entries in [-range, range].
inline Dense random_dense(int rows, int cols, int range, std::mt19937_64& rng) {
  Dense m{rows, cols, std::vector<long double>(static_cast<std::size_t>(rows) * cols)};
  std::uniform_int_distribution<int> dist(-range, range);
  for (auto& x : m.a) x = dist(rng);
  return m;
}

}  // namespace oracle
