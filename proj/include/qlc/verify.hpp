#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qlc/covering.hpp"
#include "qlc/errors.hpp"
#include "qlc/matrix.hpp"
#include "qlc/parallel.hpp"
#include "qlc/protocol.hpp"
#include "qlc/sign_vector.hpp"
#include "qlc/span.hpp"

namespace qlc {

// Largest k for which a protocol is verified exhaustively.
inline constexpr int kMaxVerifyLength = 20;

struct VerificationReport {
  bool ok = false;
  std::uint64_t checked = 0;
  int max_access = 0;
  double max_residual = 0.0;
  std::optional<SignVector> witness;  // first failing w in bitmask order
};

// Checks every w in {+1,-1}^k: |supp(a_w)| <= ell and
// ||D a_w - w||_inf <= tol. Access "at most ell" passes; exactly ell is
// never required.
inline VerificationReport verify_protocol(const Protocol& p,
                                          double tol = kDefaultTolerance,
                                          unsigned threads = 1) {
  const int k = p.k();
  detail::require_budget(k <= kMaxVerifyLength,
                         "verify_protocol: exhaustive verification needs k <= " +
                             std::to_string(kMaxVerifyLength) + ", got k = " +
                             std::to_string(k));
  const std::uint64_t total = std::uint64_t{1} << k;
  struct Partial {
    std::uint64_t checked = 0;
    int max_access = 0;
    double max_residual = 0.0;
    std::optional<std::uint64_t> first_failure;
  };
  std::vector<Partial> partials(detail::chunk_count(total, threads));
  const Matrix& D = p.encoder();

  detail::parallel_chunks(total, threads, [&](unsigned chunk, std::uint64_t begin,
                                              std::uint64_t end) {
    Partial& out = partials[chunk];
    for (std::uint64_t bits = begin; bits < end; ++bits) {
      const SignVector w(k, bits);
      const SparseCombination a = p.decode(w);
      double residual = 0.0;
      const bool indices_ok =
          std::all_of(a.support().begin(), a.support().end(),
                      [&](int j) { return j < D.cols(); });
      if (indices_ok) {
        const auto approx = reconstruct(D, a);
        for (int i = 0; i < k; ++i)
          residual = std::max(residual, std::abs(approx[i] - w[i]));
      } else {
        residual = std::numeric_limits<double>::infinity();
      }
      ++out.checked;
      out.max_access = std::max(out.max_access, a.access());
      out.max_residual = std::max(out.max_residual, residual);
      const bool failed = a.access() > p.ell() || !(residual <= tol);
      if (failed && !out.first_failure) out.first_failure = bits;
    }
  });

  VerificationReport report;
  for (const Partial& part : partials) {
    report.checked += part.checked;
    report.max_access = std::max(report.max_access, part.max_access);
    report.max_residual = std::max(report.max_residual, part.max_residual);
    if (part.first_failure && !report.witness)
      report.witness = SignVector(k, *part.first_failure);
  }
  report.ok = report.max_access <= p.ell() && report.max_residual <= tol &&
              report.checked == total;
  return report;
}

// Smallest ell0 such that every w in {+1,-1}^k0 is spanned by some ell0
// columns of M. Throws if some w is outside the span of all columns.
inline int min_access_for_M(const Matrix& M, double tol = kDefaultTolerance) {
  const int k0 = M.rows(), n0 = M.cols();
  check_enumeration_budget(k0, kMaxVerifyLength);
  detail::require_budget(n0 <= 31, "min_access_for_M needs at most 31 columns");
  const std::uint64_t total = std::uint64_t{1} << k0;
  std::vector<char> covered(total, 0);
  std::uint64_t remaining = total;
  double work = 0.0;
  for (int s = 1; s <= n0; ++s) {
    work += std::exp(detail::log_binomial(n0, s)) * static_cast<double>(total);
    detail::require_budget(work <= 1e9,
                           "min_access_for_M: 2^k0 * sum C(n0, s) exceeds budget");
    for (std::uint32_t subset : detail::combinations(n0, s)) {
      const auto indices = detail::mask_to_indices(subset);
      const SpanTester tester(M.select_columns(indices), tol);
      if (tester.rank() < s) continue;  // dependent columns add nothing new at this size
      for (std::uint64_t bits = 0; bits < total; ++bits) {
        if (covered[bits]) continue;
        if (tester.solve(SignVector(k0, bits))) {
          covered[bits] = 1;
          --remaining;
        }
      }
      if (remaining == 0) return s;
    }
  }
  throw ContractError("min_access_for_M: some sign vector lies outside the column span");
}

struct SubspaceCapReport {
  int k = 0;
  int ell = 0;
  int trials = 0;
  std::uint64_t bound = 0;         // 2^ell
  std::uint64_t max_observed = 0;  // largest count over all trials
  int violations = 0;
};

// Entries are drawn as (rng() % 7) - 3 from mt19937_64 so runs are
// reproducible across standard libraries.
inline Matrix random_small_integer_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::vector<double> entries(static_cast<std::size_t>(rows) * cols);
  for (double& v : entries) v = static_cast<double>(static_cast<int>(rng() % 7) - 3);
  return Matrix(rows, cols, std::move(entries));
}

// Entries in {-1, +1}: every column is itself a sign vector.
inline Matrix random_sign_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::vector<double> entries(static_cast<std::size_t>(rows) * cols);
  for (double& v : entries) v = rng() & 1 ? 1.0 : -1.0;
  return Matrix(rows, cols, std::move(entries));
}

// Even trials draw entries in [-3, 3], odd trials entries in {-1, +1}; the
// latter put many sign vectors in the span and push counts toward 2^ell.
inline SubspaceCapReport subspace_cap_audit(int k, int ell, int trials,
                                            std::uint64_t seed) {
  detail::require(k >= 1 && k <= 12, "subspace_cap_audit: need 1 <= k <= 12");
  detail::require(ell >= 1 && ell < 63, "subspace_cap_audit: ell out of range");
  std::mt19937_64 rng(seed);
  SubspaceCapReport report{k, ell, trials, std::uint64_t{1} << ell, 0, 0};
  for (int t = 0; t < trials; ++t) {
    const Matrix A = t % 2 ? random_sign_matrix(k, ell, rng)
                           : random_small_integer_matrix(k, ell, rng);
    const std::uint64_t count = count_pm1_in_span(A, k);
    report.max_observed = std::max(report.max_observed, count);
    if (count > report.bound) ++report.violations;
  }
  return report;
}

}  // namespace qlc
