#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qlc/construct.hpp"
#include "qlc/covering.hpp"
#include "qlc/errors.hpp"
#include "qlc/matrix.hpp"
#include "qlc/parallel.hpp"
#include "qlc/protocol.hpp"
#include "qlc/sign_vector.hpp"

namespace qlc {

inline constexpr int kMaxMeasureLength = 16;
inline constexpr int kMaxKsvdLength = 12;

// A protocol whose decoder reconstructs w only up to
// ||w - D a_w||^2 <= epsilon_bound * k.
struct ApproxProtocol {
  Protocol protocol;
  double epsilon_bound = 0.0;
  std::optional<double> epsilon_measured;
};

// max over w of ||w - M a_w||^2 for one block.
inline double block_max_residual(const BlockSpec& spec) {
  double worst = 0.0;
  for (const SignVector& w : SignVectorRange(spec.k0))
    worst = std::max(worst, residual_squared(spec.M, w, spec.decode(w)));
  return worst;
}

// Exhaustive max over w of ||w - D a_w||^2 / k.
inline double measure_epsilon_exhaustive(const Protocol& p, unsigned threads = 1) {
  const int k = p.k();
  check_enumeration_budget(k, kMaxMeasureLength);
  const std::uint64_t total = std::uint64_t{1} << k;
  std::vector<double> worst(detail::chunk_count(total, threads), 0.0);
  detail::parallel_chunks(total, threads, [&](unsigned c, std::uint64_t begin,
                                              std::uint64_t end) {
    for (std::uint64_t bits = begin; bits < end; ++bits) {
      const SignVector w(k, bits);
      worst[c] = std::max(worst[c], residual_squared(p.encoder(), w, p.decode(w)));
    }
  });
  return *std::max_element(worst.begin(), worst.end()) / k;
}

// Worst-case epsilon. Block protocols decompose: blocks are decoded
// independently, so the maximum is the sum of per-block maxima, and a
// discarded block always loses ||w_i||^2 = k0.
inline double measure_epsilon(const Protocol& p, unsigned threads = 1) {
  if (const auto& layout = p.layout()) {
    const BlockSpec& spec = *layout->spec;
    const double per_block = block_max_residual(spec);
    const double total = layout->kept * per_block +
                         static_cast<double>(layout->blocks - layout->kept) * spec.k0;
    return total / p.k();
  }
  return measure_epsilon_exhaustive(p, threads);
}

namespace detail {

inline int checked_radius_for_approx(const CoveringCode& code) {
  const int r = code.radius();
  require(2 * r <= code.k0(),
          "approximate covering schemes need covering radius r <= k0/2, got r = " +
              std::to_string(r));
  return r;
}

}  // namespace detail

// Covering-code block that corrects only r - b of the differing coordinates.
// The code node gets coefficient sign * alpha and each corrected coordinate
// j gets beta * w_j, with alpha = (k0-r-b)/(k0-r+b) and beta = alpha + 1, so
// corrected coordinates are exact. Worst case per block (distance r):
// (k0-r)(1-alpha)^2 + b(1+alpha)^2 = 4b(k0-r)/(k0-r+b).
inline ApproxProtocol approx_covering(const CoveringCode& code, int b, int m = 1) {
  const int k0 = code.k0();
  check_enumeration_budget(k0, kMaxCoveringBlockLength);
  const int r = code.radius();
  detail::require(r >= 1, "approx_covering: covering radius must be at least 1");
  detail::require(b >= 0 && b <= r - 1,
                  "approx_covering: b must lie in [0, r-1] = [0, " +
                      std::to_string(r - 1) + "], got " + std::to_string(b));
  detail::checked_radius_for_approx(code);
  const double alpha = static_cast<double>(k0 - r - b) / (k0 - r + b);
  const double beta = alpha + 1.0;
  const auto half = antipodal_half(code).half;
  Matrix M = Matrix::identity(k0).hconcat(detail::columns_from(half));
  std::vector<SparseCombination> table;
  for (const SignVector& w : SignVectorRange(k0)) {
    const auto near = detail::nearest_signed_codeword(half, w);
    const SignVector c = near.sign > 0 ? half[near.index] : -half[near.index];
    std::vector<int> support;
    std::vector<double> coeffs;
    for (int j = 0; j < k0 && static_cast<int>(support.size()) < r - b; ++j)
      if (w[j] != c[j]) {
        support.push_back(j);
        coeffs.push_back(beta * w[j]);
      }
    support.push_back(k0 + near.index);
    coeffs.push_back(near.sign * alpha);
    table.emplace_back(std::move(support), std::move(coeffs));
  }
  const BlockSpec spec(r - b + 1, std::move(M), std::move(table));
  ApproxProtocol out{expand_blocks(spec, m),
                     4.0 * b * (k0 - r) / (static_cast<double>(k0) * (k0 - r + b)),
                     std::nullopt};
  out.epsilon_measured = measure_epsilon(out.protocol);
  return out;
}

// Stores only the code nodes; each block reads one node with coefficient
// sign * (k0 - 2r)/k0, the least-squares scale at distance r.
inline ApproxProtocol approx_covering_codeonly(const CoveringCode& code, int m = 1) {
  const int k0 = code.k0();
  check_enumeration_budget(k0, kMaxCoveringBlockLength);
  const int r = detail::checked_radius_for_approx(code);
  const double alpha = static_cast<double>(k0 - 2 * r) / k0;
  detail::require(alpha > 0.0, "approx_covering_codeonly: need r < k0/2");
  const auto half = antipodal_half(code).half;
  std::vector<SparseCombination> table;
  for (const SignVector& w : SignVectorRange(k0)) {
    const auto near = detail::nearest_signed_codeword(half, w);
    table.emplace_back(std::vector<int>{near.index},
                       std::vector<double>{near.sign * alpha});
  }
  const BlockSpec spec(1, detail::columns_from(half), std::move(table));
  ApproxProtocol out{expand_blocks(spec, m),
                     4.0 * r * (k0 - r) / (static_cast<double>(k0) * k0), std::nullopt};
  out.epsilon_measured = measure_epsilon(out.protocol);
  return out;
}

// Keeps the first m - floor(eps m) blocks of an m-block construction; the
// trailing blocks are neither stored nor read.
inline ApproxProtocol discard_blocks(const BlockSpec& spec, double eps, int m) {
  detail::require(eps > 0.0 && eps < 1.0, "discard_blocks: eps must lie in (0, 1)");
  detail::require(m >= 1, "discard_blocks: m must be positive");
  // The small offset keeps products such as 0.29 * 100 from flooring to 28.
  const int dropped = static_cast<int>(std::floor(eps * m + 1e-9));
  const int kept = m - dropped;
  detail::require(kept >= 1, "discard_blocks: every block would be discarded");
  const double bound =
      (static_cast<double>(dropped) * spec.k0 + kept * block_max_residual(spec)) /
      (static_cast<double>(m) * spec.k0);
  ApproxProtocol out{
      Protocol::from_blocks(std::make_shared<const BlockSpec>(spec), m, kept), bound,
      std::nullopt};
  out.epsilon_measured = measure_epsilon(out.protocol);
  return out;
}

// ---------------------------------------------------------------------------
// Orthogonal matching pursuit

// Greedy sparse coding of target over the columns of D: pick the unused
// column with the largest normalized correlation with the residual (ties to
// the lowest index), refit least squares on the chosen support, and stop at
// ell atoms or when ||residual|| <= tol.
inline SparseCombination omp(const Eigen::MatrixXd& D, const Eigen::VectorXd& target,
                             int ell, double tol = 1e-12) {
  detail::require(D.rows() == target.size(), "omp: dimension mismatch");
  detail::require(ell >= 0 && ell <= D.cols(), "omp: need 0 <= ell <= n");
  const Eigen::VectorXd norms = D.colwise().norm();
  for (Eigen::Index j = 0; j < D.cols(); ++j)
    detail::require(norms(j) > 0.0, "omp: dictionary column " + std::to_string(j) +
                                        " is zero");
  std::vector<int> selected;
  std::vector<char> used(D.cols(), 0);
  Eigen::VectorXd residual = target;
  Eigen::VectorXd coeffs;
  while (static_cast<int>(selected.size()) < ell && residual.norm() > tol) {
    const Eigen::VectorXd scores =
        (D.transpose() * residual).cwiseAbs().cwiseQuotient(norms);
    int best = -1;
    for (Eigen::Index j = 0; j < D.cols(); ++j) {
      if (used[j]) continue;
      if (best < 0 || scores(j) > scores(best) * (1.0 + 1e-12) + 1e-15)
        best = static_cast<int>(j);
    }
    if (best < 0 || scores(best) <= 1e-14) break;
    used[best] = 1;
    selected.push_back(best);
    Eigen::MatrixXd sub(D.rows(), static_cast<Eigen::Index>(selected.size()));
    for (std::size_t s = 0; s < selected.size(); ++s) sub.col(s) = D.col(selected[s]);
    coeffs = sub.colPivHouseholderQr().solve(target);
    residual = target - sub * coeffs;
  }
  std::vector<double> values(coeffs.data(), coeffs.data() + coeffs.size());
  return SparseCombination(selected, values);
}

inline SparseCombination omp(const Matrix& D, const SignVector& w, int ell,
                             double tol = 1e-12) {
  detail::require(D.rows() == w.length(), "omp: dimension mismatch");
  const auto values = w.to_doubles();
  return omp(D.to_eigen(), Eigen::Map<const Eigen::VectorXd>(values.data(), w.length()),
             ell, tol);
}

// ---------------------------------------------------------------------------
// K-SVD on W = all sign vectors of length k

struct KsvdOptions {
  int k = 4;
  int n = 8;
  int ell = 1;
  int iterations = 30;
  std::uint64_t seed = 0;
  std::optional<Matrix> initial_dictionary;  // k x n; columns are normalized
  double convergence_tol = 1e-10;
  unsigned threads = 1;
};

// Objective ||W - DA||_F^2 around one dictionary-update stage.
struct KsvdStage {
  int iteration = 0;
  double before = 0.0;
  double after = 0.0;
};

struct KsvdResult {
  Matrix dictionary;
  std::vector<SparseCombination> table;  // indexed by bitmask of w
  double epsilon_measured = 0.0;         // max_w ||w - D a_w||^2 / k
  std::vector<KsvdStage> stages;
  int iterations_run = 0;

  ApproxProtocol to_approx_protocol(int ell) const {
    return {Protocol::from_table(dictionary, ell, table), epsilon_measured,
            epsilon_measured};
  }
};

namespace detail {

struct SparseColumn {
  std::vector<int> index;
  std::vector<double> value;
};

inline Eigen::VectorXd sign_column(int k, std::uint64_t bits) {
  Eigen::VectorXd v(k);
  for (int i = 0; i < k; ++i) v(i) = (bits >> i) & 1 ? 1.0 : -1.0;
  return v;
}

// Uniform sample of `count` distinct values from [0, size), Fisher-Yates on
// raw mt19937_64 output.
inline std::vector<std::uint64_t> sample_distinct(std::uint64_t size, int count,
                                                  std::mt19937_64& rng) {
  std::vector<std::uint64_t> pool(size);
  std::iota(pool.begin(), pool.end(), std::uint64_t{0});
  for (int i = 0; i < count; ++i) {
    const std::uint64_t j = i + rng() % (size - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

}  // namespace detail

inline KsvdResult ksvd(const KsvdOptions& opt) {
  const int k = opt.k, n = opt.n, ell = opt.ell;
  check_enumeration_budget(k, kMaxKsvdLength);
  const std::uint64_t total = std::uint64_t{1} << k;
  detail::require(n >= 1 && static_cast<std::uint64_t>(n) < total,
                  "ksvd: need 1 <= n < 2^k");
  detail::require(ell >= 1 && ell <= n, "ksvd: need 1 <= ell <= n");
  detail::require(opt.iterations >= 0, "ksvd: iterations must be nonnegative");

  Eigen::MatrixXd W(k, static_cast<Eigen::Index>(total));
  for (std::uint64_t c = 0; c < total; ++c) W.col(c) = detail::sign_column(k, c);

  Eigen::MatrixXd D(k, n);
  if (opt.initial_dictionary) {
    detail::require(opt.initial_dictionary->rows() == k &&
                        opt.initial_dictionary->cols() == n,
                    "ksvd: initial dictionary must be k x n");
    D = opt.initial_dictionary->to_eigen();
  } else {
    std::mt19937_64 rng(opt.seed);
    // Atoms c and -c are interchangeable, so sample distinct antipodal
    // classes whenever there are enough of them.
    const std::uint64_t classes = total / 2;
    const bool by_class = static_cast<std::uint64_t>(n) <= classes;
    const auto picks = detail::sample_distinct(by_class ? classes : total, n, rng);
    for (int j = 0; j < n; ++j) D.col(j) = W.col(picks[j]);
  }
  for (int j = 0; j < n; ++j) {
    const double norm = D.col(j).norm();
    detail::require(norm > 0.0, "ksvd: initial dictionary has a zero column");
    D.col(j) /= norm;
  }

  std::vector<detail::SparseColumn> codes(total);
  auto sparse_code = [&] {
    detail::parallel_chunks(total, opt.threads, [&](unsigned, std::uint64_t begin,
                                                    std::uint64_t end) {
      for (std::uint64_t c = begin; c < end; ++c) {
        const SparseCombination a = omp(D, W.col(c), ell);
        codes[c] = {a.support(), a.coefficients()};
      }
    });
  };
  auto residual_matrix = [&] {
    Eigen::MatrixXd R = W;
    for (std::uint64_t c = 0; c < total; ++c)
      for (std::size_t s = 0; s < codes[c].index.size(); ++s)
        R.col(c) -= D.col(codes[c].index[s]) * codes[c].value[s];
    return R;
  };

  KsvdResult result;
  double previous = std::numeric_limits<double>::infinity();
  for (int it = 0; it < opt.iterations; ++it) {
    sparse_code();
    Eigen::MatrixXd R = residual_matrix();
    KsvdStage stage{it, R.squaredNorm(), 0.0};

    for (int j = 0; j < n; ++j) {
      // Columns of W whose code uses atom j, with the position inside the code.
      std::vector<std::pair<std::uint64_t, std::size_t>> users;
      for (std::uint64_t c = 0; c < total; ++c)
        for (std::size_t s = 0; s < codes[c].index.size(); ++s)
          if (codes[c].index[s] == j) users.emplace_back(c, s);

      if (users.empty()) {
        Eigen::Index worst = 0;
        R.colwise().squaredNorm().maxCoeff(&worst);
        D.col(j) = W.col(worst).normalized();
        continue;
      }

      const auto m = static_cast<Eigen::Index>(users.size());
      Eigen::MatrixXd E(k, m);
      Eigen::VectorXd old_coeffs(m);
      for (Eigen::Index u = 0; u < m; ++u) {
        const auto [c, s] = users[u];
        old_coeffs(u) = codes[c].value[s];
        E.col(u) = R.col(c) + D.col(j) * old_coeffs(u);
      }
      const double old_error = (E - D.col(j) * old_coeffs.transpose()).squaredNorm();

      // Leading singular pair by power iteration, warm-started at the atom.
      Eigen::VectorXd atom = D.col(j);
      if ((E.transpose() * atom).norm() == 0.0) {
        Eigen::Index largest = 0;
        const double norm = E.colwise().norm().maxCoeff(&largest);
        if (norm > 0.0) atom = E.col(largest) / norm;
      }
      for (int p = 0; p < 200; ++p) {
        Eigen::VectorXd next = E * (E.transpose() * atom);
        const double norm = next.norm();
        if (norm == 0.0) break;
        next /= norm;
        const double change = (next - atom).norm();
        atom = next;
        if (change <= 1e-12) break;
      }
      const Eigen::VectorXd new_coeffs = E.transpose() * atom;
      const double new_error = (E - atom * new_coeffs.transpose()).squaredNorm();
      if (new_error > old_error) continue;

      D.col(j) = atom;
      for (Eigen::Index u = 0; u < m; ++u) {
        const auto [c, s] = users[u];
        codes[c].value[s] = new_coeffs(u);
        R.col(c) = E.col(u) - atom * new_coeffs(u);
      }
    }
    stage.after = R.squaredNorm();
    result.stages.push_back(stage);
    result.iterations_run = it + 1;
    if (previous - stage.after < opt.convergence_tol) break;
    previous = stage.after;
  }

  // Final decoder: per column, the better of the updated code and a fresh
  // OMP code against the final dictionary.
  std::vector<detail::SparseColumn> updated = codes;
  const Eigen::MatrixXd R_updated = residual_matrix();
  sparse_code();
  const Eigen::MatrixXd R_fresh = residual_matrix();
  double worst = 0.0;
  for (std::uint64_t c = 0; c < total; ++c) {
    const bool keep_updated = result.iterations_run > 0 &&
                              R_updated.col(c).squaredNorm() < R_fresh.col(c).squaredNorm();
    const auto& chosen = keep_updated ? updated[c] : codes[c];
    worst = std::max(worst, keep_updated ? R_updated.col(c).squaredNorm()
                                         : R_fresh.col(c).squaredNorm());
    result.table.emplace_back(chosen.index, chosen.value);
  }
  result.dictionary = Matrix::from_eigen(D);
  result.epsilon_measured = worst / k;
  return result;
}

}  // namespace qlc
