#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlc/errors.hpp"
#include "qlc/matrix.hpp"
#include "qlc/sign_vector.hpp"

namespace qlc {

// A decoder column: which encoded symbols to read and how to combine them.
class SparseCombination {
 public:
  SparseCombination() = default;

  // Sorts by index and drops zero coefficients. Indices must be distinct.
  SparseCombination(std::vector<int> support, std::vector<double> coefficients) {
    detail::require(support.size() == coefficients.size(),
                    "support and coefficient counts differ");
    std::vector<std::size_t> order(support.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return support[a] < support[b]; });
    for (std::size_t idx : order) {
      detail::require(support[idx] >= 0, "negative support index");
      detail::require(support_.empty() || support_.back() != support[idx],
                      "duplicate support index " + std::to_string(support[idx]));
      if (coefficients[idx] == 0.0) continue;
      support_.push_back(support[idx]);
      coefficients_.push_back(coefficients[idx]);
    }
  }

  const std::vector<int>& support() const { return support_; }
  const std::vector<double>& coefficients() const { return coefficients_; }
  int access() const { return static_cast<int>(support_.size()); }

  SparseCombination shifted(int offset) const {
    SparseCombination out = *this;
    for (int& s : out.support_) s += offset;
    return out;
  }

  void append(const SparseCombination& tail) {
    detail::require(tail.support_.empty() || support_.empty() ||
                        tail.support_.front() > support_.back(),
                    "appended support must follow existing indices");
    support_.insert(support_.end(), tail.support_.begin(), tail.support_.end());
    coefficients_.insert(coefficients_.end(), tail.coefficients_.begin(),
                         tail.coefficients_.end());
  }

  friend bool operator==(const SparseCombination&, const SparseCombination&) = default;

 private:
  std::vector<int> support_;
  std::vector<double> coefficients_;
};

// encoder * a, where a is the dense expansion of the combination.
inline std::vector<double> reconstruct(const Matrix& encoder,
                                       const SparseCombination& a) {
  std::vector<double> out(encoder.rows(), 0.0);
  for (std::size_t s = 0; s < a.support().size(); ++s) {
    const int j = a.support()[s];
    detail::require(j < encoder.cols(), "support index beyond encoder columns");
    for (int i = 0; i < encoder.rows(); ++i)
      out[i] += encoder(i, j) * a.coefficients()[s];
  }
  return out;
}

inline double residual_squared(const Matrix& encoder, const SignVector& w,
                               const SparseCombination& a) {
  const auto approx = reconstruct(encoder, a);
  double sum = 0.0;
  for (int i = 0; i < w.length(); ++i) {
    const double d = approx[i] - w[i];
    sum += d * d;
  }
  return sum;
}

// (redundancy ratio, access ratio) = (n/k, ell/k).
struct RatePoint {
  double nu = 0.0;
  double lambda = 0.0;
};

// One block of a block construction: a k0 x n0 matrix M and a decoder for
// every length-k0 sign vector (indexed by bitmask) using at most ell0 columns.
struct BlockSpec {
  int k0 = 0;
  int n0 = 0;
  int ell0 = 0;
  Matrix M;
  std::vector<SparseCombination> decoder;

  BlockSpec() = default;
  BlockSpec(int ell0_in, Matrix m, std::vector<SparseCombination> table)
      : k0(m.rows()), n0(m.cols()), ell0(ell0_in), M(std::move(m)),
        decoder(std::move(table)) {
    detail::require(k0 <= kMaxEnumerationLength, "block length too large");
    detail::require(decoder.size() == (std::size_t{1} << k0),
                    "block decoder must have one entry per sign vector");
    detail::require(ell0 >= 1, "ell0 must be positive");
  }

  const SparseCombination& decode(const SignVector& w) const {
    return decoder[w.bits()];
  }

  RatePoint rate_point() const {
    return {static_cast<double>(n0) / k0, static_cast<double>(ell0) / k0};
  }
};

// m blocks of a BlockSpec; blocks with index >= kept are not stored.
struct BlockLayout {
  std::shared_ptr<const BlockSpec> spec;
  int blocks = 1;
  int kept = 1;
};

// Encoder D (k x n) plus a decoder w -> a with |supp(a)| <= ell.
class Protocol {
 public:
  static Protocol from_table(Matrix encoder, int ell,
                             std::vector<SparseCombination> table) {
    const int k = encoder.rows();
    detail::require(k <= kMaxEnumerationLength,
                    "tabulated protocols need k <= 30");
    detail::require(table.size() == (std::size_t{1} << k),
                    "decoder table must have 2^k entries");
    Protocol p(std::move(encoder), ell);
    p.table_ = std::make_shared<const std::vector<SparseCombination>>(std::move(table));
    return p;
  }

  static Protocol from_blocks(std::shared_ptr<const BlockSpec> spec, int blocks,
                              int kept) {
    detail::require(spec != nullptr, "null block spec");
    detail::require(blocks >= 1 && kept >= 0 && kept <= blocks,
                    "invalid block counts");
    detail::require(blocks * spec->k0 <= kMaxSignVectorLength,
                    "m * k0 must not exceed 64");
    detail::require(kept >= 1, "at least one block must be kept");
    Matrix encoder = kron_identity(kept, spec->M);
    if (kept < blocks) {
      // Discarded blocks are rows with no stored symbol.
      std::vector<double> entries(static_cast<std::size_t>(blocks) * spec->k0 *
                                      encoder.cols(),
                                  0.0);
      std::copy(encoder.entries().begin(), encoder.entries().end(), entries.begin());
      encoder = Matrix(blocks * spec->k0, encoder.cols(), std::move(entries));
    }
    Protocol p(std::move(encoder), kept * spec->ell0);
    p.layout_ = BlockLayout{std::move(spec), blocks, kept};
    return p;
  }

  int k() const { return encoder_.rows(); }
  int n() const { return encoder_.cols(); }
  int ell() const { return ell_; }
  const Matrix& encoder() const { return encoder_; }
  const std::optional<BlockLayout>& layout() const { return layout_; }
  bool has_table() const { return table_ != nullptr; }

  SparseCombination decode(const SignVector& w) const {
    detail::require(w.length() == k(), "sign vector length does not match k");
    if (table_) return (*table_)[w.bits()];
    const BlockSpec& spec = *layout_->spec;
    SparseCombination out;
    for (int b = 0; b < layout_->kept; ++b)
      out.append(spec.decode(w.slice(b * spec.k0, spec.k0)).shifted(b * spec.n0));
    return out;
  }

  RatePoint rate_point() const {
    return {static_cast<double>(n()) / k(), static_cast<double>(ell_) / k()};
  }

  // Same encoder with a different access budget.
  Protocol with_ell(int ell) const {
    Protocol p = *this;
    p.ell_ = ell;
    return p;
  }

 private:
  Protocol(Matrix encoder, int ell) : encoder_(std::move(encoder)), ell_(ell) {
    detail::require(ell_ >= 1, "ell must be positive");
  }

  Matrix encoder_;
  int ell_;
  std::shared_ptr<const std::vector<SparseCombination>> table_;
  std::optional<BlockLayout> layout_;
};

inline RatePoint rate_point(const Protocol& p) { return p.rate_point(); }
inline RatePoint rate_point(const BlockSpec& spec) { return spec.rate_point(); }

}  // namespace qlc
