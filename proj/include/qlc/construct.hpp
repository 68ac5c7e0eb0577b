#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qlc/covering.hpp"
#include "qlc/errors.hpp"
#include "qlc/matrix.hpp"
#include "qlc/protocol.hpp"
#include "qlc/sign_vector.hpp"
#include "qlc/span.hpp"

namespace qlc {

inline constexpr int kMaxTrivialLength = 20;
inline constexpr int kMaxNonsystematicLength = 12;
inline constexpr int kMaxCoveringBlockLength = 14;
// 2^k0 * (number of candidate supports) for the custom block search.
inline constexpr double kMaxCustomSearchWork = 1u << 28;

// The parity scheme: store x and sum(x). A vector with q minus signs is
// 1 - 2*sum_{w_j=-1} e_j (parity +1 and q systematic reads), or with p plus
// signs -1 + 2*sum_{w_j=+1} e_j. The cheaper side wins; ties go to parity +1.
inline BlockSpec trivial_block(int k) {
  check_enumeration_budget(k, kMaxTrivialLength);
  const Matrix ones(k, 1, std::vector<double>(k, 1.0));
  Matrix M = Matrix::identity(k).hconcat(ones);
  std::vector<SparseCombination> table;
  table.reserve(std::size_t{1} << k);
  for (const SignVector& w : SignVectorRange(k)) {
    const int plus = w.count_plus();
    const int minus = k - plus;
    const int parity_sign = minus <= plus ? 1 : -1;
    std::vector<int> support;
    std::vector<double> coeffs;
    for (int j = 0; j < k; ++j)
      if (w[j] != parity_sign) {
        support.push_back(j);
        coeffs.push_back(2.0 * w[j]);
      }
    support.push_back(k);
    coeffs.push_back(parity_sign);
    table.emplace_back(std::move(support), std::move(coeffs));
  }
  return BlockSpec(k / 2 + 1, std::move(M), std::move(table));
}

inline Protocol trivial_protocol(int k) {
  return Protocol::from_blocks(std::make_shared<const BlockSpec>(trivial_block(k)), 1, 1);
}

namespace detail {

struct SignedCodeword {
  int index = 0;    // position in the antipodal half
  int sign = 1;     // the codeword used is sign * half[index]
  int distance = 0;
};

// Nearest element of {+c, -c : c in half}; ties go to the smaller bitmask.
inline SignedCodeword nearest_signed_codeword(const std::vector<SignVector>& half,
                                              const SignVector& w) {
  SignedCodeword best{0, 1, w.length() + 1};
  std::uint64_t best_bits = 0;
  for (int h = 0; h < static_cast<int>(half.size()); ++h) {
    for (int sign : {1, -1}) {
      const SignVector c = sign > 0 ? half[h] : -half[h];
      const int d = w.hamming_distance(c);
      if (d < best.distance || (d == best.distance && c.bits() < best_bits)) {
        best = {h, sign, d};
        best_bits = c.bits();
      }
    }
  }
  return best;
}

inline Matrix columns_from(const std::vector<SignVector>& words) {
  const int k0 = words.front().length();
  std::vector<double> entries(static_cast<std::size_t>(k0) * words.size());
  for (std::size_t j = 0; j < words.size(); ++j)
    for (int i = 0; i < k0; ++i) entries[i * words.size() + j] = words[j][i];
  return Matrix(k0, static_cast<int>(words.size()), std::move(entries));
}

struct DecoderSearch {
  std::vector<SparseCombination> table;
  std::optional<SignVector> witness;  // first uncovered w, if any
};

// For every w, the first support in (size, lexicographic) order whose
// columns span w, up to max_size columns.
inline DecoderSearch search_decoder_table(const Matrix& M, int max_size,
                                          double tol = kDefaultTolerance) {
  const int k0 = M.rows(), n0 = M.cols();
  check_enumeration_budget(k0, kMaxEnumerationLength);
  detail::require_budget(n0 <= 31, "support search needs at most 31 columns");
  double work = 0.0;
  for (int s = 1; s <= std::min(max_size, n0); ++s)
    work += std::exp(log_binomial(n0, s));
  detail::require_budget(work * std::ldexp(1.0, k0) <= kMaxCustomSearchWork,
                         "support search 2^k0 * sum C(n0, s) exceeds budget");

  const std::size_t total = std::size_t{1} << k0;
  std::vector<std::optional<SparseCombination>> found(total);
  std::size_t remaining = total;
  for (int s = 1; s <= std::min(max_size, n0) && remaining > 0; ++s) {
    for (std::uint32_t subset : combinations(n0, s)) {
      const auto indices = mask_to_indices(subset);
      const SpanTester tester(M.select_columns(indices), tol);
      for (std::uint64_t bits = 0; bits < total; ++bits) {
        if (found[bits]) continue;
        if (auto c = tester.solve(SignVector(k0, bits))) {
          found[bits] = SparseCombination(indices, *c);
          --remaining;
        }
      }
      if (remaining == 0) break;
    }
  }
  DecoderSearch out;
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    if (!found[bits]) {
      out.witness = SignVector(k0, bits);
      return out;
    }
    out.table.push_back(std::move(*found[bits]));
  }
  return out;
}

}  // namespace detail

// M's columns are one representative of each antipodal class of the cube;
// every w is +/- a column.
inline BlockSpec nonsystematic_block(int k0) {
  check_enumeration_budget(k0, kMaxNonsystematicLength);
  const std::uint64_t half_size = std::uint64_t{1} << (k0 - 1);
  std::vector<SignVector> half;
  for (std::uint64_t c = 0; c < half_size; ++c) half.emplace_back(k0, c);
  std::vector<SparseCombination> table;
  for (const SignVector& w : SignVectorRange(k0)) {
    const bool top = (w.bits() >> (k0 - 1)) & 1;
    const int column = static_cast<int>(top ? (-w).bits() : w.bits());
    table.emplace_back(std::vector<int>{column},
                       std::vector<double>{top ? -1.0 : 1.0});
  }
  return BlockSpec(1, detail::columns_from(half), std::move(table));
}

// M = (I_k0 | B) with B the antipodal half of the code. A block w is decoded
// as the nearest signed codeword plus +/-2 corrections on the coordinates
// where they differ, so at most r + 1 reads.
inline BlockSpec covering_code_block(const CoveringCode& code) {
  const int k0 = code.k0();
  check_enumeration_budget(k0, kMaxCoveringBlockLength);
  const auto half = antipodal_half(code).half;
  Matrix M = Matrix::identity(k0).hconcat(detail::columns_from(half));
  std::vector<SparseCombination> table;
  for (const SignVector& w : SignVectorRange(k0)) {
    const auto near = detail::nearest_signed_codeword(half, w);
    const SignVector c = near.sign > 0 ? half[near.index] : -half[near.index];
    std::vector<int> support;
    std::vector<double> coeffs;
    for (int j = 0; j < k0; ++j)
      if (w[j] != c[j]) {
        support.push_back(j);
        coeffs.push_back(2.0 * w[j]);
      }
    support.push_back(k0 + near.index);
    coeffs.push_back(near.sign);
    table.emplace_back(std::move(support), std::move(coeffs));
  }
  return BlockSpec(code.radius() + 1, std::move(M), std::move(table));
}

// Uses M as a block matrix if every w is spanned by at most ell0 columns.
inline BlockSpec custom_block(const Matrix& M, int ell0) {
  detail::require(ell0 >= 1, "custom_block: ell0 must be positive");
  auto search = detail::search_decoder_table(M, ell0);
  if (search.witness)
    throw ContractError("not a valid block construction at ell0 = " +
                        std::to_string(ell0) + ": w = " +
                        search.witness->to_string() +
                        " is not spanned by any " + std::to_string(ell0) +
                        " columns");
  return BlockSpec(ell0, M, std::move(search.table));
}

// The 5 x 6 block matrix: an all-ones column followed by 1 - 4 e_i, i = 1..5.
inline Matrix five_by_six_matrix() {
  return Matrix::from_rows({{1, -3, 1, 1, 1, 1},
                            {1, 1, -3, 1, 1, 1},
                            {1, 1, 1, -3, 1, 1},
                            {1, 1, 1, 1, -3, 1},
                            {1, 1, 1, 1, 1, -3}});
}

// D = I_m (x) M; the decoder concatenates per-block decoders.
inline Protocol expand_blocks(const BlockSpec& spec, int m) {
  return Protocol::from_blocks(std::make_shared<const BlockSpec>(spec), m, m);
}

}  // namespace qlc
