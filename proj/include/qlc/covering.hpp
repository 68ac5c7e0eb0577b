#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qlc/errors.hpp"
#include "qlc/sign_vector.hpp"

namespace qlc {

inline constexpr int kMaxCoveringRadiusLength = 20;
inline constexpr int kMaxGreedyCodeLength = 16;
inline constexpr int kMaxDesignGroundSet = 16;

namespace detail {

// Distance from every point of {+1,-1}^k0 to the nearest codeword
// (multi-source breadth-first search over the hypercube).
inline std::vector<std::uint8_t> distance_to_code(
    int k0, const std::vector<std::uint64_t>& codewords) {
  const std::size_t size = std::size_t{1} << k0;
  std::vector<std::uint8_t> dist(size, 0xFF);
  std::vector<std::uint32_t> frontier;
  for (std::uint64_t c : codewords) {
    if (dist[c] != 0) {
      dist[c] = 0;
      frontier.push_back(static_cast<std::uint32_t>(c));
    }
  }
  std::uint8_t level = 0;
  while (!frontier.empty()) {
    std::vector<std::uint32_t> next;
    ++level;
    for (std::uint32_t v : frontier)
      for (int i = 0; i < k0; ++i) {
        const std::uint32_t u = v ^ (std::uint32_t{1} << i);
        if (dist[u] == 0xFF) {
          dist[u] = level;
          next.push_back(u);
        }
      }
    frontier = std::move(next);
  }
  return dist;
}

inline std::vector<std::uint64_t> error_patterns(int k0, int radius) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t e = 0; e < (std::uint64_t{1} << k0); ++e)
    if (std::popcount(e) <= radius) out.push_back(e);
  return out;
}

}  // namespace detail

inline int covering_radius(const std::vector<SignVector>& codewords) {
  detail::require(!codewords.empty(), "covering_radius: empty code");
  const int k0 = codewords.front().length();
  check_enumeration_budget(k0, kMaxCoveringRadiusLength);
  std::vector<std::uint64_t> bits;
  for (const auto& c : codewords) {
    detail::require(c.length() == k0, "codewords must share one length");
    bits.push_back(c.bits());
  }
  const auto dist = detail::distance_to_code(k0, bits);
  return *std::max_element(dist.begin(), dist.end());
}

// A code over {+1,-1}^k0 with its covering radius.
class CoveringCode {
 public:
  explicit CoveringCode(std::vector<SignVector> codewords) {
    detail::require(!codewords.empty(), "covering code must be nonempty");
    std::sort(codewords.begin(), codewords.end());
    detail::require(std::adjacent_find(codewords.begin(), codewords.end()) ==
                        codewords.end(),
                    "covering code has duplicate codewords");
    radius_ = covering_radius(codewords);
    k0_ = codewords.front().length();
    codewords_ = std::move(codewords);
  }

  static CoveringCode full_cube(int k0) {
    check_enumeration_budget(k0, kMaxCoveringRadiusLength);
    std::vector<SignVector> words;
    for (const auto& w : SignVectorRange(k0)) words.push_back(w);
    return CoveringCode(std::move(words));
  }

  // {all-ones, all-minus-ones}
  static CoveringCode repetition(int k0) {
    return CoveringCode({SignVector(k0, 0), SignVector::all_ones(k0)});
  }

  int k0() const { return k0_; }
  int radius() const { return radius_; }
  const std::vector<SignVector>& codewords() const { return codewords_; }
  std::size_t size() const { return codewords_.size(); }

  bool contains(const SignVector& w) const {
    return std::binary_search(codewords_.begin(), codewords_.end(), w);
  }

  bool complement_closed() const {
    return std::all_of(codewords_.begin(), codewords_.end(),
                       [&](const SignVector& c) { return contains(-c); });
  }

 private:
  int k0_ = 0;
  int radius_ = 0;
  std::vector<SignVector> codewords_;
};

// One representative of every {c, -c} pair occurring in the parent code.
struct AntipodalHalf {
  std::vector<SignVector> half;  // sorted by bitmask
  std::size_t size() const { return half.size(); }
};

// Keeps the smaller bitmask of each pair; unpaired codewords are kept as-is.
inline AntipodalHalf antipodal_half(const CoveringCode& code) {
  AntipodalHalf out;
  for (const auto& c : code.codewords()) {
    const SignVector neg = -c;
    if (!code.contains(neg) || c.bits() < neg.bits()) out.half.push_back(c);
  }
  return out;
}

// Greedy complement-closed covering code of radius <= r. Each step adds the
// pair {c, -c} covering the most uncovered points; ties go to the smaller
// bitmask. Lazy evaluation is exact because gains only shrink.
inline CoveringCode greedy_covering_code(int k0, int r) {
  check_enumeration_budget(k0, kMaxGreedyCodeLength);
  detail::require(r >= 0 && r <= k0, "greedy_covering_code: need 0 <= r <= k0");
  const std::uint64_t size = std::uint64_t{1} << k0;
  const std::uint64_t mask = low_mask(k0);
  const auto patterns = detail::error_patterns(k0, r);
  std::vector<char> covered(size, 0);
  std::uint64_t remaining = size;

  auto pair_gain = [&](std::uint64_t c) {
    std::uint64_t gain = 0;
    for (std::uint64_t e : patterns) {
      if (!covered[c ^ e]) ++gain;
      // Points near -c not already counted as near c.
      if (k0 - std::popcount(e) > r && !covered[(~c & mask) ^ e]) ++gain;
    }
    return gain;
  };

  // Max-heap on (gain, -bitmask); candidates are the smaller member of each pair.
  using Entry = std::pair<std::uint64_t, std::int64_t>;
  std::priority_queue<Entry> heap;
  for (std::uint64_t c = 0; c < size; ++c)
    if (c < (~c & mask)) heap.push({pair_gain(c), -static_cast<std::int64_t>(c)});

  std::vector<SignVector> words;
  while (remaining > 0) {
    const Entry top = heap.top();
    heap.pop();
    const auto c = static_cast<std::uint64_t>(-top.second);
    const Entry fresh{pair_gain(c), top.second};
    if (!heap.empty() && fresh < heap.top()) {
      heap.push(fresh);
      continue;
    }
    for (std::uint64_t center : {c, ~c & mask})
      for (std::uint64_t e : patterns)
        if (!covered[center ^ e]) {
          covered[center ^ e] = 1;
          --remaining;
        }
    words.emplace_back(k0, c);
    words.emplace_back(k0, ~c & mask);
  }
  return CoveringCode(std::move(words));
}

// ---------------------------------------------------------------------------
// Covering designs

// Family of t-subsets of {0..n-1} containing every ell-subset.
struct CoveringDesign {
  int n = 0;
  int t = 0;
  int ell = 0;
  std::vector<std::vector<int>> blocks;

  std::size_t size() const { return blocks.size(); }
};

namespace detail {

// All r-subsets of {0..n-1} as bitmasks, in lexicographic order of their
// sorted index lists.
inline std::vector<std::uint32_t> combinations(int n, int r) {
  std::vector<std::uint32_t> out;
  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    std::uint32_t m = 0;
    for (int i : idx) m |= std::uint32_t{1} << i;
    out.push_back(m);
    int i = r - 1;
    while (i >= 0 && idx[i] == n - r + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

inline std::vector<int> mask_to_indices(std::uint32_t m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

inline double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace detail

// True iff every ell-subset of {0..n-1} lies in some block.
inline bool is_covering_design(const CoveringDesign& design) {
  if (design.ell < 0 || design.t < design.ell || design.n < design.t ||
      design.n > kMaxDesignGroundSet)
    return false;
  std::vector<std::uint32_t> masks;
  for (const auto& block : design.blocks) {
    std::uint32_t m = 0;
    for (int i : block) {
      if (i < 0 || i >= design.n) return false;
      m |= std::uint32_t{1} << i;
    }
    if (std::popcount(m) != design.t) return false;
    masks.push_back(m);
  }
  for (std::uint32_t s : detail::combinations(design.n, design.ell)) {
    const bool hit = std::any_of(masks.begin(), masks.end(),
                                 [s](std::uint32_t b) { return (b & s) == s; });
    if (!hit) return false;
  }
  return true;
}

// [1 + ln C(t, ell)] * C(n, ell) / C(t, ell), or its base-2 log.
inline double erdos_spencer_bound(int n, int t, int ell, bool log2_result = false) {
  detail::require(0 <= ell && ell <= t && t <= n,
                  "erdos_spencer_bound: need 0 <= ell <= t <= n");
  const double ln_ct = detail::log_binomial(t, ell);
  const double ln_value =
      std::log1p(ln_ct) + detail::log_binomial(n, ell) - ln_ct;
  return log2_result ? ln_value / std::log(2.0) : std::exp(ln_value);
}

// Greedy covering design: repeatedly add the t-block covering the most
// uncovered ell-subsets, ties to the lexicographically smallest block.
inline CoveringDesign greedy_covering_design(int n, int t, int ell) {
  detail::require(0 <= ell && ell <= t && t <= n,
                  "greedy_covering_design: need ell <= t <= n");
  detail::require_budget(n <= kMaxDesignGroundSet,
                         "greedy_covering_design: n must be <= " +
                             std::to_string(kMaxDesignGroundSet));
  CoveringDesign design{n, t, ell, {}};
  const auto candidates = detail::combinations(n, t);
  const auto sub_patterns = detail::combinations(t, ell);
  std::vector<char> covered(std::size_t{1} << n, 0);
  std::uint64_t remaining = detail::combinations(n, ell).size();

  auto for_each_subset = [&](std::uint32_t block, auto&& fn) {
    const auto idx = detail::mask_to_indices(block);
    for (std::uint32_t p : sub_patterns) {
      std::uint32_t s = 0;
      for (int i : detail::mask_to_indices(p)) s |= std::uint32_t{1} << idx[i];
      fn(s);
    }
  };
  auto gain = [&](std::uint32_t block) {
    std::uint64_t g = 0;
    for_each_subset(block, [&](std::uint32_t s) { g += !covered[s]; });
    return g;
  };

  using Entry = std::pair<std::uint64_t, std::int64_t>;  // (gain, -lex rank)
  std::priority_queue<Entry> heap;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    heap.push({gain(candidates[i]), -static_cast<std::int64_t>(i)});

  while (remaining > 0) {
    const Entry top = heap.top();
    heap.pop();
    const std::uint32_t block = candidates[static_cast<std::size_t>(-top.second)];
    const Entry fresh{gain(block), top.second};
    if (!heap.empty() && fresh < heap.top()) {
      heap.push(fresh);
      continue;
    }
    for_each_subset(block, [&](std::uint32_t s) {
      if (!covered[s]) {
        covered[s] = 1;
        --remaining;
      }
    });
    design.blocks.push_back(detail::mask_to_indices(block));
  }
  return design;
}

}  // namespace qlc
