#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <string>
#include <string_view>
#include <vector>

#include "qlc/errors.hpp"

namespace qlc {

// Longest sign vector representable in one word.
inline constexpr int kMaxSignVectorLength = 64;
// Largest k for which all 2^k sign vectors may be enumerated.
inline constexpr int kMaxEnumerationLength = 30;

inline constexpr std::uint64_t low_mask(int length) {
  return length >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << length) - 1;
}

// An element of {+1,-1}^k. Bit i set means entry i is +1, clear means -1.
class SignVector {
 public:
  SignVector(int length, std::uint64_t bits) : length_(length), bits_(bits) {
    detail::require(length >= 1 && length <= kMaxSignVectorLength,
                    "SignVector length must be in [1, 64], got " +
                        std::to_string(length));
    detail::require((bits & ~low_mask(length)) == 0,
                    "SignVector bits set beyond its length");
  }

  static SignVector all_ones(int length) {
    return SignVector(length, low_mask(length));
  }

  static SignVector from_values(const std::vector<int>& values) {
    detail::require(!values.empty(), "empty sign vector");
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      detail::require(values[i] == 1 || values[i] == -1,
                      "sign vector entries must be +1 or -1");
      if (values[i] == 1) bits |= std::uint64_t{1} << i;
    }
    return SignVector(static_cast<int>(values.size()), bits);
  }

  // Parses '+'/'-' strings; the Unicode minus sign U+2212 is accepted too.
  static SignVector parse(std::string_view text) {
    std::vector<int> values;
    for (std::size_t i = 0; i < text.size(); ++i) {
      const char ch = text[i];
      if (ch == '+') {
        values.push_back(1);
      } else if (ch == '-') {
        values.push_back(-1);
      } else if (text.substr(i, 3) == "\xE2\x88\x92") {
        values.push_back(-1);
        i += 2;
      } else if (ch == ' ' || ch == '\t' || ch == '\r') {
        continue;
      } else {
        throw FormatError("invalid sign character in '" + std::string(text) +
                          "'");
      }
    }
    if (values.empty()) throw FormatError("empty sign vector string");
    if (values.size() > kMaxSignVectorLength)
      throw FormatError("sign vector longer than 64 entries");
    return from_values(values);
  }

  int length() const { return length_; }
  std::uint64_t bits() const { return bits_; }

  int operator[](int i) const { return (bits_ >> i) & 1 ? 1 : -1; }

  SignVector operator-() const {
    return SignVector(length_, ~bits_ & low_mask(length_));
  }

  int hamming_distance(const SignVector& other) const {
    detail::require(other.length_ == length_, "sign vector length mismatch");
    return std::popcount(bits_ ^ other.bits_);
  }

  int count_plus() const { return std::popcount(bits_); }

  // Entries [offset, offset + length) as a shorter sign vector.
  SignVector slice(int offset, int length) const {
    detail::require(offset >= 0 && offset + length <= length_,
                    "slice out of range");
    return SignVector(length, (bits_ >> offset) & low_mask(length));
  }

  std::vector<double> to_doubles() const {
    std::vector<double> out(length_);
    for (int i = 0; i < length_; ++i) out[i] = (*this)[i];
    return out;
  }

  std::string to_string() const {
    std::string out(length_, '-');
    for (int i = 0; i < length_; ++i)
      if ((bits_ >> i) & 1) out[i] = '+';
    return out;
  }

  friend bool operator==(const SignVector&, const SignVector&) = default;
  friend auto operator<=>(const SignVector& a, const SignVector& b) {
    if (auto c = a.length_ <=> b.length_; c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

 private:
  int length_;
  std::uint64_t bits_;
};

// All 2^k sign vectors of length k in increasing bitmask order.
class SignVectorRange {
 public:
  class iterator {
   public:
    using value_type = SignVector;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    iterator(int length, std::uint64_t bits) : length_(length), bits_(bits) {}
    SignVector operator*() const { return SignVector(length_, bits_); }
    iterator& operator++() {
      ++bits_;
      return *this;
    }
    iterator operator++(int) {
      iterator copy = *this;
      ++bits_;
      return copy;
    }
    friend bool operator==(const iterator&, const iterator&) = default;

   private:
    int length_ = 1;
    std::uint64_t bits_ = 0;
  };

  explicit SignVectorRange(int length) : length_(length) {}
  iterator begin() const { return {length_, 0}; }
  iterator end() const { return {length_, std::uint64_t{1} << length_}; }
  std::uint64_t size() const { return std::uint64_t{1} << length_; }

 private:
  int length_;
};

inline void check_enumeration_budget(int k, int limit = kMaxEnumerationLength) {
  detail::require_budget(
      k >= 1 && k <= limit,
      "enumeration over {+1,-1}^k requires 1 <= k <= " + std::to_string(limit) +
          ", got k = " + std::to_string(k));
}

inline SignVectorRange enumerate_sign_vectors(int k) {
  check_enumeration_budget(k);
  return SignVectorRange(k);
}

}  // namespace qlc
