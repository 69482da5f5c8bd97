#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

namespace mhkit {

/// Packed vector over F2. Bit i of word i/64 holds coordinate i.
class BitVec {
public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

  void set(std::size_t i, bool v) {
    std::uint64_t mask = std::uint64_t(1) << (i & 63);
    if (v) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }

  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

  void operator^=(const BitVec& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      words_[w] ^= o.words_[w];
    }
  }

  friend BitVec operator^(BitVec a, const BitVec& b) {
    a ^= b;
    return a;
  }

  bool any() const {
    for (auto w : words_) {
      if (w) return true;
    }
    return false;
  }

  std::size_t popcount() const {
    std::size_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

  /// Parity of <a, b> over F2.
  friend bool dot(const BitVec& a, const BitVec& b) {
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < a.words_.size(); ++w) {
      acc ^= a.words_[w] & b.words_[w];
    }
    return std::popcount(acc) & 1u;
  }

  friend BitVec and_bits(BitVec a, const BitVec& b) {
    for (std::size_t w = 0; w < a.words_.size(); ++w) a.words_[w] &= b.words_[w];
    return a;
  }

  friend BitVec or_bits(BitVec a, const BitVec& b) {
    for (std::size_t w = 0; w < a.words_.size(); ++w) a.words_[w] |= b.words_[w];
    return a;
  }

  bool operator==(const BitVec& o) const = default;

  /// Lexicographic by coordinate, coordinate 0 most significant.
  bool operator<(const BitVec& o) const {
    for (std::size_t i = 0; i < n_ && i < o.n_; ++i) {
      bool a = get(i), b = o.get(i);
      if (a != b) return b;
    }
    return n_ < o.n_;
  }

  std::string to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i) {
      if (get(i)) s[i] = '1';
    }
    return s;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace mhkit
