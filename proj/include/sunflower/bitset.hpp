/*
 * Copyright (C) 2026 The sunflower-spread Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SUNFLOWER_BITSET_HPP
#define SUNFLOWER_BITSET_HPP

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace sunflower {

/**
 * Fixed-width bit vector over a ground set {0, ..., 64*Words - 1}.
 *
 * Ordering is by numeric value of the bit vector, i.e. element 64*Words-1
 * is the most significant bit. Families are stored in ascending order under
 * this comparison, which is also what "canonical order" means throughout the
 * library.
 */
template <std::size_t Words>
class BitSet {
  static_assert(Words >= 1, "BitSet needs at least one word");

public:
  static constexpr std::size_t kWords = Words;
  static constexpr std::size_t kCapacity = 64 * Words;

  constexpr BitSet() = default;

  constexpr BitSet(std::initializer_list<unsigned> elements) {
    for (unsigned e : elements) set(e);
  }

  static BitSet from_elements(std::span<const unsigned> elements) {
    BitSet s;
    for (unsigned e : elements) s.set(e);
    return s;
  }

  /// Lowest `n` elements set.
  static constexpr BitSet prefix(std::size_t n) {
    BitSet s;
    for (std::size_t w = 0; w < Words && n > 0; ++w) {
      if (n >= 64) {
        s.words_[w] = ~std::uint64_t{0};
        n -= 64;
      } else {
        s.words_[w] = (std::uint64_t{1} << n) - 1;
        n = 0;
      }
    }
    return s;
  }

  constexpr void set(std::size_t i) { words_[i >> 6] |= bit(i); }
  constexpr void reset(std::size_t i) { words_[i >> 6] &= ~bit(i); }
  [[nodiscard]] constexpr bool test(std::size_t i) const {
    return (words_[i >> 6] & bit(i)) != 0;
  }

  [[nodiscard]] constexpr std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  [[nodiscard]] constexpr bool empty() const {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }

  /// Index of the lowest set bit, or kCapacity if empty.
  [[nodiscard]] constexpr std::size_t lowest() const {
    for (std::size_t w = 0; w < Words; ++w)
      if (words_[w] != 0)
        return 64 * w + static_cast<std::size_t>(std::countr_zero(words_[w]));
    return kCapacity;
  }

  /// Index of the highest set bit plus one, 0 if empty.
  [[nodiscard]] constexpr std::size_t span_end() const {
    for (std::size_t w = Words; w-- > 0;)
      if (words_[w] != 0)
        return 64 * w + 64 - static_cast<std::size_t>(std::countl_zero(words_[w]));
    return 0;
  }

  /// True iff every set bit is below `n`.
  [[nodiscard]] constexpr bool fits(std::size_t n) const { return span_end() <= n; }

  [[nodiscard]] constexpr bool is_subset_of(const BitSet& other) const {
    for (std::size_t w = 0; w < Words; ++w)
      if ((words_[w] & ~other.words_[w]) != 0) return false;
    return true;
  }

  [[nodiscard]] constexpr bool intersects(const BitSet& other) const {
    for (std::size_t w = 0; w < Words; ++w)
      if ((words_[w] & other.words_[w]) != 0) return true;
    return false;
  }

  /// this \ other
  [[nodiscard]] constexpr BitSet minus(const BitSet& other) const {
    BitSet r;
    for (std::size_t w = 0; w < Words; ++w) r.words_[w] = words_[w] & ~other.words_[w];
    return r;
  }

  template <typename F>
  constexpr void for_each(F&& f) const {
    for (std::size_t w = 0; w < Words; ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        f(64 * w + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  [[nodiscard]] std::vector<unsigned> elements() const {
    std::vector<unsigned> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(static_cast<unsigned>(i)); });
    return out;
  }

  [[nodiscard]] std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for_each([&](std::size_t i) {
      if (!first) s += ',';
      s += std::to_string(i);
      first = false;
    });
    return s + "}";
  }

  [[nodiscard]] constexpr std::uint64_t word(std::size_t w) const { return words_[w]; }
  constexpr void set_word(std::size_t w, std::uint64_t v) { words_[w] = v; }

  constexpr BitSet& operator&=(const BitSet& o) {
    for (std::size_t w = 0; w < Words; ++w) words_[w] &= o.words_[w];
    return *this;
  }
  constexpr BitSet& operator|=(const BitSet& o) {
    for (std::size_t w = 0; w < Words; ++w) words_[w] |= o.words_[w];
    return *this;
  }
  constexpr BitSet& operator^=(const BitSet& o) {
    for (std::size_t w = 0; w < Words; ++w) words_[w] ^= o.words_[w];
    return *this;
  }
  friend constexpr BitSet operator&(BitSet a, const BitSet& b) { return a &= b; }
  friend constexpr BitSet operator|(BitSet a, const BitSet& b) { return a |= b; }
  friend constexpr BitSet operator^(BitSet a, const BitSet& b) { return a ^= b; }

  friend constexpr bool operator==(const BitSet&, const BitSet&) = default;

  friend constexpr std::strong_ordering operator<=>(const BitSet& a, const BitSet& b) {
    for (std::size_t w = Words; w-- > 0;)
      if (a.words_[w] != b.words_[w]) return a.words_[w] <=> b.words_[w];
    return std::strong_ordering::equal;
  }

  [[nodiscard]] std::size_t hash() const {
    // splitmix64 finalizer folded over the words
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (auto w : words_) {
      std::uint64_t z = w + h;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
      h = z ^ (z >> 31);
    }
    return static_cast<std::size_t>(h);
  }

private:
  static constexpr std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << (i & 63); }

  std::array<std::uint64_t, Words> words_{};
};

struct BitSetHash {
  template <std::size_t W>
  std::size_t operator()(const BitSet<W>& s) const {
    return s.hash();
  }
};

/// Word counts the library instantiates: up to 64, 256 and 1024 elements.
inline constexpr std::size_t kMaxGroundSize = 1024;

constexpr std::size_t words_for(std::size_t ground_size) {
  return ground_size <= 64 ? 1 : ground_size <= 256 ? 4 : 16;
}

}  // namespace sunflower

#endif  // SUNFLOWER_BITSET_HPP
