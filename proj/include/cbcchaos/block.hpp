/*
 * Copyright 2026 The cbc-chaos Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cbcchaos {

/// Largest supported block size. Ciphers are materialized as tables of 2^N
/// entries, so this bounds memory at 65536 words per table.
inline constexpr int kMaxBits = 16;

inline void check_bits(int n_bits) {
  if (n_bits < 1 || n_bits > kMaxBits)
    throw std::invalid_argument("n_bits must lie in [1, " + std::to_string(kMaxBits) +
                                "], got " + std::to_string(n_bits));
}

inline constexpr std::uint32_t block_mask(int n_bits) {
  return (std::uint32_t{1} << n_bits) - 1;
}

/// An N-bit Boolean word, used both as the internal state and as a message
/// block. Bit j of the mathematical vector (j = 1..N) is the j-th character
/// of the big-endian string form, i.e. value bit N - j.
class Block {
 public:
  constexpr Block() = default;
  Block(std::uint32_t value, int n_bits) : value_(value), n_bits_(n_bits) {
    check_bits(n_bits);
    if (value > block_mask(n_bits))
      throw std::invalid_argument("block value " + std::to_string(value) + " does not fit in " +
                                  std::to_string(n_bits) + " bits");
  }

  static Block parse(std::string_view bits) {
    if (bits.empty()) throw std::invalid_argument("empty bit string");
    if (bits.size() > static_cast<std::size_t>(kMaxBits))
      throw std::invalid_argument("bit string longer than " + std::to_string(kMaxBits));
    std::uint32_t v = 0;
    for (char c : bits) {
      if (c != '0' && c != '1')
        throw std::invalid_argument("bit string may only contain 0 and 1: '" + std::string(bits) +
                                    "'");
      v = (v << 1) | static_cast<std::uint32_t>(c - '0');
    }
    return Block(v, static_cast<int>(bits.size()));
  }

  constexpr std::uint32_t value() const { return value_; }
  constexpr int n_bits() const { return n_bits_; }

  /// One-based bit access, j in [1, N], j = 1 leftmost.
  bool bit(int j) const {
    if (j < 1 || j > n_bits_) throw std::out_of_range("bit index out of range");
    return (value_ >> (n_bits_ - j)) & 1U;
  }

  std::string to_string() const {
    std::string s(static_cast<std::size_t>(n_bits_), '0');
    for (int j = 0; j < n_bits_; ++j)
      if ((value_ >> (n_bits_ - 1 - j)) & 1U) s[static_cast<std::size_t>(j)] = '1';
    return s;
  }

  friend Block operator^(Block a, Block b) {
    require_same_size(a, b);
    return Block(a.value_ ^ b.value_, a.n_bits_);
  }
  friend Block operator~(Block a) { return Block(~a.value_ & block_mask(a.n_bits_), a.n_bits_); }
  friend bool operator==(const Block&, const Block&) = default;

  static void require_same_size(const Block& a, const Block& b) {
    if (a.n_bits_ != b.n_bits_)
      throw std::invalid_argument("block size mismatch: " + std::to_string(a.n_bits_) + " vs " +
                                  std::to_string(b.n_bits_));
  }

 private:
  std::uint32_t value_ = 0;
  int n_bits_ = 1;
};

inline int hamming(std::uint32_t a, std::uint32_t b) { return std::popcount(a ^ b); }

}  // namespace cbcchaos
