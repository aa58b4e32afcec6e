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

#include "cbcchaos/block.hpp"
#include "cbcchaos/splitmix.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cbcchaos {

enum class CipherKind { identity, permutation, feistel };

inline std::string_view to_string(CipherKind kind) {
  switch (kind) {
    case CipherKind::identity: return "identity";
    case CipherKind::permutation: return "permutation";
    case CipherKind::feistel: return "feistel";
  }
  return "?";
}

inline CipherKind parse_cipher_kind(std::string_view s) {
  if (s == "identity") return CipherKind::identity;
  if (s == "permutation") return CipherKind::permutation;
  if (s == "feistel") return CipherKind::feistel;
  throw std::invalid_argument("unknown cipher kind '" + std::string(s) + "'");
}

/// A toy keyed block cipher on N-bit words, stored as a pair of mutually
/// inverse lookup tables. Immutable once built.
class CipherSpec {
 public:
  /// Wraps an explicit permutation table (key material given directly).
  static CipherSpec from_table(int n_bits, std::vector<std::uint32_t> table) {
    check_bits(n_bits);
    if (table.size() != (std::size_t{1} << n_bits))
      throw std::invalid_argument("permutation table must have 2^n_bits entries");
    CipherSpec c;
    c.kind_ = CipherKind::permutation;
    c.n_bits_ = n_bits;
    c.explicit_table_ = true;
    c.set_forward(std::move(table));
    return c;
  }

  CipherKind kind() const { return kind_; }
  int n_bits() const { return n_bits_; }
  std::uint64_t seed() const { return seed_; }
  int rounds() const { return rounds_; }
  bool explicit_table() const { return explicit_table_; }

  std::span<const std::uint32_t> forward_table() const { return forward_; }
  std::span<const std::uint32_t> inverse_table() const { return inverse_; }

  std::uint32_t encrypt_word(std::uint32_t v) const { return forward_[v]; }
  std::uint32_t decrypt_word(std::uint32_t v) const { return inverse_[v]; }

  Block encrypt(Block x) const {
    check_size(x);
    return Block(forward_[x.value()], n_bits_);
  }
  Block decrypt(Block x) const {
    check_size(x);
    return Block(inverse_[x.value()], n_bits_);
  }

 private:
  friend CipherSpec make_cipher(CipherKind, int, std::uint64_t, int);

  CipherSpec() = default;

  void check_size(Block x) const {
    if (x.n_bits() != n_bits_)
      throw std::invalid_argument("block of " + std::to_string(x.n_bits()) +
                                  " bits given to a cipher on " + std::to_string(n_bits_) + " bits");
  }

  void set_forward(std::vector<std::uint32_t> table) {
    std::vector<std::uint32_t> inverse(table.size(), 0);
    std::vector<bool> seen(table.size(), false);
    for (std::uint32_t v = 0; v < table.size(); ++v) {
      const auto image = table[v];
      if (image >= table.size() || seen[image])
        throw std::invalid_argument("cipher table is not a permutation");
      seen[image] = true;
      inverse[image] = v;
    }
    forward_ = std::move(table);
    inverse_ = std::move(inverse);
  }

  CipherKind kind_ = CipherKind::identity;
  int n_bits_ = 1;
  std::uint64_t seed_ = 0;
  int rounds_ = 0;
  bool explicit_table_ = false;
  std::vector<std::uint32_t> forward_;
  std::vector<std::uint32_t> inverse_;
};

/// Builds a toy cipher.
///
///  - identity: E(v) = v; seed and rounds ignored.
///  - permutation: Fisher-Yates over [0, 2^N) walking i = 2^N - 1 down to 1,
///    swapping slot i with slot (next() mod (i + 1)) of a SplitMix64 stream
///    seeded with `seed`.
///  - feistel: `rounds` balanced rounds over halves of N/2 bits, the left half
///    being the high bits. Round r maps (L, R) to (R, L xor F_r(R)) where F_r
///    is a table of 2^(N/2) entries, each next() masked to N/2 bits. Tables
///    are drawn round by round, entries in index order, from one stream.
inline CipherSpec make_cipher(CipherKind kind, int n_bits, std::uint64_t seed = 0, int rounds = 0) {
  check_bits(n_bits);
  const std::size_t size = std::size_t{1} << n_bits;
  std::vector<std::uint32_t> table(size);
  for (std::uint32_t v = 0; v < size; ++v) table[v] = v;

  CipherSpec c;
  c.kind_ = kind;
  c.n_bits_ = n_bits;
  switch (kind) {
    case CipherKind::identity:
      break;
    case CipherKind::permutation: {
      c.seed_ = seed;
      SplitMix64 rng(seed);
      for (std::size_t i = size - 1; i > 0; --i) std::swap(table[i], table[rng.below(i + 1)]);
      break;
    }
    case CipherKind::feistel: {
      if (n_bits % 2 != 0)
        throw std::invalid_argument("feistel cipher requires an even n_bits, got " +
                                    std::to_string(n_bits));
      if (rounds < 1) throw std::invalid_argument("feistel cipher requires rounds >= 1");
      c.seed_ = seed;
      c.rounds_ = rounds;
      const int half = n_bits / 2;
      const std::uint32_t half_mask = block_mask(half);
      SplitMix64 rng(seed);
      std::vector<std::vector<std::uint32_t>> round_fn(static_cast<std::size_t>(rounds),
                                                       std::vector<std::uint32_t>(half_mask + 1));
      for (auto& fn : round_fn)
        for (auto& entry : fn) entry = static_cast<std::uint32_t>(rng.next()) & half_mask;
      for (std::uint32_t v = 0; v < size; ++v) {
        std::uint32_t left = v >> half;
        std::uint32_t right = v & half_mask;
        for (const auto& fn : round_fn) {
          const std::uint32_t next_right = left ^ fn[right];
          left = right;
          right = next_right;
        }
        table[v] = (left << half) | right;
      }
      break;
    }
  }
  c.set_forward(std::move(table));
  return c;
}

inline Block encrypt(const CipherSpec& c, Block x) { return c.encrypt(x); }
inline Block decrypt(const CipherSpec& c, Block x) { return c.decrypt(x); }

/// f0: flips every bit.
inline Block vectorial_negation(Block x) { return ~x; }

}  // namespace cbcchaos
