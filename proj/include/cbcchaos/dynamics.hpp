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
#include "cbcchaos/cipher.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cbcchaos {

/// An eventually periodic infinite sequence of N-bit blocks: a finite
/// prefix followed by a nonempty cycle repeated forever. Always held in
/// canonical form (primitive cycle, shortest prefix), so two sequences are
/// equal as infinite sequences iff they compare equal here.
///
/// Blocks are indexed from 0; block 0 is the first one consumed by the
/// dynamics.
class MessageSequence {
 public:
  MessageSequence(int n_bits, std::vector<std::uint32_t> prefix, std::vector<std::uint32_t> cycle)
      : n_bits_(n_bits), prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
    check_bits(n_bits);
    if (cycle_.empty()) throw std::invalid_argument("message cycle must be nonempty");
    const auto mask = block_mask(n_bits);
    for (auto w : prefix_)
      if (w > mask) throw std::invalid_argument("message block does not fit in n_bits");
    for (auto w : cycle_)
      if (w > mask) throw std::invalid_argument("message block does not fit in n_bits");
    canonicalize();
  }

  MessageSequence(std::span<const Block> prefix, std::span<const Block> cycle)
      : MessageSequence(common_bits(prefix, cycle), words(prefix), words(cycle)) {}

  /// The constant sequence (w, w, w, ...).
  static MessageSequence constant(int n_bits, std::uint32_t w = 0) {
    return MessageSequence(n_bits, {}, {w});
  }

  int n_bits() const { return n_bits_; }
  const std::vector<std::uint32_t>& prefix() const { return prefix_; }
  const std::vector<std::uint32_t>& cycle() const { return cycle_; }

  std::uint32_t word(std::size_t index) const {
    if (index < prefix_.size()) return prefix_[index];
    return cycle_[(index - prefix_.size()) % cycle_.size()];
  }
  Block block(std::size_t index) const { return Block(word(index), n_bits_); }

  /// The sequence with its first `count` blocks removed.
  MessageSequence drop(std::size_t count) const {
    MessageSequence out = *this;
    if (count <= out.prefix_.size()) {
      out.prefix_.erase(out.prefix_.begin(),
                        out.prefix_.begin() + static_cast<std::ptrdiff_t>(count));
      return out;
    }
    const auto rotation = (count - out.prefix_.size()) % out.cycle_.size();
    out.prefix_.clear();
    std::rotate(out.cycle_.begin(), out.cycle_.begin() + static_cast<std::ptrdiff_t>(rotation),
                out.cycle_.end());
    return out;
  }

  /// `head` followed by all of `rest`.
  static MessageSequence concat(std::span<const std::uint32_t> head, const MessageSequence& rest) {
    std::vector<std::uint32_t> prefix(head.begin(), head.end());
    prefix.insert(prefix.end(), rest.prefix_.begin(), rest.prefix_.end());
    return MessageSequence(rest.n_bits_, std::move(prefix), rest.cycle_);
  }

  std::vector<std::uint32_t> head(std::size_t count) const {
    std::vector<std::uint32_t> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = word(i);
    return out;
  }

  friend bool operator==(const MessageSequence&, const MessageSequence&) = default;

 private:
  void canonicalize() {
    const std::size_t c = cycle_.size();
    for (std::size_t p = 1; p < c; ++p) {
      if (c % p != 0) continue;
      bool periodic = true;
      for (std::size_t i = p; i < c && periodic; ++i) periodic = cycle_[i] == cycle_[i - p];
      if (periodic) {
        cycle_.resize(p);
        break;
      }
    }
    while (!prefix_.empty() && prefix_.back() == cycle_.back()) {
      prefix_.pop_back();
      std::rotate(cycle_.rbegin(), cycle_.rbegin() + 1, cycle_.rend());
    }
  }

  static int common_bits(std::span<const Block> prefix, std::span<const Block> cycle) {
    if (cycle.empty()) throw std::invalid_argument("message cycle must be nonempty");
    const int n = cycle.front().n_bits();
    for (const auto& b : prefix)
      if (b.n_bits() != n) throw std::invalid_argument("message blocks must share n_bits");
    for (const auto& b : cycle)
      if (b.n_bits() != n) throw std::invalid_argument("message blocks must share n_bits");
    return n;
  }
  static std::vector<std::uint32_t> words(std::span<const Block> blocks) {
    std::vector<std::uint32_t> out;
    out.reserve(blocks.size());
    for (const auto& b : blocks) out.push_back(b.value());
    return out;
  }

  int n_bits_;
  std::vector<std::uint32_t> prefix_;
  std::vector<std::uint32_t> cycle_;
};

/// A point (x, m) of the phase space: internal state plus remaining message.
struct SystemPoint {
  Block state;
  MessageSequence message;

  SystemPoint(Block s, MessageSequence m) : state(s), message(std::move(m)) {
    if (state.n_bits() != message.n_bits())
      throw std::invalid_argument("state and message block sizes differ");
  }

  int n_bits() const { return state.n_bits(); }
  friend bool operator==(const SystemPoint&, const SystemPoint&) = default;
};

/// How a message block is combined with the chaining state before
/// encryption.
///  - xor: E(x xor m), the textbook CBC step.
///  - paper_complement: E(F_f(x, m)) where bit j of F_f(x, m) is x_j when
///    m_j = 1 and f(x)_j when m_j = 0. With f = negation this is
///    E(x xor not m).
enum class Convention { xor_chain, paper_complement };

inline std::string_view to_string(Convention c) {
  return c == Convention::xor_chain ? "xor" : "paper-complement";
}

inline Convention parse_convention(std::string_view s) {
  if (s == "xor") return Convention::xor_chain;
  if (s == "paper-complement") return Convention::paper_complement;
  throw std::invalid_argument("unknown convention '" + std::string(s) + "'");
}

inline std::vector<std::uint32_t> negation_table(int n_bits) {
  check_bits(n_bits);
  const auto mask = block_mask(n_bits);
  std::vector<std::uint32_t> t(std::size_t{1} << n_bits);
  for (std::uint32_t v = 0; v < t.size(); ++v) t[v] = ~v & mask;
  return t;
}

inline std::vector<std::uint32_t> identity_table(int n_bits) {
  check_bits(n_bits);
  std::vector<std::uint32_t> t(std::size_t{1} << n_bits);
  for (std::uint32_t v = 0; v < t.size(); ++v) t[v] = v;
  return t;
}

/// Bit j of the result is x_j where m_j = 1, and f(x)_j where m_j = 0.
inline std::uint32_t masked_substitution(std::span<const std::uint32_t> f, std::uint32_t x,
                                         std::uint32_t m, std::uint32_t mask) {
  return (x & m) | (f[x] & ~m & mask);
}

inline Block masked_substitution(std::span<const std::uint32_t> f, Block x, Block m) {
  Block::require_same_size(x, m);
  if (f.size() != (std::size_t{1} << x.n_bits()))
    throw std::invalid_argument("inner function table size does not match the block size");
  return Block(masked_substitution(f, x.value(), m.value(), block_mask(x.n_bits())), x.n_bits());
}

/// The block function g together with the convention used to evaluate it.
class SystemConfig {
 public:
  explicit SystemConfig(CipherSpec cipher, Convention convention = Convention::xor_chain)
      : cipher_(std::move(cipher)), convention_(convention), inner_(negation_table(cipher_.n_bits())),
        inner_is_negation_(true) {}

  SystemConfig(CipherSpec cipher, Convention convention, std::vector<std::uint32_t> inner)
      : cipher_(std::move(cipher)), convention_(convention), inner_(std::move(inner)) {
    if (inner_.size() != (std::size_t{1} << cipher_.n_bits()))
      throw std::invalid_argument("inner function table must have 2^n_bits entries");
    const auto mask = block_mask(cipher_.n_bits());
    for (auto v : inner_)
      if (v > mask) throw std::invalid_argument("inner function value does not fit in n_bits");
    inner_is_negation_ = inner_ == negation_table(cipher_.n_bits());
    if (convention_ == Convention::xor_chain && !inner_is_negation_)
      throw std::invalid_argument(
          "the xor convention is only defined for the negation inner function");
  }

  const CipherSpec& cipher() const { return cipher_; }
  Convention convention() const { return convention_; }
  std::span<const std::uint32_t> inner() const { return inner_; }
  bool inner_is_negation() const { return inner_is_negation_; }
  int n_bits() const { return cipher_.n_bits(); }
  std::uint32_t mask() const { return block_mask(cipher_.n_bits()); }

  /// g: next chaining state from current state x and consumed block m.
  std::uint32_t next_word(std::uint32_t x, std::uint32_t m) const {
    if (convention_ == Convention::xor_chain) return cipher_.encrypt_word(x ^ m);
    return cipher_.encrypt_word(masked_substitution(inner_, x, m, mask()));
  }

  /// A block b with next_word(x, b) == wanted, if one exists. Closed form
  /// for the negation inner function, exhaustive search otherwise.
  std::optional<std::uint32_t> steer(std::uint32_t x, std::uint32_t wanted) const {
    const std::uint32_t pre_image = cipher_.decrypt_word(wanted);
    if (convention_ == Convention::xor_chain) return x ^ pre_image;
    if (inner_is_negation_) return ~(x ^ pre_image) & mask();
    for (std::uint32_t b = 0; b <= mask(); ++b)
      if (masked_substitution(inner_, x, b, mask()) == pre_image) return b;
    return std::nullopt;
  }

 private:
  CipherSpec cipher_;
  Convention convention_;
  std::vector<std::uint32_t> inner_;
  bool inner_is_negation_ = false;
};

/// First block of a message.
inline Block initial(const MessageSequence& m) { return m.block(0); }

/// The message with its first block removed.
inline MessageSequence shift(const MessageSequence& m) { return m.drop(1); }

inline void require_compatible(const SystemConfig& cfg, const SystemPoint& p) {
  if (p.n_bits() != cfg.n_bits())
    throw std::invalid_argument("point has " + std::to_string(p.n_bits()) +
                                "-bit blocks but the system uses " + std::to_string(cfg.n_bits()));
}

/// One CBC block: consume the first message block, update the state.
inline SystemPoint step(const SystemConfig& cfg, const SystemPoint& p) {
  require_compatible(cfg, p);
  const auto next = cfg.next_word(p.state.value(), p.message.word(0));
  return SystemPoint(Block(next, cfg.n_bits()), shift(p.message));
}

/// Trajectory of n + 1 points starting at p.
inline std::vector<SystemPoint> iterate(const SystemConfig& cfg, const SystemPoint& p,
                                        std::size_t n) {
  std::vector<SystemPoint> out;
  out.reserve(n + 1);
  out.push_back(p);
  for (std::size_t i = 0; i < n; ++i) out.push_back(step(cfg, out.back()));
  return out;
}

/// States x_0 .. x_n along the orbit of p, without materializing messages.
inline std::vector<std::uint32_t> state_orbit(const SystemConfig& cfg, const SystemPoint& p,
                                              std::size_t n) {
  require_compatible(cfg, p);
  std::vector<std::uint32_t> out(n + 1);
  out[0] = p.state.value();
  for (std::size_t i = 0; i < n; ++i) out[i + 1] = cfg.next_word(out[i], p.message.word(i));
  return out;
}

/// G^n(p), computed without keeping the intermediate points.
inline SystemPoint advance(const SystemConfig& cfg, const SystemPoint& p, std::size_t n) {
  const auto states = state_orbit(cfg, p, n);
  return SystemPoint(Block(states.back(), cfg.n_bits()), p.message.drop(n));
}

}  // namespace cbcchaos
