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
#include "cbcchaos/dynamics.hpp"
#include "cbcchaos/rational.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace cbcchaos {

// Distances on the phase space, all exact:
//
//   d((x, m), (y, w)) = d_e(x, y) + d_m(m, w)
//   d_e(x, y)         = Hamming distance of the two states
//   d_m(m, w)         = (9/N) * sum_{k>=1} h_k / 10^k
//
// where h_k is the Hamming distance between the k-th blocks (internal index
// k - 1). Since h_k <= N, d_m lies in [0, 1] and d_e is the integer part of d
// whenever d_m < 1.

/// Hamming distance between two states, in [0, N].
inline int state_distance(Block x, Block y) {
  Block::require_same_size(x, y);
  return hamming(x.value(), y.value());
}

/// Index of the first block where the sequences differ, if any.
inline std::optional<std::size_t> first_difference(const MessageSequence& m,
                                                   const MessageSequence& w) {
  if (m == w) return std::nullopt;
  const std::size_t horizon = std::max(m.prefix().size(), w.prefix().size()) +
                              std::lcm(m.cycle().size(), w.cycle().size());
  for (std::size_t i = 0; i < horizon; ++i)
    if (m.word(i) != w.word(i)) return i;
  // Unreachable for canonical, unequal sequences.
  throw std::logic_error("sequences compare unequal but agree on a full joint period");
}

/// Exact d_m. The Hamming sequence h is itself eventually periodic with
/// preperiod L = max prefix length and period P = lcm of the cycle lengths,
/// so the series closes to
///
///   d_m = (9/N) * (A (10^P - 1) + B) / (10^L (10^P - 1))
///
/// with A the digits of h over [0, L) and B the digits over [L, L + P).
inline Rational message_distance(const MessageSequence& m, const MessageSequence& w) {
  if (m.n_bits() != w.n_bits())
    throw std::invalid_argument("message block sizes differ: " + std::to_string(m.n_bits()) +
                                " vs " + std::to_string(w.n_bits()));
  if (m == w) return Rational(0);
  const std::size_t lead = std::max(m.prefix().size(), w.prefix().size());
  const std::size_t period = std::lcm(m.cycle().size(), w.cycle().size());

  BigInt head = 0;
  for (std::size_t i = 0; i < lead; ++i) head = head * 10 + hamming(m.word(i), w.word(i));
  BigInt tail = 0;
  for (std::size_t i = lead; i < lead + period; ++i)
    tail = tail * 10 + hamming(m.word(i), w.word(i));

  const BigInt repunit = pow10(static_cast<unsigned>(period)) - 1;
  Rational series(head * repunit + tail, pow10(static_cast<unsigned>(lead)) * repunit);
  return series * Rational(9, m.n_bits());
}

/// d = d_e + d_m.
inline Rational distance(const SystemPoint& x, const SystemPoint& y) {
  return Rational(state_distance(x.state, y.state)) + message_distance(x.message, y.message);
}

/// Bowen distance d_n: the largest d between G^i(x) and G^i(y), 0 <= i < n.
inline Rational bowen_distance(const SystemConfig& cfg, const SystemPoint& x, const SystemPoint& y,
                               std::size_t n) {
  if (n < 1) throw std::invalid_argument("bowen distance needs n >= 1");
  const auto xs = state_orbit(cfg, x, n - 1);
  const auto ys = state_orbit(cfg, y, n - 1);
  Rational best(0);
  for (std::size_t i = 0; i < n; ++i) {
    const Rational d = Rational(hamming(xs[i], ys[i])) +
                       message_distance(x.message.drop(i), y.message.drop(i));
    if (d > best) best = d;
  }
  return best;
}

/// Open ball: membership is the strict inequality d(center, y) < radius.
struct Ball {
  SystemPoint center;
  Rational radius;

  Ball(SystemPoint c, Rational r) : center(std::move(c)), radius(std::move(r)) {
    if (radius <= 0) throw std::invalid_argument("ball radius must be positive");
  }
};

inline bool in_ball(const Ball& b, const SystemPoint& y) { return distance(b.center, y) < b.radius; }

/// A radius for which the open balls around x and y are disjoint.
///
/// States differ: 1/2, since any two points with distinct states are at
/// distance >= 1. Same state, first differing block at index k: 10^-(k+1).
/// That radius forces agreement on blocks 0..k only while 9/N >= 1; for
/// N >= 10 a single differing bit at index k costs less than 10^-(k+1), so
/// one more decade is taken.
inline Rational separating_radius(const SystemPoint& x, const SystemPoint& y) {
  if (x.n_bits() != y.n_bits()) throw std::invalid_argument("points have different block sizes");
  if (x == y) throw std::invalid_argument("separating radius requires distinct points");
  if (x.state != y.state) return Rational(1, 2);
  const auto k = *first_difference(x.message, y.message);
  const auto exponent = static_cast<unsigned>(k + 1 + (x.n_bits() > 9 ? 1 : 0));
  return inverse_pow10(exponent);
}

}  // namespace cbcchaos
