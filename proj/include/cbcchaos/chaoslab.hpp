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

#include "cbcchaos/dynamics.hpp"
#include "cbcchaos/metric.hpp"
#include "cbcchaos/parallel.hpp"
#include "cbcchaos/rational.hpp"
#include "cbcchaos/splitmix.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cbcchaos {

/// Number of leading message blocks a point must share with a ball's center
/// to be strictly inside it: k = ceil(-log10 eps) + 1, so that the shared
/// prefix bounds the distance by 10^-k <= eps / 10 < eps.
inline std::size_t agreement_depth(const Rational& radius) {
  return static_cast<std::size_t>(ceil_neg_log10(radius)) + 1;
}

namespace detail {

inline std::uint32_t steer_or_throw(const SystemConfig& cfg, std::uint32_t state,
                                    std::uint32_t wanted) {
  if (auto b = cfg.steer(state, wanted)) return *b;
  throw std::invalid_argument("no message block drives state " +
                              Block(state, cfg.n_bits()).to_string() + " to " +
                              Block(wanted, cfg.n_bits()).to_string() +
                              " under this inner function");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Topological mixing
// ---------------------------------------------------------------------------

/// A point inside `ball` whose orbit lands exactly on `target` after `steps`
/// iterations. The point keeps the center's state and first k blocks, then
/// one correction block, then the target's message verbatim.
struct MixingWitness {
  SystemPoint constructed_point;
  std::size_t steps;
  std::size_t k;
  SystemPoint target;
  Ball ball;
};

/// Builds the witness of the mixing construction: with s the state reached
/// from the center after k blocks, the correction block (at index k) is
/// s xor D(x') under the xor convention, and the complement of that under
/// the paper-complement convention. Other inner functions fall back to a
/// search over blocks. The result is verified before it is returned.
inline MixingWitness mixing_witness(const SystemConfig& cfg, const Ball& ball,
                                    const SystemPoint& target) {
  require_compatible(cfg, ball.center);
  require_compatible(cfg, target);
  if (ball.radius >= 1)
    throw std::invalid_argument("mixing construction requires a ball radius < 1, got " +
                                to_fraction_string(ball.radius));

  const std::size_t k = agreement_depth(ball.radius);
  const auto reached = state_orbit(cfg, ball.center, k).back();
  auto head = ball.center.message.head(k);
  head.push_back(detail::steer_or_throw(cfg, reached, target.state.value()));

  MixingWitness w{SystemPoint(ball.center.state, MessageSequence::concat(head, target.message)),
                  k + 1, k, target, ball};

  if (!in_ball(ball, w.constructed_point) || !(advance(cfg, w.constructed_point, w.steps) == target))
    throw std::logic_error("mixing witness failed its own verification");
  return w;
}

/// Rechecks a witness along an independent path: exact ball membership and
/// step-by-step iteration to the target.
inline bool verify_mixing(const SystemConfig& cfg, const MixingWitness& w) {
  if (w.constructed_point.n_bits() != cfg.n_bits() || w.target.n_bits() != cfg.n_bits())
    return false;
  if (!in_ball(w.ball, w.constructed_point)) return false;
  return iterate(cfg, w.constructed_point, w.steps).back() == w.target;
}

// ---------------------------------------------------------------------------
// Sensitivity
// ---------------------------------------------------------------------------

struct SensitivityWitness {
  SystemPoint perturbed;
  std::size_t steps;
  Rational achieved;
};

/// Finds y strictly inside ball(x, eps) whose state after k + 1 steps is the
/// bitwise complement of x's, so the orbits are at distance >= N there.
inline SensitivityWitness sensitivity_witness(const SystemConfig& cfg, const SystemPoint& x,
                                              const Rational& epsilon, const Rational& delta) {
  require_compatible(cfg, x);
  if (epsilon <= 0 || epsilon >= 1)
    throw std::invalid_argument("sensitivity requires 0 < epsilon < 1, got " +
                                to_fraction_string(epsilon));
  if (delta > cfg.n_bits())
    throw std::invalid_argument("delta may not exceed the block size N");

  const std::size_t k = agreement_depth(epsilon);
  const auto reached = state_orbit(cfg, x, k).back();
  const auto original_next = cfg.next_word(reached, x.message.word(k));
  const auto wanted = ~original_next & cfg.mask();

  auto head = x.message.head(k);
  head.push_back(detail::steer_or_throw(cfg, reached, wanted));
  SystemPoint y(x.state, MessageSequence::concat(head, x.message.drop(k + 1)));

  const std::size_t steps = k + 1;
  Rational achieved = distance(advance(cfg, x, steps), advance(cfg, y, steps));
  if (!in_ball(Ball(x, epsilon), y) || achieved < delta)
    throw std::logic_error("sensitivity witness failed its own verification");
  return {std::move(y), steps, std::move(achieved)};
}

// ---------------------------------------------------------------------------
// Expansivity probe
// ---------------------------------------------------------------------------

/// A point y with a different state whose first block is chosen so that
/// G(y) == G(x); from step 1 on the two orbits coincide.
inline SystemPoint steered_merge(const SystemConfig& cfg, const SystemPoint& x,
                                 std::uint32_t other_state) {
  require_compatible(cfg, x);
  if (other_state == x.state.value())
    throw std::invalid_argument("steered merge needs a different starting state");
  const auto joined = cfg.next_word(x.state.value(), x.message.word(0));
  const std::uint32_t first = detail::steer_or_throw(cfg, other_state, joined);
  return SystemPoint(Block(other_state, cfg.n_bits()),
                     MessageSequence::concat(std::vector<std::uint32_t>{first}, x.message.drop(1)));
}

/// max over 1 <= n <= horizon of d(G^n x, G^n y).
inline Rational orbit_separation(const SystemConfig& cfg, const SystemPoint& x,
                                 const SystemPoint& y, std::size_t horizon) {
  const auto xs = state_orbit(cfg, x, horizon);
  const auto ys = state_orbit(cfg, y, horizon);
  Rational best(0);
  for (std::size_t n = 1; n <= horizon; ++n) {
    Rational d = Rational(hamming(xs[n], ys[n])) +
                 message_distance(x.message.drop(n), y.message.drop(n));
    if (d > best) best = std::move(d);
  }
  return best;
}

/// Random eventually periodic point: prefix of 0..3 blocks, cycle of 1..3.
inline SystemPoint random_point(SplitMix64& rng, int n_bits) {
  const std::uint64_t span = std::uint64_t{1} << n_bits;
  auto draw = [&](std::size_t count) {
    std::vector<std::uint32_t> v(count);
    for (auto& w : v) w = static_cast<std::uint32_t>(rng.below(span));
    return v;
  };
  const auto state = static_cast<std::uint32_t>(rng.below(span));
  auto prefix = draw(static_cast<std::size_t>(rng.below(4)));
  auto cycle = draw(static_cast<std::size_t>(1 + rng.below(3)));
  return SystemPoint(Block(state, n_bits), MessageSequence(n_bits, std::move(prefix), std::move(cycle)));
}

struct ExpansivityReport {
  std::size_t horizon = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  Rational min_random;        ///< over random distinct pairs
  Rational min_compensating;  ///< over steered-merge pairs
  Rational min_overall;
  Rational min_initial_distance_compensating;  ///< d(x, y) itself, for context
  bool conclusive = false;
  std::string note;
};

/// Bounded-horizon look at expansivity: for each sample draws one random
/// distinct pair and one steered-merge pair from a single seeded stream, and
/// reports the smallest max_{1<=n<=horizon} d(G^n x, G^n y). A small value
/// is an observation at this scale, not a proof of non-expansivity.
inline ExpansivityReport expansivity_probe(const SystemConfig& cfg, std::size_t horizon,
                                           std::size_t samples, std::uint64_t seed,
                                           unsigned workers = 1) {
  if (horizon < 1) throw std::invalid_argument("expansivity probe requires horizon >= 1");
  if (samples < 1) throw std::invalid_argument("expansivity probe requires samples >= 1");

  struct Pairs {
    SystemPoint rx, ry, cx, cy;
  };
  SplitMix64 rng(seed);
  std::vector<Pairs> pairs;
  pairs.reserve(samples);
  const std::uint64_t span = std::uint64_t{1} << cfg.n_bits();
  for (std::size_t i = 0; i < samples; ++i) {
    auto rx = random_point(rng, cfg.n_bits());
    auto ry = random_point(rng, cfg.n_bits());
    while (ry == rx) ry = random_point(rng, cfg.n_bits());
    auto cx = random_point(rng, cfg.n_bits());
    const auto offset = static_cast<std::uint32_t>(1 + rng.below(span - 1));
    auto cy = steered_merge(cfg, cx, cx.state.value() ^ offset);
    pairs.push_back({std::move(rx), std::move(ry), std::move(cx), std::move(cy)});
  }

  std::vector<Rational> random_sep(samples), comp_sep(samples), comp_initial(samples);
  detail::parallel_for(samples, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      random_sep[i] = orbit_separation(cfg, pairs[i].rx, pairs[i].ry, horizon);
      comp_sep[i] = orbit_separation(cfg, pairs[i].cx, pairs[i].cy, horizon);
      comp_initial[i] = distance(pairs[i].cx, pairs[i].cy);
    }
  });

  ExpansivityReport r;
  r.horizon = horizon;
  r.samples = samples;
  r.seed = seed;
  r.min_random = *std::min_element(random_sep.begin(), random_sep.end());
  r.min_compensating = *std::min_element(comp_sep.begin(), comp_sep.end());
  r.min_overall = std::min(r.min_random, r.min_compensating);
  r.min_initial_distance_compensating = *std::min_element(comp_initial.begin(), comp_initial.end());
  r.conclusive = false;
  r.note =
      "bounded-horizon observation over finitely many pairs; a small minimum suggests, but does "
      "not prove, that the map is not expansive";
  return r;
}

// ---------------------------------------------------------------------------
// Separated sets and entropy
// ---------------------------------------------------------------------------

enum class SeparationMode { greedy, exact };

inline std::string_view to_string(SeparationMode m) {
  return m == SeparationMode::greedy ? "greedy" : "exact";
}

inline SeparationMode parse_separation_mode(std::string_view s) {
  if (s == "greedy") return SeparationMode::greedy;
  if (s == "exact") return SeparationMode::exact;
  throw std::invalid_argument("unknown separation mode '" + std::string(s) + "'");
}

/// Exact maximum search is a max-clique problem; keep it to one 64-bit mask.
inline constexpr std::size_t kMaxExactCandidates = 64;

struct SeparatedSetReport {
  std::size_t n = 0;
  Rational epsilon;
  std::vector<SystemPoint> points;
  std::size_t cardinality = 0;
  SeparationMode mode = SeparationMode::greedy;
  /// Greedy results only bound the maximum from below.
  bool is_lower_bound = true;
};

namespace detail {

/// A point's first n iterates, prepared for repeated Bowen comparisons.
struct Orbit {
  std::vector<std::uint32_t> states;
  std::vector<MessageSequence> messages;
};

inline Orbit orbit_of(const SystemConfig& cfg, const SystemPoint& p, std::size_t n) {
  Orbit o;
  o.states = state_orbit(cfg, p, n - 1);
  o.messages.reserve(n);
  for (std::size_t i = 0; i < n; ++i) o.messages.push_back(p.message.drop(i));
  return o;
}

/// d_n(a, b) >= eps, evaluated term by term with an early exit.
inline bool separated(const Orbit& a, const Orbit& b, const Rational& eps) {
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    const int h = hamming(a.states[i], b.states[i]);
    if (h >= eps) return true;
    if (h + 1 < eps) continue;  // d_m <= 1
    if (Rational(h) + message_distance(a.messages[i], b.messages[i]) >= eps) return true;
  }
  return false;
}

/// Maximum clique by branch and bound with a greedy-colouring bound.
class MaxClique {
 public:
  explicit MaxClique(std::vector<std::uint64_t> adjacency) : adj_(std::move(adjacency)) {}

  std::uint64_t solve() {
    const std::size_t n = adj_.size();
    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    expand(0, 0, all);
    return best_set_;
  }

 private:
  void expand(std::uint64_t current, int size, std::uint64_t candidates) {
    if (candidates == 0) {
      if (size > best_size_) {
        best_size_ = size;
        best_set_ = current;
      }
      return;
    }
    // Colour candidates greedily in index order.
    std::vector<int> order, colour;
    std::uint64_t uncoloured = candidates;
    int c = 0;
    while (uncoloured) {
      ++c;
      std::uint64_t available = uncoloured;
      while (available) {
        const int v = std::countr_zero(available);
        available &= ~(std::uint64_t{1} << v);
        available &= ~adj_[static_cast<std::size_t>(v)];
        uncoloured &= ~(std::uint64_t{1} << v);
        order.push_back(v);
        colour.push_back(c);
      }
    }
    for (std::size_t i = order.size(); i-- > 0;) {
      if (size + colour[i] <= best_size_) return;
      const int v = order[i];
      const std::uint64_t bit = std::uint64_t{1} << v;
      expand(current | bit, size + 1, candidates & adj_[static_cast<std::size_t>(v)]);
      candidates &= ~bit;
    }
  }

  std::vector<std::uint64_t> adj_;
  int best_size_ = 0;
  std::uint64_t best_set_ = 0;
};

}  // namespace detail

/// An (n, eps)-separated subset of `candidates`.
///
/// greedy: keeps each candidate, in order, that is separated from every
/// point kept so far. exact: maximum subset, for at most 64 candidates.
inline SeparatedSetReport separated_set(const SystemConfig& cfg,
                                        const std::vector<SystemPoint>& candidates, std::size_t n,
                                        const Rational& epsilon, SeparationMode mode,
                                        unsigned workers = 1) {
  if (n < 1) throw std::invalid_argument("separated set requires n >= 1");
  if (epsilon <= 0) throw std::invalid_argument("separation epsilon must be positive");
  if (mode == SeparationMode::exact && candidates.size() > kMaxExactCandidates)
    throw std::invalid_argument("exact separated-set search is limited to " +
                                std::to_string(kMaxExactCandidates) + " candidates, got " +
                                std::to_string(candidates.size()));
  for (const auto& p : candidates) require_compatible(cfg, p);

  SeparatedSetReport report;
  report.n = n;
  report.epsilon = epsilon;
  report.mode = mode;

  if (mode == SeparationMode::greedy) {
    std::vector<detail::Orbit> kept;
    for (const auto& p : candidates) {
      auto orbit = detail::orbit_of(cfg, p, n);
      bool ok = true;
      for (const auto& q : kept)
        if (!detail::separated(orbit, q, epsilon)) {
          ok = false;
          break;
        }
      if (ok) {
        kept.push_back(std::move(orbit));
        report.points.push_back(p);
      }
    }
    report.is_lower_bound = true;
  } else {
    const std::size_t count = candidates.size();
    std::vector<detail::Orbit> orbits(count);
    detail::parallel_for(count, workers, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) orbits[i] = detail::orbit_of(cfg, candidates[i], n);
    });
    std::vector<std::uint64_t> adjacency(count, 0);
    detail::parallel_for(count, workers, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i)
        for (std::size_t j = 0; j < count; ++j)
          if (i != j && detail::separated(orbits[i], orbits[j], epsilon))
            adjacency[i] |= std::uint64_t{1} << j;
    });
    std::uint64_t chosen = detail::MaxClique(std::move(adjacency)).solve();
    if (chosen == 0 && count > 0) chosen = 1;
    for (std::size_t i = 0; i < count; ++i)
      if (chosen >> i & 1U) report.points.push_back(candidates[i]);
    report.is_lower_bound = false;
  }
  report.cardinality = report.points.size();
  return report;
}

/// Largest candidate grid the entropy profile will enumerate.
inline constexpr std::size_t kMaxGridPoints = std::size_t{1} << 20;

/// All states times all message prefixes of `prefix_len` blocks, each
/// followed by an all-zeros tail. Ordered by state, then prefix with block 0
/// most significant.
inline std::vector<SystemPoint> entropy_grid(int n_bits, std::size_t prefix_len) {
  check_bits(n_bits);
  const std::size_t total_bits = static_cast<std::size_t>(n_bits) * (prefix_len + 1);
  if (total_bits > 20)
    throw std::invalid_argument("candidate grid of 2^" + std::to_string(total_bits) +
                                " points exceeds the 2^20 grid guard");
  const std::uint32_t mask = block_mask(n_bits);
  const std::size_t prefixes = std::size_t{1} << (static_cast<std::size_t>(n_bits) * prefix_len);
  std::vector<SystemPoint> grid;
  grid.reserve((std::size_t{1} << n_bits) * prefixes);
  for (std::uint32_t state = 0; state <= mask; ++state)
    for (std::size_t code = 0; code < prefixes; ++code) {
      std::vector<std::uint32_t> prefix(prefix_len);
      for (std::size_t i = 0; i < prefix_len; ++i)
        prefix[i] = static_cast<std::uint32_t>(code >> (n_bits * (prefix_len - 1 - i))) & mask;
      grid.emplace_back(Block(state, n_bits), MessageSequence(n_bits, std::move(prefix), {0}));
    }
  return grid;
}

/// The family behind the 2^{nN} bound: every state and every choice of the
/// first n - 1 blocks. When g is a bijection in the block for each fixed
/// state, distinct members have distinct states at some step < n, so the
/// family is (n, 1)-separated.
inline std::vector<SystemPoint> constructive_family(int n_bits, std::size_t n) {
  if (n < 1) throw std::invalid_argument("constructive family requires n >= 1");
  return entropy_grid(n_bits, n - 1);
}

struct EntropyRow {
  std::size_t n = 0;
  std::size_t greedy = 0;
  std::optional<std::size_t> exact;
  std::size_t h_lower = 0;
  double rate = 0.0;  ///< log(h_lower) / n
  /// 2^{nN}, reported when eps <= 1 and the inner function is negation.
  std::optional<BigInt> constructive_bound;
};

struct EntropyProfile {
  std::size_t grid_size = 0;
  Rational epsilon;
  std::size_t prefix_len = 0;
  std::vector<EntropyRow> rows;
};

/// Lower bounds on H(n, eps) for n = 1..n_max over the entropy grid.
inline EntropyProfile entropy_profile(const SystemConfig& cfg, std::size_t n_max,
                                      const Rational& epsilon, std::size_t prefix_len,
                                      unsigned workers = 1) {
  if (n_max < 1) throw std::invalid_argument("entropy profile requires n_max >= 1");
  if (epsilon <= 0) throw std::invalid_argument("entropy epsilon must be positive");
  const auto grid = entropy_grid(cfg.n_bits(), prefix_len);

  EntropyProfile profile;
  profile.grid_size = grid.size();
  profile.epsilon = epsilon;
  profile.prefix_len = prefix_len;
  for (std::size_t n = 1; n <= n_max; ++n) {
    EntropyRow row;
    row.n = n;
    row.greedy = separated_set(cfg, grid, n, epsilon, SeparationMode::greedy, workers).cardinality;
    row.h_lower = row.greedy;
    if (grid.size() <= kMaxExactCandidates) {
      row.exact = separated_set(cfg, grid, n, epsilon, SeparationMode::exact, workers).cardinality;
      row.h_lower = std::max(row.h_lower, *row.exact);
    }
    row.rate = std::log(static_cast<double>(row.h_lower)) / static_cast<double>(n);
    if (epsilon <= 1 && cfg.inner_is_negation())
      row.constructive_bound = BigInt(1) << (n * static_cast<std::size_t>(cfg.n_bits()));
    profile.rows.push_back(std::move(row));
  }
  return profile;
}

}  // namespace cbcchaos
