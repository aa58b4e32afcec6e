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
#include "cbcchaos/splitmix.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace cbcchaos::testing {

/// "01,10|00" -> prefix [01, 10], cycle [00]. "|11" has an empty prefix.
inline MessageSequence seq(const std::string& text) {
  const auto bar = text.find('|');
  auto split = [](const std::string& s) {
    std::vector<Block> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
      if (!item.empty()) out.push_back(Block::parse(item));
    return out;
  };
  const auto prefix = split(text.substr(0, bar));
  const auto cycle = split(text.substr(bar + 1));
  return MessageSequence(prefix, cycle);
}

inline SystemPoint pt(const std::string& state, const std::string& message) {
  return SystemPoint(Block::parse(state), seq(message));
}

inline Block blk(const std::string& bits) { return Block::parse(bits); }

/// Point generator with wider prefixes than the library sampler, and a
/// bias towards sharing blocks so that near-equal pairs are common.
inline SystemPoint random_test_point(SplitMix64& rng, int n_bits, const SystemPoint* near = nullptr) {
  const std::uint64_t span = std::uint64_t{1} << n_bits;
  auto draw = [&](std::size_t count) {
    std::vector<std::uint32_t> v(count);
    for (auto& w : v) w = static_cast<std::uint32_t>(rng.below(span));
    return v;
  };
  if (near != nullptr && rng.below(2) == 0) {
    const std::size_t keep = rng.below(6);
    auto head = near->message.head(keep);
    MessageSequence tail(n_bits, draw(rng.below(3)), draw(1 + rng.below(3)));
    const std::uint32_t state = rng.below(3) == 0 ? static_cast<std::uint32_t>(rng.below(span))
                                                  : near->state.value();
    return SystemPoint(Block(state, n_bits), MessageSequence::concat(head, tail));
  }
  const auto state = static_cast<std::uint32_t>(rng.below(span));
  auto prefix = draw(rng.below(5));
  auto cycle = draw(1 + rng.below(3));
  return SystemPoint(Block(state, n_bits), MessageSequence(n_bits, std::move(prefix), std::move(cycle)));
}

}  // namespace cbcchaos::testing
