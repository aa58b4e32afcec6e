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
// Builds a mixing witness for a small system and prints its orbit.

#include "cbcchaos/cbcchaos.hpp"

#include <iostream>

int main() {
  using namespace cbcchaos;
  const SystemConfig cfg(make_cipher(CipherKind::feistel, 4, 7, 3));
  const Ball ball(SystemPoint(Block::parse("1010"), MessageSequence(4, {3, 9}, {0})),
                  Rational(1, 100));
  const SystemPoint target(Block::parse("0001"), MessageSequence::constant(4, 15));

  const auto w = mixing_witness(cfg, ball, target);
  std::cout << "k = " << w.k << ", distance to center = "
            << to_fraction_string(distance(ball.center, w.constructed_point)) << "\n";
  const auto orbit = iterate(cfg, w.constructed_point, w.steps);
  for (std::size_t i = 0; i < orbit.size(); ++i)
    std::cout << i << "  " << orbit[i].state.to_string() << "  next "
              << orbit[i].message.block(0).to_string() << "\n";
  std::cout << (verify_mixing(cfg, w) ? "reached target\n" : "missed target\n");
  return 0;
}
