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

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace cbcchaos::detail {

/// Splits [0, count) into `workers` contiguous chunks and runs
/// fn(begin, end) on each. Callers write only to their own index range, so
/// results do not depend on the worker count.
template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  workers = std::max(1U, workers);
  if (workers == 1 || count < 2) {
    fn(std::size_t{0}, count);
    return;
  }
  const std::size_t chunks = std::min<std::size_t>(workers, count);
  const std::size_t per = (count + chunks - 1) / chunks;
  std::vector<std::jthread> pool;
  pool.reserve(chunks);
  for (std::size_t begin = 0; begin < count; begin += per) {
    const std::size_t end = std::min(count, begin + per);
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
}

}  // namespace cbcchaos::detail
