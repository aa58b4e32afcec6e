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
#include "cbcchaos/graph.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace cbcchaos;
using namespace cbcchaos::testing;

TEST(BuildGraphTest, IdentityXorIsComplete) {
  const SystemConfig cfg(make_cipher(CipherKind::identity, 2));
  const auto g = build_graph(cfg);
  EXPECT_EQ(g.vertex_count(), 4U);
  EXPECT_TRUE(g.is_complete());
  for (std::uint32_t x = 0; x < 4; ++x)
    for (std::uint32_t y = 0; y < 4; ++y) EXPECT_EQ(g.witness(x, y), x ^ y);
}

TEST(BuildGraphTest, IdentityInnerFunctionGivesSelfLoops) {
  const SystemConfig cfg(make_cipher(CipherKind::identity, 2), Convention::paper_complement,
                         identity_table(2));
  const auto g = build_graph(cfg);
  EXPECT_EQ(g.edge_count(), 4U);
  for (std::uint32_t x = 0; x < 4; ++x) EXPECT_EQ(g.successors(x), std::vector<std::uint32_t>{x});
  const auto [connected, scc] = strongly_connected(g);
  EXPECT_FALSE(connected);
  EXPECT_EQ(scc.count(), 4U);
}

TEST(BuildGraphTest, PermutationN4Complete) {
  const SystemConfig cfg(make_cipher(CipherKind::permutation, 4, 1));
  EXPECT_TRUE(build_graph(cfg).is_complete());
}

TEST(BuildGraphTest, CompleteForEveryBijectiveCipher) {
  for (int n = 2; n <= 8; ++n)
    for (auto kind : {CipherKind::identity, CipherKind::permutation, CipherKind::feistel}) {
      if (kind == CipherKind::feistel && n % 2) continue;
      for (auto conv : {Convention::xor_chain, Convention::paper_complement}) {
        const SystemConfig cfg(make_cipher(kind, n, 11, 3), conv);
        ASSERT_TRUE(build_graph(cfg).is_complete()) << "n=" << n;
      }
    }
}

TEST(BuildGraphTest, WitnessSoundness) {
  for (auto conv : {Convention::xor_chain, Convention::paper_complement}) {
    const SystemConfig cfg(make_cipher(CipherKind::feistel, 4, 9, 2), conv);
    const auto g = build_graph(cfg);
    for (std::uint32_t x = 0; x < 16; ++x)
      for (std::uint32_t y : g.successors(x)) {
        const SystemPoint p(Block(x, 4), MessageSequence::constant(4, *g.witness(x, y)));
        EXPECT_EQ(step(cfg, p).state.value(), y);
      }
  }
}

TEST(BuildGraphTest, WorkerCountDoesNotChangeResult) {
  const SystemConfig cfg(make_cipher(CipherKind::permutation, 8, 3), Convention::paper_complement);
  const auto a = build_graph(cfg, 1);
  const auto b = build_graph(cfg, 7);
  EXPECT_EQ(to_dot(a), to_dot(b));
}

TEST(BuildGraphTest, SizeGuard) {
  EXPECT_THROW(build_graph(SystemConfig(make_cipher(CipherKind::identity, 13))),
               std::invalid_argument);
}

TEST(StronglyConnectedTest, HandBuiltGraphs) {
  auto [complete, scc1] = strongly_connected(build_graph(SystemConfig(make_cipher(CipherKind::identity, 3))));
  EXPECT_TRUE(complete);
  EXPECT_EQ(scc1.count(), 1U);

  const auto g = TransitionGraph::from_edges(2, {{0, 1}, {1, 0}});
  auto [connected, scc] = strongly_connected(g);
  EXPECT_FALSE(connected);
  EXPECT_EQ(scc.count(), 3U);
  EXPECT_EQ(scc.component[0], scc.component[1]);
  EXPECT_NE(scc.component[2], scc.component[3]);

  // A long directed cycle closing back to 0 exercises deep DFS without
  // recursion.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> ring;
  for (std::uint32_t v = 0; v < 4096; ++v) ring.emplace_back(v, (v + 1) % 4096);
  auto [ring_connected, ring_scc] = strongly_connected(TransitionGraph::from_edges(12, ring));
  EXPECT_TRUE(ring_connected);
  ring.pop_back();
  auto [chain_connected, chain_scc] = strongly_connected(TransitionGraph::from_edges(12, ring));
  EXPECT_FALSE(chain_connected);
  EXPECT_EQ(chain_scc.count(), 4096U);
}

TEST(StronglyConnectedTest, PartitionsVertices) {
  SplitMix64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (int e = 0; e < 40; ++e)
      edges.emplace_back(static_cast<std::uint32_t>(rng.below(32)),
                         static_cast<std::uint32_t>(rng.below(32)));
    const auto g = TransitionGraph::from_edges(5, edges);
    const auto [connected, scc] = strongly_connected(g);
    EXPECT_EQ(std::accumulate(scc.sizes.begin(), scc.sizes.end(), std::size_t{0}), 32U);
    // Same component iff mutually reachable (Floyd-Warshall closure).
    std::vector<std::vector<bool>> reach(32, std::vector<bool>(32, false));
    for (std::uint32_t v = 0; v < 32; ++v) {
      reach[v][v] = true;
      for (auto w : g.successors(v)) reach[v][w] = true;
    }
    for (int k = 0; k < 32; ++k)
      for (int i = 0; i < 32; ++i)
        for (int j = 0; j < 32; ++j)
          if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    for (int i = 0; i < 32; ++i)
      for (int j = 0; j < 32; ++j)
        ASSERT_EQ(scc.component[i] == scc.component[j], reach[i][j] && reach[j][i]);
    EXPECT_EQ(connected, scc.count() == 1);
  }
}

TEST(DevaneyVerdictTest, Examples) {
  for (int n = 2; n <= 8; n += 2) {
    const auto v = devaney_verdict(SystemConfig(make_cipher(CipherKind::feistel, n, 5, 3)));
    EXPECT_TRUE(v.strongly_connected);
    EXPECT_EQ(v.scc_count, 1U);
    EXPECT_EQ(v.conclusion, DevaneyConclusion::sufficient_condition_holds);
  }
  const auto fails = devaney_verdict(SystemConfig(make_cipher(CipherKind::identity, 3),
                                                  Convention::paper_complement, identity_table(3)));
  EXPECT_FALSE(fails.strongly_connected);
  EXPECT_EQ(fails.scc_count, 8U);
  EXPECT_EQ(fails.conclusion, DevaneyConclusion::condition_fails);
}

TEST(DevaneyVerdictTest, IdentityInnerFunctionFollowsCipherCycles) {
  // With f = identity the block is ignored and every edge is x -> E(x), so
  // the components are exactly the cycles of the permutation E.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto cipher = make_cipher(CipherKind::permutation, 5, seed);
    const auto g = build_graph(SystemConfig(cipher, Convention::paper_complement, identity_table(5)));
    std::vector<std::size_t> cycle_lengths;
    std::vector<bool> seen(32, false);
    for (std::uint32_t v = 0; v < 32; ++v) {
      if (seen[v]) continue;
      std::size_t len = 0;
      for (std::uint32_t w = v; !seen[w]; w = cipher.encrypt_word(w)) {
        seen[w] = true;
        ++len;
      }
      cycle_lengths.push_back(len);
    }
    auto [connected, scc] = strongly_connected(g);
    auto sizes = scc.sizes;
    std::sort(sizes.begin(), sizes.end());
    std::sort(cycle_lengths.begin(), cycle_lengths.end());
    EXPECT_EQ(sizes, cycle_lengths);
    EXPECT_EQ(connected, cycle_lengths.size() == 1);
  }
}

TEST(GraphExportTest, Dot) {
  const auto dot = to_dot(build_graph(SystemConfig(make_cipher(CipherKind::identity, 1))));
  EXPECT_NE(dot.find("\"0\" -> \"1\" [label=\"1\"];"), std::string::npos);
  EXPECT_NE(dot.find("\"1\" -> \"1\" [label=\"0\"];"), std::string::npos);
}
