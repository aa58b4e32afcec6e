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
#include "cbcchaos/serialize.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace cbcchaos;
using namespace cbcchaos::testing;

TEST(SerializeTest, PointRoundTrip) {
  SplitMix64 rng(3);
  for (int n_bits : {1, 4, 16})
    for (int i = 0; i < 50; ++i) {
      const auto p = random_test_point(rng, n_bits);
      EXPECT_EQ(point_from_json(point_to_json(p)), p);
    }
  const auto j = point_to_json(pt("0101", "0011|0000"));
  EXPECT_EQ(j.dump(), R"({"cycle":["0000"],"prefix":["0011"],"state":"0101"})");
}

TEST(SerializeTest, PointRejectsMixedSizes) {
  EXPECT_THROW(point_from_json(json::parse(R"({"state":"01","prefix":["011"],"cycle":["00"]})")),
               std::invalid_argument);
}

TEST(SerializeTest, CipherRoundTrip) {
  for (const auto& c : {make_cipher(CipherKind::feistel, 6, 12, 3),
                        make_cipher(CipherKind::permutation, 5, 9),
                        CipherSpec::from_table(2, {1, 3, 0, 2})}) {
    const auto back = cipher_from_json(cipher_to_json(c));
    EXPECT_EQ(table_to_json(back), table_to_json(c));
  }
  EXPECT_EQ(cipher_to_json(make_cipher(CipherKind::permutation, 2, 1)).dump(),
            R"({"kind":"permutation","n_bits":2,"rounds":0,"seed":1})");
  EXPECT_EQ(table_to_json(make_cipher(CipherKind::permutation, 2, 1)).dump(), "[2,0,3,1]");
}

TEST(SerializeTest, ExactValues) {
  const auto j = exact_to_json(Rational(29, 20), 3);
  EXPECT_EQ(j["fraction"], "29/20");
  EXPECT_EQ(j["decimal"], "1.450");
}

TEST(SerializeTest, AdjacencyAndVerdict) {
  const auto g = build_graph(SystemConfig(make_cipher(CipherKind::identity, 1)));
  const auto j = adjacency_to_json(g);
  EXPECT_EQ(j["adjacency"]["0"].size(), 2U);
  EXPECT_EQ(j["adjacency"]["1"][0]["witness"], "1");
  const auto v = verdict_to_json(verdict_from(g));
  EXPECT_EQ(v["conclusion"], "sufficient-condition-holds");
  EXPECT_EQ(v["scc_count"], 1);
}
