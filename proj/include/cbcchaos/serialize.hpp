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

// JSON forms of the library types. Bits are big-endian strings, exact
// values are fraction strings ("9/20").

#include "cbcchaos/chaoslab.hpp"
#include "cbcchaos/cipher.hpp"
#include "cbcchaos/dynamics.hpp"
#include "cbcchaos/graph.hpp"
#include "cbcchaos/rational.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace cbcchaos {

using json = nlohmann::json;

inline json cipher_to_json(const CipherSpec& c) {
  json j = {{"kind", std::string(to_string(c.kind()))},
            {"n_bits", c.n_bits()},
            {"seed", c.seed()},
            {"rounds", c.rounds()}};
  if (c.explicit_table())
    j["table"] = std::vector<std::uint32_t>(c.forward_table().begin(), c.forward_table().end());
  return j;
}

inline CipherSpec cipher_from_json(const json& j) {
  const int n_bits = j.at("n_bits").get<int>();
  if (j.contains("table")) return CipherSpec::from_table(n_bits, j.at("table").get<std::vector<std::uint32_t>>());
  return make_cipher(parse_cipher_kind(j.at("kind").get<std::string>()), n_bits,
                     j.value("seed", std::uint64_t{0}), j.value("rounds", 0));
}

inline json table_to_json(const CipherSpec& c) {
  return std::vector<std::uint32_t>(c.forward_table().begin(), c.forward_table().end());
}

inline json blocks_to_json(const std::vector<std::uint32_t>& words, int n_bits) {
  json out = json::array();
  for (auto w : words) out.push_back(Block(w, n_bits).to_string());
  return out;
}

inline json point_to_json(const SystemPoint& p) {
  return {{"state", p.state.to_string()},
          {"prefix", blocks_to_json(p.message.prefix(), p.n_bits())},
          {"cycle", blocks_to_json(p.message.cycle(), p.n_bits())}};
}

inline SystemPoint point_from_json(const json& j) {
  const Block state = Block::parse(j.at("state").get<std::string>());
  auto parse_list = [&](const char* key) {
    std::vector<std::uint32_t> out;
    if (!j.contains(key)) return out;
    for (const auto& s : j.at(key)) {
      const Block b = Block::parse(s.get<std::string>());
      Block::require_same_size(b, state);
      out.push_back(b.value());
    }
    return out;
  };
  auto prefix = parse_list("prefix");
  auto cycle = parse_list("cycle");
  if (cycle.empty()) cycle.push_back(0);
  return SystemPoint(state, MessageSequence(state.n_bits(), std::move(prefix), std::move(cycle)));
}

inline json exact_to_json(const Rational& r, unsigned digits) {
  return {{"fraction", to_fraction_string(r)}, {"decimal", to_decimal_string(r, digits)}};
}

inline json adjacency_to_json(const TransitionGraph& g) {
  const int n = g.n_bits();
  json adjacency = json::object();
  for (std::uint32_t from = 0; from < g.vertex_count(); ++from) {
    json edges = json::array();
    for (std::uint32_t to = 0; to < g.vertex_count(); ++to)
      if (auto w = g.witness(from, to))
        edges.push_back({{"to", Block(to, n).to_string()}, {"witness", Block(*w, n).to_string()}});
    adjacency[Block(from, n).to_string()] = std::move(edges);
  }
  return {{"n_bits", n}, {"adjacency", std::move(adjacency)}};
}

inline json verdict_to_json(const DevaneyVerdict& v) {
  return {{"strongly_connected", v.strongly_connected},
          {"scc_count", v.scc_count},
          {"scc_sizes", v.scc_sizes},
          {"conclusion", std::string(to_string(v.conclusion))}};
}

}  // namespace cbcchaos
