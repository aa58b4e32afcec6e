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
#include "cbcchaos/parallel.hpp"

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cbcchaos {

/// Edge enumeration visits 2^N * 2^N (state, block) pairs.
inline constexpr int kMaxGraphBits = 12;

/// Directed graph on all N-bit words with an edge x -> y whenever some
/// block m gives g(m, x) = y. Parallel edges are collapsed; the smallest
/// such m is kept as the witness label.
class TransitionGraph {
 public:
  static constexpr std::uint16_t kNoEdge = 0xFFFF;

  explicit TransitionGraph(int n_bits) : n_bits_(n_bits) {
    if (n_bits < 1 || n_bits > kMaxGraphBits)
      throw std::invalid_argument("graph requires 1 <= n_bits <= " +
                                  std::to_string(kMaxGraphBits) + ", got " +
                                  std::to_string(n_bits));
    witness_.assign(vertex_count() * vertex_count(), kNoEdge);
  }

  /// Hand-built graph, mainly for tests.
  static TransitionGraph from_edges(int n_bits,
                                    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
    TransitionGraph g(n_bits);
    for (auto [from, to] : edges) g.add_edge(from, to, 0);
    return g;
  }

  int n_bits() const { return n_bits_; }
  std::size_t vertex_count() const { return std::size_t{1} << n_bits_; }

  bool has_edge(std::uint32_t from, std::uint32_t to) const {
    return witness_[index(from, to)] != kNoEdge;
  }
  std::optional<std::uint32_t> witness(std::uint32_t from, std::uint32_t to) const {
    const auto w = witness_[index(from, to)];
    if (w == kNoEdge) return std::nullopt;
    return w;
  }

  std::vector<std::uint32_t> successors(std::uint32_t from) const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t to = 0; to < vertex_count(); ++to)
      if (has_edge(from, to)) out.push_back(to);
    return out;
  }

  std::size_t edge_count() const {
    std::size_t n = 0;
    for (auto w : witness_) n += w != kNoEdge;
    return n;
  }

  bool is_complete() const { return edge_count() == witness_.size(); }

  /// Keeps the smaller label when the edge already exists.
  void add_edge(std::uint32_t from, std::uint32_t to, std::uint32_t label) {
    auto& slot = witness_[index(from, to)];
    if (slot == kNoEdge || label < slot) slot = static_cast<std::uint16_t>(label);
  }

 private:
  std::size_t index(std::uint32_t from, std::uint32_t to) const {
    if (from >= vertex_count() || to >= vertex_count())
      throw std::out_of_range("vertex out of range");
    return static_cast<std::size_t>(from) * vertex_count() + to;
  }

  int n_bits_;
  std::vector<std::uint16_t> witness_;
};

inline TransitionGraph build_graph(const SystemConfig& cfg, unsigned workers = 1) {
  TransitionGraph g(cfg.n_bits());
  const auto vertices = g.vertex_count();
  // Each worker owns a band of source rows.
  detail::parallel_for(vertices, workers, [&](std::size_t begin, std::size_t end) {
    for (auto x = static_cast<std::uint32_t>(begin); x < end; ++x)
      for (std::uint32_t m = 0; m < vertices; ++m) g.add_edge(x, cfg.next_word(x, m), m);
  });
  return g;
}

struct SccDecomposition {
  /// component[v] is the SCC index of vertex v, in order of discovery.
  std::vector<std::size_t> component;
  std::vector<std::size_t> sizes;

  std::size_t count() const { return sizes.size(); }
};

/// Iterative Tarjan; returns whether the whole vertex set is one SCC.
inline std::pair<bool, SccDecomposition> strongly_connected(const TransitionGraph& g) {
  const std::size_t n = g.vertex_count();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> order(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack;
  SccDecomposition scc;
  scc.component.assign(n, 0);
  std::size_t counter = 0;

  struct Frame {
    std::uint32_t vertex;
    std::uint32_t next_target;
  };
  std::vector<Frame> call;

  for (std::uint32_t root = 0; root < n; ++root) {
    if (order[root] != kUnvisited) continue;
    call.push_back({root, 0});
    order[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!call.empty()) {
      auto& frame = call.back();
      const auto v = frame.vertex;
      bool descended = false;
      while (frame.next_target < n) {
        const auto w = frame.next_target++;
        if (!g.has_edge(v, w)) continue;
        if (order[w] == kUnvisited) {
          order[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[w]) low[v] = std::min(low[v], order[w]);
      }
      if (descended) continue;

      if (low[v] == order[v]) {
        const std::size_t id = scc.sizes.size();
        std::size_t size = 0;
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          scc.component[w] = id;
          ++size;
        } while (w != v);
        scc.sizes.push_back(size);
      }
      call.pop_back();
      if (!call.empty()) {
        const auto parent = call.back().vertex;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }
  const bool connected = scc.sizes.size() == 1;
  return {connected, std::move(scc)};
}

enum class DevaneyConclusion { sufficient_condition_holds, condition_fails };

inline std::string_view to_string(DevaneyConclusion c) {
  return c == DevaneyConclusion::sufficient_condition_holds ? "sufficient-condition-holds"
                                                            : "condition-fails";
}

/// Strong connectivity of the transition graph is sufficient for the CBC
/// map to be strongly transitive and regular, hence chaotic. A failing
/// condition says nothing about the converse.
struct DevaneyVerdict {
  bool strongly_connected = false;
  std::size_t scc_count = 0;
  std::vector<std::size_t> scc_sizes;
  DevaneyConclusion conclusion = DevaneyConclusion::condition_fails;
};

inline DevaneyVerdict verdict_from(const TransitionGraph& g) {
  auto [connected, scc] = strongly_connected(g);
  DevaneyVerdict v;
  v.strongly_connected = connected;
  v.scc_count = scc.count();
  v.scc_sizes = std::move(scc.sizes);
  v.conclusion = connected ? DevaneyConclusion::sufficient_condition_holds
                           : DevaneyConclusion::condition_fails;
  return v;
}

inline DevaneyVerdict devaney_verdict(const SystemConfig& cfg, unsigned workers = 1) {
  return verdict_from(build_graph(cfg, workers));
}

/// Graphviz rendering, one labelled edge per (source, target).
inline std::string to_dot(const TransitionGraph& g) {
  std::ostringstream out;
  const int n = g.n_bits();
  out << "digraph transitions {\n";
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
    out << "  \"" << Block(v, n).to_string() << "\";\n";
  for (std::uint32_t from = 0; from < g.vertex_count(); ++from)
    for (std::uint32_t to = 0; to < g.vertex_count(); ++to)
      if (auto w = g.witness(from, to))
        out << "  \"" << Block(from, n).to_string() << "\" -> \"" << Block(to, n).to_string()
            << "\" [label=\"" << Block(*w, n).to_string() << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace cbcchaos
