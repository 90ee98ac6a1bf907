// Copyright 2026 The Semigame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "semigame/common.hpp"
#include "semigame/digraph.hpp"

namespace semigame {

// Exhaustive enumeration walks all 2^C(k,2) orientations of the complete
// graph, so it is capped: k=7 already means 2^21 candidates.  Larger k needs
// an explicit cap override.
inline constexpr int kEnumerationCap = 7;

namespace detail {
inline std::vector<Arc> vertex_pairs(int k) {
  std::vector<Arc> pairs;
  for (int u = 0; u < k; ++u)
    for (int v = u + 1; v < k; ++v) pairs.emplace_back(u, v);
  return pairs;
}

inline void check_enumeration_size(int k, int cap) {
  require(k >= 1, "enumeration needs at least one vertex");
  require(k <= cap, "enumeration of " + std::to_string(k) +
                        "-vertex tournaments exceeds the cap of " + std::to_string(cap) +
                        "; pass an explicit cap to override");
}
}  // namespace detail

// Visits every labeled tournament on [k] exactly once, in the deterministic
// order given by the bit pattern over lexicographic vertex pairs (bit=1
// orients u->v for the pair (u,v) with u<v).
inline void for_each_tournament(int k, const std::function<void(const Digraph&)>& visit,
                                int cap = kEnumerationCap) {
  detail::check_enumeration_size(k, cap);
  const auto pairs = detail::vertex_pairs(k);
  const int m = static_cast<int>(pairs.size());
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
    std::vector<Arc> arcs(pairs.size());
    for (int i = 0; i < m; ++i) {
      const auto [u, v] = pairs[i];
      arcs[i] = (bits >> i & 1) ? Arc{u, v} : Arc{v, u};
    }
    visit(Digraph(k, std::move(arcs)));
  }
}

inline std::uint64_t count_tournaments(int k, int cap = kEnumerationCap) {
  detail::check_enumeration_size(k, cap);
  return std::uint64_t{1} << detail::vertex_pairs(k).size();
}

// All labeled Eulerian tournaments on [k], deterministic order, duplicate
// free.  The degree filter runs on plain counters so the k=7 sweep over 2^21
// candidates stays fast; only survivors are materialized.
inline std::vector<Digraph> enumerate_eulerian_tournaments(int k, int cap = kEnumerationCap) {
  detail::check_enumeration_size(k, cap);
  const auto pairs = detail::vertex_pairs(k);
  const int m = static_cast<int>(pairs.size());
  std::vector<Digraph> found;
  std::vector<int> net(k);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
    std::fill(net.begin(), net.end(), 0);
    for (int i = 0; i < m; ++i) {
      const auto [u, v] = pairs[i];
      if (bits >> i & 1) {
        ++net[u];
        --net[v];
      } else {
        ++net[v];
        --net[u];
      }
    }
    bool balanced = true;
    for (int v = 0; v < k && balanced; ++v) balanced = net[v] == 0;
    if (!balanced) continue;
    std::vector<Arc> arcs(pairs.size());
    for (int i = 0; i < m; ++i) {
      const auto [u, v] = pairs[i];
      arcs[i] = (bits >> i & 1) ? Arc{u, v} : Arc{v, u};
    }
    found.emplace_back(k, std::move(arcs));
  }
  return found;
}

}  // namespace semigame
