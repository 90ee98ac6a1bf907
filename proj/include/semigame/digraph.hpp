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

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "semigame/common.hpp"
#include "semigame/rng.hpp"

namespace semigame {

using Arc = std::pair<int, int>;

// Loop-free digraph with at most one arc per unordered vertex pair, stored as
// a dense k x k orientation table for O(1) queries.  Vertices are 0..k-1 and
// k is capped at 64 so neighborhoods double as bitmasks.  Immutable after
// construction and safely shareable across threads.
class Digraph {
 public:
  Digraph(int k, std::vector<Arc> arcs) : k_(k) {
    require(k >= 0, "vertex count must be non-negative");
    require(k <= 64, "vertex count exceeds the supported maximum of 64");
    orient_.assign(static_cast<std::size_t>(k) * k, 0);
    out_mask_.assign(k, 0);
    in_mask_.assign(k, 0);
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      const auto [u, v] = arcs[i];
      const std::string where = "arcs[" + std::to_string(i) + "]";
      require(u >= 0 && u < k && v >= 0 && v < k,
              where + " = (" + std::to_string(u) + "," + std::to_string(v) + "): vertex out of range");
      require(u != v, where + ": self-loop at vertex " + std::to_string(u));
      require(orient(u, v) == 0,
              where + ": pair {" + std::to_string(u) + "," + std::to_string(v) +
                  "} already carries an arc");
      orient_[index(u, v)] = 1;
      orient_[index(v, u)] = -1;
      out_mask_[u] |= std::uint64_t{1} << v;
      in_mask_[v] |= std::uint64_t{1} << u;
    }
  }

  int vertex_count() const { return k_; }

  // +1 if u->v, -1 if v->u, 0 if the pair is unoriented.
  int orient(int u, int v) const { return orient_[index(u, v)]; }

  bool has_arc(int u, int v) const { return orient(u, v) == 1; }

  std::uint64_t out_mask(int v) const {
    check_vertex(v);
    return out_mask_[v];
  }
  std::uint64_t in_mask(int v) const {
    check_vertex(v);
    return in_mask_[v];
  }

  std::vector<int> out_neighbors(int v) const { return mask_to_list(out_mask(v)); }
  std::vector<int> in_neighbors(int v) const { return mask_to_list(in_mask(v)); }

  int out_degree(int v) const { return std::popcount(out_mask(v)); }
  int in_degree(int v) const { return std::popcount(in_mask(v)); }

  // Arcs sorted lexicographically; this is also the serialization order.
  std::vector<Arc> arcs() const {
    std::vector<Arc> result;
    for (int u = 0; u < k_; ++u)
      for (int v = 0; v < k_; ++v)
        if (orient(u, v) == 1) result.emplace_back(u, v);
    return result;
  }

  std::size_t arc_count() const {
    std::size_t n = 0;
    for (int v = 0; v < k_; ++v) n += static_cast<std::size_t>(out_degree(v));
    return n;
  }

  bool operator==(const Digraph& other) const {
    return k_ == other.k_ && orient_ == other.orient_;
  }

  // Stable 64-bit FNV-1a over "k=<k>;" followed by "u->v;" per sorted arc,
  // rendered as 16 lowercase hex digits.  Used as the cache key.
  std::string fingerprint() const {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    auto feed = [&h](const std::string& s) {
      for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
      }
    };
    feed("k=" + std::to_string(k_) + ";");
    for (const auto& [u, v] : arcs()) {
      feed(std::to_string(u) + "->" + std::to_string(v) + ";");
    }
    static const char* digits = "0123456789abcdef";
    std::string hex(16, '0');
    for (int i = 15; i >= 0; --i) {
      hex[i] = digits[h & 0xF];
      h >>= 4;
    }
    return hex;
  }

 private:
  std::size_t index(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return static_cast<std::size_t>(u) * k_ + v;
  }

  void check_vertex(int v) const {
    require(v >= 0 && v < k_, "vertex " + std::to_string(v) + " out of range [0," +
                                  std::to_string(k_) + ")");
  }

  static std::vector<int> mask_to_list(std::uint64_t mask) {
    std::vector<int> list;
    while (mask) {
      const int v = std::countr_zero(mask);
      list.push_back(v);
      mask &= mask - 1;
    }
    return list;
  }

  int k_ = 0;
  std::vector<std::int8_t> orient_;
  std::vector<std::uint64_t> out_mask_, in_mask_;
};

inline bool is_tournament(const Digraph& d) {
  const int k = d.vertex_count();
  for (int u = 0; u < k; ++u)
    for (int v = u + 1; v < k; ++v)
      if (d.orient(u, v) == 0) return false;
  return true;
}

inline bool is_eulerian(const Digraph& d) {
  for (int v = 0; v < d.vertex_count(); ++v)
    if (d.out_degree(v) != d.in_degree(v)) return false;
  return true;
}

// --- Named generators --------------------------------------------------

// The Rock-Paper-Scissors circuit, oriented so that vertex i+1 (mod 3) beats
// vertex i.  With the labels 0=Rock, 1=Paper, 2=Scissors this is the standard
// game: Paper beats Rock, Scissors beats Paper, Rock beats Scissors.
inline Digraph make_cycle3() { return Digraph(3, {{1, 0}, {2, 1}, {0, 2}}); }

// Directed path 0 -> 1 -> ... -> n-1.
inline Digraph make_directed_path(int n) {
  require(n >= 1, "directed path needs at least one vertex");
  std::vector<Arc> arcs;
  for (int i = 0; i + 1 < n; ++i) arcs.emplace_back(i, i + 1);
  return Digraph(n, std::move(arcs));
}

// Circulant digraph: i -> i+s (mod k) for each offset s.  Offsets that would
// orient some pair twice (s and k-s together, or s = k/2 twice) are rejected
// by the constructor's one-arc invariant.
inline Digraph make_circulant(int k, const std::vector<int>& offsets) {
  require(k >= 1, "circulant needs at least one vertex");
  std::vector<Arc> arcs;
  for (int s : offsets) {
    require(s % k != 0, "circulant offset " + std::to_string(s) + " is a self-loop offset");
    for (int i = 0; i < k; ++i) {
      arcs.emplace_back(i, (i + s % k + k) % k);
    }
  }
  return Digraph(k, std::move(arcs));
}

inline Digraph make_empty(int k) { return Digraph(k, {}); }

// Parses "cycle3" | "rps" | "path:<n>" | "circulant:<k>:<s1,s2,...>" | "empty:<k>".
inline Digraph make_named(const std::string& id) {
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
      const std::size_t pos = s.find(sep, start);
      parts.push_back(s.substr(start, pos - start));
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
    return parts;
  };
  auto to_int = [](const std::string& s) {
    try {
      std::size_t used = 0;
      const int value = std::stoi(s, &used);
      require(used == s.size(), "trailing characters in integer '" + s + "'");
      return value;
    } catch (const input_error&) {
      throw;
    } catch (const std::exception&) {
      throw input_error("malformed integer '" + s + "' in graph id");
    }
  };

  const auto parts = split(id, ':');
  const std::string& name = parts[0];
  if (name == "cycle3" || name == "rps") {
    require(parts.size() == 1, "generator '" + name + "' takes no parameters");
    return make_cycle3();
  }
  if (name == "path") {
    require(parts.size() == 2, "usage: path:<n>");
    return make_directed_path(to_int(parts[1]));
  }
  if (name == "circulant") {
    require(parts.size() == 3, "usage: circulant:<k>:<s1,s2,...>");
    std::vector<int> offsets;
    for (const auto& tok : split(parts[2], ',')) offsets.push_back(to_int(tok));
    return make_circulant(to_int(parts[1]), offsets);
  }
  if (name == "empty") {
    require(parts.size() == 2, "usage: empty:<k>");
    return make_empty(to_int(parts[1]));
  }
  throw input_error("unknown graph generator '" + name + "'");
}

// Each unordered pair oriented by an independent fair coin.
inline Digraph random_tournament(int k, std::uint64_t seed) {
  require(k >= 1, "random tournament needs at least one vertex");
  SplitMix64 rng(seed);
  std::vector<Arc> arcs;
  for (int u = 0; u < k; ++u)
    for (int v = u + 1; v < k; ++v)
      arcs.push_back(rng.next() & 1 ? Arc{u, v} : Arc{v, u});
  return Digraph(k, std::move(arcs));
}

// Each unordered pair independently: no arc, u->v, or v->u, 1/3 each.
inline Digraph random_digraph(int k, std::uint64_t seed) {
  require(k >= 1, "random digraph needs at least one vertex");
  SplitMix64 rng(seed);
  std::vector<Arc> arcs;
  for (int u = 0; u < k; ++u)
    for (int v = u + 1; v < k; ++v) {
      switch (rng.uniform_below(3)) {
        case 1: arcs.push_back({u, v}); break;
        case 2: arcs.push_back({v, u}); break;
        default: break;
      }
    }
  return Digraph(k, std::move(arcs));
}

// --- JSON format: {"k": <int>, "arcs": [[u,v], ...]} -------------------

inline nlohmann::json digraph_to_json(const Digraph& d) {
  nlohmann::json j;
  j["k"] = d.vertex_count();
  auto arcs = nlohmann::json::array();
  for (const auto& [u, v] : d.arcs()) arcs.push_back({u, v});
  j["arcs"] = std::move(arcs);
  return j;
}

inline Digraph digraph_from_json(const nlohmann::json& j) {
  require(j.is_object() && j.contains("k") && j.contains("arcs"),
          "digraph JSON must be an object with 'k' and 'arcs'");
  require(j["k"].is_number_integer(), "'k' must be an integer");
  require(j["arcs"].is_array(), "'arcs' must be an array");
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < j["arcs"].size(); ++i) {
    const auto& e = j["arcs"][i];
    require(e.is_array() && e.size() == 2 && e[0].is_number_integer() && e[1].is_number_integer(),
            "arcs[" + std::to_string(i) + "] must be a pair of integers");
    arcs.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return Digraph(j["k"].get<int>(), std::move(arcs));
}

inline Digraph digraph_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw input_error(std::string("digraph JSON parse error: ") + e.what());
  }
  return digraph_from_json(j);
}

}  // namespace semigame
