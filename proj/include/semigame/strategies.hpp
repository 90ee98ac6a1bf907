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
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "semigame/common.hpp"
#include "semigame/digraph.hpp"
#include "semigame/distribution.hpp"
#include "semigame/rational.hpp"
#include "semigame/solver.hpp"

namespace semigame {

// --- Rei's strategies -------------------------------------------------------

// Uniform with all three options, 2/3 on the beater with two, forced with
// one; counts are ignored.  Only defined on the 3-vertex circuit.
inline Distribution greedy_rps(const Digraph& d, const RestrictionVector& r) {
  require(d.vertex_count() == 3 && is_tournament(d) && is_eulerian(d),
          "the greedy strategy is defined on the 3-vertex circuit only");
  require(r.size() == 3, "restriction vector must have 3 entries");
  const auto supp = r.support();
  require(!supp.empty(), "greedy strategy needs a nonempty restriction vector");
  std::vector<Rational> p(3, Rational(0));
  if (supp.size() == 3) {
    p[0] = p[1] = p[2] = make_rational(1, 3);
  } else if (supp.size() == 2) {
    int winner = supp[0], loser = supp[1];
    if (d.has_arc(loser, winner)) std::swap(winner, loser);
    p[winner] = make_rational(2, 3);
    p[loser] = make_rational(1, 3);
  } else {
    p[supp[0]] = 1;
  }
  return Distribution(std::move(p));
}

// Uniform over all of V(D) while every option remains, uniform over the
// remaining support afterwards ("plays arbitrarily" pinned to uniform).
inline Distribution uniform_until_depletion(const Digraph& d, const RestrictionVector& r) {
  require(r.size() == d.vertex_count(), "dimension mismatch");
  const auto supp = r.support();
  require(!supp.empty(), "state has no options left");
  return Distribution::uniform_over(d.vertex_count(), supp);
}

struct GreedyRps {};
struct UniformUntilDepletion {};

// Proportional play on the trimmed baseline r' (entries below ceil(M^{2/3})
// zeroed, M = max r0) until some trimmed option depletes, then uniform over
// the remaining support.
struct TrimmedProportional {
  RestrictionVector baseline;   // r0 as given
  RestrictionVector trimmed;    // r'
  int threshold = 0;            // ceil(M^{2/3})
  std::shared_ptr<const Distribution> mixture;  // r' / sum(r')
};

// Smallest integer c with c^3 >= m^2, i.e. ceil(m^{2/3}); integer-only.
inline int ceil_pow_two_thirds(long m) {
  require(m >= 0, "negative maximum");
  if (m <= 1) return static_cast<int>(m);
  const long long target = static_cast<long long>(m) * m;
  long long c = 1;
  while (c * c * c < target) ++c;
  return static_cast<int>(c);
}

inline TrimmedProportional trimmed_proportional(const Digraph& d, const RestrictionVector& r0) {
  require(r0.size() == d.vertex_count(), "dimension mismatch");
  require(r0.total() > 0, "trimmed strategy needs a nonempty baseline");
  long m = 0;
  for (int v = 0; v < r0.size(); ++v) m = std::max<long>(m, r0[v]);
  const int threshold = ceil_pow_two_thirds(m);
  std::vector<int> trimmed(r0.size(), 0);
  std::vector<Integer> weights(r0.size(), Integer(0));
  for (int v = 0; v < r0.size(); ++v) {
    if (r0[v] >= threshold) {
      trimmed[v] = r0[v];
      weights[v] = r0[v];
    }
  }
  // The maximum always survives the trim.
  ensure(*std::max_element(trimmed.begin(), trimmed.end()) > 0, "trim removed every option");
  return TrimmedProportional{r0, RestrictionVector(std::move(trimmed)), threshold,
                             std::make_shared<Distribution>(Distribution::from_weights(weights))};
}

// Fixed per-support distributions; the table key is the sorted support list.
struct ObliviousTable {
  std::map<std::vector<int>, Distribution> by_support;
};

// Plays the stored LP witness of the solved state.
struct OptimalFromTable {
  std::shared_ptr<const ValueTable> table;
  std::shared_ptr<const Digraph> digraph;
  // Witness cache; realization is pure, this only memoizes it (not
  // thread-safe by design: simulations are single-threaded per worker).
  std::shared_ptr<std::map<RestrictionVector, Distribution>> memo =
      std::make_shared<std::map<RestrictionVector, Distribution>>();
};

using ReiStrategy =
    std::variant<GreedyRps, UniformUntilDepletion, TrimmedProportional, ObliviousTable,
                 OptimalFromTable>;

inline Distribution realize(const ReiStrategy& strategy, const Digraph& d,
                            const RestrictionVector& r) {
  require(r.total() > 0, "cannot realize a strategy on the zero vector");
  Distribution result = std::visit(
      [&](const auto& s) -> Distribution {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GreedyRps>) {
          return greedy_rps(d, r);
        } else if constexpr (std::is_same_v<T, UniformUntilDepletion>) {
          return uniform_until_depletion(d, r);
        } else if constexpr (std::is_same_v<T, TrimmedProportional>) {
          bool trimmed_alive = true;
          for (int v : s.trimmed.support())
            if (r[v] == 0) trimmed_alive = false;
          if (trimmed_alive) return *s.mixture;
          return uniform_until_depletion(d, r);
        } else if constexpr (std::is_same_v<T, ObliviousTable>) {
          auto it = s.by_support.find(r.support());
          require(it != s.by_support.end(),
                  "oblivious table has no entry for support of (" + r.to_string() + ")");
          return it->second;
        } else {
          static_assert(std::is_same_v<T, OptimalFromTable>);
          auto it = s.memo->find(r);
          if (it != s.memo->end()) return it->second;
          require(s.table != nullptr && s.digraph != nullptr,
                  "optimal-from-table strategy is unbound");
          require(s.table->contains(r),
                  "value table has no solved entry for (" + r.to_string() + ")");
          Distribution witness = solve_state(*s.digraph, r, *s.table).witness;
          s.memo->emplace(r, witness);
          return witness;
        }
      },
      strategy);
  require(support_within(result, r.support()),
          "realized distribution plays outside supp(r) at (" + r.to_string() + ")");
  return result;
}

// StrategySpec overload of the solver's best-response recursion.
inline Rational best_response_value(const Digraph& d, const RestrictionVector& r,
                                    const ReiStrategy& rei) {
  return best_response_value_against(d, r, [&](const RestrictionVector& state) {
    return realize(rei, d, state);
  });
}

// --- Norman's strategies -----------------------------------------------------

struct FixedVertex {
  int v = 0;
};
struct PerRoundBestResponse {};

using NormanStrategy = std::variant<FixedVertex, PerRoundBestResponse>;

struct BestResponseMove {
  int vertex = 0;
  Rational gain;
};

// argmax_v of the round gain against mixture p, ties broken by lowest index.
// Integer weights keep the comparison exact without rational churn.
inline BestResponseMove norman_best_response(const Digraph& d, const Distribution& p) {
  const int k = d.vertex_count();
  require(p.size() == k, "mixture dimension mismatch");
  int best = 0;
  Integer best_gain;
  for (int v = 0; v < k; ++v) {
    Integer gain = 0;
    for (int u = 0; u < k; ++u) {
      const int o = d.orient(v, u);
      if (o == 1) gain += p.weights()[u];
      else if (o == -1) gain -= p.weights()[u];
    }
    if (v == 0 || gain > best_gain) {
      best = v;
      best_gain = std::move(gain);
    }
  }
  Rational gain_value(best_gain, p.weight_total());
  gain_value.canonicalize();
  return BestResponseMove{best, std::move(gain_value)};
}

inline int norman_move(const NormanStrategy& strategy, const Digraph& d,
                       const Distribution& rei_mixture) {
  return std::visit(
      [&](const auto& s) -> int {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FixedVertex>) {
          require(s.v >= 0 && s.v < d.vertex_count(), "fixed vertex out of range");
          return s.v;
        } else {
          return norman_best_response(d, rei_mixture).vertex;
        }
      },
      strategy);
}

// --- JSON --------------------------------------------------------------------

inline std::string support_key(const std::vector<int>& support) {
  std::string key;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (i) key += ',';
    key += std::to_string(support[i]);
  }
  return key;
}

// Parses a sorted support key like "0,2,3".
inline std::vector<int> support_from_key(const std::string& key) {
  std::vector<int> support;
  std::stringstream ss(key);
  std::string token;
  while (std::getline(ss, token, ',')) {
    try {
      support.push_back(std::stoi(token));
    } catch (const std::exception&) {
      throw input_error("malformed support key '" + key + "'");
    }
  }
  require(!support.empty() && std::is_sorted(support.begin(), support.end()) &&
              std::adjacent_find(support.begin(), support.end()) == support.end(),
          "support key must be a sorted duplicate-free vertex list: '" + key + "'");
  return support;
}

inline nlohmann::json distribution_to_json(const Distribution& p) {
  auto arr = nlohmann::json::array();
  for (int v = 0; v < p.size(); ++v) arr.push_back(to_fraction_string(p[v]));
  return arr;
}

inline Distribution distribution_from_json(const nlohmann::json& j) {
  require(j.is_array() && !j.empty(), "distribution JSON must be a nonempty array");
  std::vector<Rational> probs;
  for (const auto& e : j) probs.push_back(rational_from_string(e.get<std::string>()));
  return Distribution(std::move(probs));
}

inline nlohmann::json rei_strategy_to_json(const ReiStrategy& strategy) {
  nlohmann::json j;
  j["player"] = "rei";
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GreedyRps>) {
          j["variant"] = "greedy-rps";
        } else if constexpr (std::is_same_v<T, UniformUntilDepletion>) {
          j["variant"] = "uniform-until-depletion";
        } else if constexpr (std::is_same_v<T, TrimmedProportional>) {
          j["variant"] = "trimmed-proportional";
          j["params"]["r0"] = s.baseline.to_string();
        } else if constexpr (std::is_same_v<T, ObliviousTable>) {
          j["variant"] = "oblivious-table";
          auto& table = j["params"]["table"];
          table = nlohmann::json::object();
          for (const auto& [supp, dist] : s.by_support) {
            table[support_key(supp)] = distribution_to_json(dist);
          }
        } else {
          j["variant"] = "optimal-from-table";
        }
      },
      strategy);
  return j;
}

inline nlohmann::json norman_strategy_to_json(const NormanStrategy& strategy) {
  nlohmann::json j;
  j["player"] = "norman";
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FixedVertex>) {
          j["variant"] = "fixed-vertex";
          j["params"]["v"] = s.v;
        } else {
          j["variant"] = "best-response";
        }
      },
      strategy);
  return j;
}

// Parses oblivious tables and the parameterless variants; optimal-from-table
// must be bound to a solved table by the caller afterwards.
inline ReiStrategy rei_strategy_from_json(const nlohmann::json& j) {
  require(j.is_object() && j.value("player", "") == "rei", "not a Rei strategy");
  const std::string variant = j.value("variant", "");
  if (variant == "greedy-rps") return GreedyRps{};
  if (variant == "uniform-until-depletion") return UniformUntilDepletion{};
  if (variant == "optimal-from-table") return OptimalFromTable{};
  if (variant == "oblivious-table") {
    ObliviousTable table;
    require(j.contains("params") && j["params"].contains("table"),
            "oblivious-table strategy needs params.table");
    for (const auto& [key, value] : j["params"]["table"].items()) {
      table.by_support.emplace(support_from_key(key), distribution_from_json(value));
    }
    return table;
  }
  throw input_error("unknown Rei strategy variant '" + variant + "'");
}

inline NormanStrategy norman_strategy_from_json(const nlohmann::json& j) {
  require(j.is_object() && j.value("player", "") == "norman", "not a Norman strategy");
  const std::string variant = j.value("variant", "");
  if (variant == "best-response") return PerRoundBestResponse{};
  if (variant == "fixed-vertex") {
    require(j.contains("params") && j["params"].contains("v"), "fixed-vertex needs params.v");
    return FixedVertex{j["params"]["v"].get<int>()};
  }
  throw input_error("unknown Norman strategy variant '" + variant + "'");
}

}  // namespace semigame
