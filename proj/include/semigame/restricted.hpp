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
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "semigame/common.hpp"
#include "semigame/digraph.hpp"
#include "semigame/rational.hpp"
#include "semigame/rng.hpp"
#include "semigame/simulate.hpp"
#include "semigame/skew.hpp"

namespace semigame {

// Zero-sum game in bimatrix form; payoff(i, j) is Alice's score when Alice
// plays row i against Bob's column j.
class BimatrixGame {
 public:
  explicit BimatrixGame(std::vector<std::vector<Rational>> payoff) : payoff_(std::move(payoff)) {
    require(!payoff_.empty() && !payoff_[0].empty(), "payoff matrix must be nonempty");
    for (const auto& row : payoff_) {
      require(row.size() == payoff_[0].size(), "payoff matrix must be rectangular");
    }
  }

  int rows() const { return static_cast<int>(payoff_.size()); }
  int cols() const { return static_cast<int>(payoff_[0].size()); }
  const Rational& operator()(int i, int j) const { return payoff_[i][j]; }

 private:
  std::vector<std::vector<Rational>> payoff_;
};

// Rock-Paper-Scissors as a bimatrix game: the skew adjacency of the circuit.
inline BimatrixGame rps_game() {
  const Digraph c3 = make_cycle3();
  std::vector<std::vector<Rational>> payoff(3, std::vector<Rational>(3, Rational(0)));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) payoff[i][j] = c3.orient(i, j);
  return BimatrixGame(std::move(payoff));
}

// Both players' remaining counts; the round totals must agree.
struct RestrictionPair {
  std::vector<int> a;
  std::vector<int> b;

  RestrictionPair(std::vector<int> alice, std::vector<int> bob)
      : a(std::move(alice)), b(std::move(bob)) {
    long ta = 0, tb = 0;
    for (int x : a) {
      require(x >= 0, "negative count");
      ta += x;
    }
    for (int x : b) {
      require(x >= 0, "negative count");
      tb += x;
    }
    require(ta == tb, "restriction pair totals must agree");
  }

  long total() const {
    long t = 0;
    for (int x : a) t += x;
    return t;
  }
};

// M(a,b) = sum_{i,j} G(i,j) a_i b_j / N, the exact value under mutual
// restriction; an empty game is worth 0 by convention.
inline Rational restricted_value(const BimatrixGame& g, const RestrictionPair& pair) {
  require(static_cast<int>(pair.a.size()) == g.rows(), "Alice restriction size mismatch");
  require(static_cast<int>(pair.b.size()) == g.cols(), "Bob restriction size mismatch");
  const long n = pair.total();
  if (n == 0) return Rational(0);
  Rational sum = 0;
  for (int i = 0; i < g.rows(); ++i) {
    if (pair.a[i] == 0) continue;
    for (int j = 0; j < g.cols(); ++j) {
      if (pair.b[j] == 0) continue;
      sum += g(i, j) * pair.a[i] * pair.b[j];
    }
  }
  Rational value = sum / n;
  value.canonicalize();
  return value;
}

// The uniform (proportional) per-state rule: Pr(i) = counts_i / sum(counts).
inline std::vector<Rational> proportional_probs(const std::vector<int>& counts) {
  long total = 0;
  for (int c : counts) total += c;
  require(total > 0, "no actions remain on this side");
  std::vector<Rational> probs(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    probs[i] = make_rational(counts[i], total);
  }
  return probs;
}

enum class RestrictedSide { alice, bob };

// A per-state mixture rule for one side: counts of both sides in, that
// side's mixture out (support inside the side's own remaining counts).
using RestrictedRule =
    std::function<std::vector<Rational>(const std::vector<int>& a, const std::vector<int>& b)>;

inline RestrictedRule uniform_rule(RestrictedSide side) {
  return [side](const std::vector<int>& a, const std::vector<int>& b) {
    return proportional_probs(side == RestrictedSide::alice ? a : b);
  };
}

// Exact best response of one side against a fixed opponent rule, by backward
// induction over the (a,b) lattice.  Against a fixed mixture the per-state
// optimization is linear, so a pure maximizing (Alice) or minimizing (Bob)
// action suffices.  Returns Alice's expected score.
inline Rational restricted_best_response(const BimatrixGame& g, const RestrictionPair& pair,
                                         RestrictedSide responder, const RestrictedRule& opponent) {
  require(static_cast<int>(pair.a.size()) == g.rows(), "Alice restriction size mismatch");
  require(static_cast<int>(pair.b.size()) == g.cols(), "Bob restriction size mismatch");

  std::map<std::pair<std::vector<int>, std::vector<int>>, Rational> memo;
  std::function<Rational(std::vector<int>, std::vector<int>)> eval =
      [&](std::vector<int> a, std::vector<int> b) -> Rational {
    long remaining = 0;
    for (int x : a) remaining += x;
    if (remaining == 0) return Rational(0);
    const auto key = std::make_pair(a, b);
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    const auto& own = responder == RestrictedSide::alice ? a : b;
    const auto& opp = responder == RestrictedSide::alice ? b : a;
    const std::vector<Rational> mixture = opponent(a, b);
    require(mixture.size() == opp.size(), "opponent rule has the wrong dimension");
    Rational mixture_sum = 0;
    for (std::size_t j = 0; j < mixture.size(); ++j) {
      require(sgn(mixture[j]) >= 0, "opponent rule returned a negative probability");
      require(sgn(mixture[j]) == 0 || opp[j] > 0,
              "opponent rule plays a depleted option");
      mixture_sum += mixture[j];
    }
    require(mixture_sum == 1, "opponent rule mixture must sum to 1");

    bool first = true;
    Rational best = 0;
    for (std::size_t i = 0; i < own.size(); ++i) {
      if (own[i] == 0) continue;
      Rational score = 0;
      for (std::size_t j = 0; j < opp.size(); ++j) {
        if (sgn(mixture[j]) == 0) continue;
        auto next_a = a;
        auto next_b = b;
        Rational payoff;
        if (responder == RestrictedSide::alice) {
          payoff = g(static_cast<int>(i), static_cast<int>(j));
          --next_a[i];
          --next_b[j];
        } else {
          payoff = g(static_cast<int>(j), static_cast<int>(i));
          --next_a[j];
          --next_b[i];
        }
        score += mixture[j] * (payoff + eval(std::move(next_a), std::move(next_b)));
      }
      const bool better =
          responder == RestrictedSide::alice ? score > best : score < best;
      if (first || better) best = std::move(score);
      first = false;
    }
    memo.emplace(key, best);
    return best;
  };
  return eval(pair.a, pair.b);
}

// Seeded uniform-vs-uniform play; mean Alice score over the reps.
inline MonteCarloResult restricted_monte_carlo(const BimatrixGame& g, const RestrictionPair& pair,
                                               long reps, std::uint64_t seed) {
  require(reps >= 1, "need at least one repetition");
  double sum = 0.0, sum_sq = 0.0;
  for (long rep = 0; rep < reps; ++rep) {
    SplitMix64 rng(substream_seed(seed, rep));
    auto a = pair.a;
    auto b = pair.b;
    long remaining = pair.total();
    Rational score = 0;
    while (remaining > 0) {
      const Distribution pa = Distribution::from_weights(
          std::vector<Integer>(a.begin(), a.end()));
      const Distribution pb = Distribution::from_weights(
          std::vector<Integer>(b.begin(), b.end()));
      const int i = pa.sample(rng);
      const int j = pb.sample(rng);
      score += g(i, j);
      --a[i];
      --b[j];
      --remaining;
    }
    const double s = to_double(score);
    sum += s;
    sum_sq += s * s;
  }
  return detail::summarize(sum, sum_sq, reps);
}

// --- JSON: {"rows": r, "cols": c, "payoffs": [["num/den", ...], ...]} -------

inline nlohmann::json bimatrix_to_json(const BimatrixGame& g) {
  nlohmann::json j;
  j["rows"] = g.rows();
  j["cols"] = g.cols();
  auto payoffs = nlohmann::json::array();
  for (int i = 0; i < g.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (int jj = 0; jj < g.cols(); ++jj) row.push_back(to_fraction_string(g(i, jj)));
    payoffs.push_back(std::move(row));
  }
  j["payoffs"] = std::move(payoffs);
  return j;
}

inline BimatrixGame bimatrix_from_json(const nlohmann::json& j) {
  require(j.is_object() && j.contains("rows") && j.contains("cols") && j.contains("payoffs"),
          "bimatrix JSON needs rows, cols and payoffs");
  const int rows = j["rows"].get<int>();
  const int cols = j["cols"].get<int>();
  require(j["payoffs"].is_array() && static_cast<int>(j["payoffs"].size()) == rows,
          "payoffs row count mismatch");
  std::vector<std::vector<Rational>> payoff;
  for (const auto& row : j["payoffs"]) {
    require(row.is_array() && static_cast<int>(row.size()) == cols, "payoffs column count mismatch");
    std::vector<Rational> r;
    for (const auto& cell : row) r.push_back(rational_from_string(cell.get<std::string>()));
    payoff.push_back(std::move(r));
  }
  return BimatrixGame(std::move(payoff));
}

}  // namespace semigame
