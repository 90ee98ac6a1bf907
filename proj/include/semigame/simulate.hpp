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

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "semigame/common.hpp"
#include "semigame/digraph.hpp"
#include "semigame/distribution.hpp"
#include "semigame/rational.hpp"
#include "semigame/rng.hpp"
#include "semigame/solver.hpp"
#include "semigame/strategies.hpp"

namespace semigame {

struct PlayRound {
  int rei_move = 0;
  int norman_move = 0;
  int delta = 0;  // Norman's score change: +1/-1/0
};

struct PlayRecord {
  std::uint64_t seed = 0;
  std::vector<PlayRound> rounds;
  long final_score = 0;  // Norman's score
};

// One full game.  Per round: Rei's mixture is realized from her strategy,
// Norman moves against that mixture (he sees the strategy, not the draw),
// Rei's move is drawn, the score delta follows the arc orientation.
// Identical inputs and seed give a bit-identical transcript.
inline PlayRecord play_game(const Digraph& d, const RestrictionVector& r0,
                            const ReiStrategy& rei, const NormanStrategy& norman,
                            std::uint64_t seed) {
  require(r0.size() == d.vertex_count(), "dimension mismatch");
  SplitMix64 rng(seed);
  PlayRecord record;
  record.seed = seed;
  RestrictionVector r = r0;
  while (r.total() > 0) {
    const Distribution p = realize(rei, d, r);
    const int norman_vertex = norman_move(norman, d, p);
    const int rei_vertex = p.sample(rng);
    const int delta = d.orient(norman_vertex, rei_vertex);
    record.rounds.push_back(PlayRound{rei_vertex, norman_vertex, delta});
    record.final_score += delta;
    r = r.minus(rei_vertex);
  }
  return record;
}

// Test-mode invariants: round count, per-vertex move counts, score total and
// per-round delta orientation.
inline void validate_record(const Digraph& d, const RestrictionVector& r0,
                            const PlayRecord& record) {
  ensure(static_cast<long>(record.rounds.size()) == r0.total(),
         "record length must equal total(r0)");
  std::vector<int> used(d.vertex_count(), 0);
  long score = 0;
  for (const auto& round : record.rounds) {
    ++used[round.rei_move];
    score += round.delta;
    ensure(round.delta == d.orient(round.norman_move, round.rei_move),
           "round delta does not match the arc orientation");
  }
  ensure(score == record.final_score, "final score is not the delta sum");
  for (int v = 0; v < d.vertex_count(); ++v) {
    ensure(used[v] == r0[v], "Rei's move counts do not match r0");
  }
}

struct MonteCarloResult {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;
  long reps = 0;
};

namespace detail {
inline MonteCarloResult summarize(double sum, double sum_sq, long reps) {
  MonteCarloResult result;
  result.reps = reps;
  result.mean = sum / static_cast<double>(reps);
  const double variance =
      reps > 1 ? (sum_sq - sum * sum / static_cast<double>(reps)) / static_cast<double>(reps - 1)
               : 0.0;
  result.stderr_of_mean = std::sqrt(std::max(0.0, variance) / static_cast<double>(reps));
  result.ci95_low = result.mean - 1.96 * result.stderr_of_mean;
  result.ci95_high = result.mean + 1.96 * result.stderr_of_mean;
  return result;
}
}  // namespace detail

// Rep i runs on substream_seed(seed, i); aggregation is a fold in rep order,
// so parallel schedules would have to reproduce exactly this result.
inline MonteCarloResult monte_carlo(const Digraph& d, const RestrictionVector& r0,
                                    const ReiStrategy& rei, const NormanStrategy& norman,
                                    long reps, std::uint64_t seed) {
  require(reps >= 1, "need at least one repetition");
  double sum = 0.0, sum_sq = 0.0;
  for (long i = 0; i < reps; ++i) {
    const PlayRecord record = play_game(d, r0, rei, norman, substream_seed(seed, i));
    const double s = static_cast<double>(record.final_score);
    sum += s;
    sum_sq += s * s;
  }
  return detail::summarize(sum, sum_sq, reps);
}

// Empirical E[kn - T] where T is the first time some symbol of a uniform
// k-ary string reaches n occurrences.
inline MonteCarloResult depletion_stats(int k, int n, long reps, std::uint64_t seed) {
  require(k >= 2, "depletion experiment needs at least two symbols");
  require(n >= 1 && reps >= 1, "bad depletion parameters");
  double sum = 0.0, sum_sq = 0.0;
  std::vector<int> counts(k);
  for (long i = 0; i < reps; ++i) {
    SplitMix64 rng(substream_seed(seed, i));
    std::fill(counts.begin(), counts.end(), 0);
    long t = 0;
    while (true) {
      const int symbol = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(k)));
      ++t;
      if (++counts[symbol] == n) break;
    }
    const double gap = static_cast<double>(static_cast<long>(k) * n - t);
    sum += gap;
    sum_sq += gap * gap;
  }
  return detail::summarize(sum, sum_sq, reps);
}

struct GeometricTailResult {
  double estimate = 0.0;          // mean of (EX - X) * 1(X <= EX)
  double stderr_of_mean = 0.0;
  double normalized_ratio = 0.0;  // estimate / (sqrt(N) / p)
};

// X = sum of N iid geometrics(p) (support 1,2,...).  EX = N/p is exact since
// p is rational; each geometric is drawn by counting exact Bernoulli(p)
// trials, so the experiment never touches floating point until aggregation.
inline GeometricTailResult geometric_tail(const Rational& p, long num_terms, long reps,
                                          std::uint64_t seed) {
  require(sgn(p) > 0 && p <= 1, "geometric parameter must be in (0, 1]");
  require(num_terms >= 1 && reps >= 1, "bad geometric tail parameters");
  const Integer num = p.get_num();
  const Integer den = p.get_den();
  require(den.fits_slong_p() && num.fits_slong_p(), "geometric parameter is too fine");
  const std::uint64_t den_u = den.get_ui();
  const std::uint64_t num_u = num.get_ui();

  const Rational expected = Rational(Integer(num_terms) * den, num);

  double sum = 0.0, sum_sq = 0.0;
  for (long i = 0; i < reps; ++i) {
    SplitMix64 rng(substream_seed(seed, i));
    Integer x = 0;
    for (long term = 0; term < num_terms; ++term) {
      long trials = 1;
      while (den_u > 1 && rng.uniform_below(den_u) >= num_u) ++trials;
      x += trials;
    }
    Rational deficit = expected - Rational(x);
    const double v = sgn(deficit) > 0 ? to_double(deficit) : 0.0;
    sum += v;
    sum_sq += v * v;
  }
  const auto stats = detail::summarize(sum, sum_sq, reps);
  GeometricTailResult result;
  result.estimate = stats.mean;
  result.stderr_of_mean = stats.stderr_of_mean;
  result.normalized_ratio =
      stats.mean / (std::sqrt(static_cast<double>(num_terms)) / to_double(p));
  return result;
}

// --- sqrt(n) scaling fits ----------------------------------------------------

struct ScalingSample {
  double n = 0.0;
  double value = 0.0;
};

struct ScalingFit {
  double slope = 0.0;      // least squares on (log n, log value)
  double intercept = 0.0;
  double c_hat = 0.0;      // mean of value/sqrt(n) over the largest n-quartile
};

inline ScalingFit scaling_fit(const std::vector<ScalingSample>& samples) {
  require(samples.size() >= 3, "scaling fit needs at least three samples");
  for (const auto& s : samples) {
    require(s.n > 0 && s.value > 0, "scaling fit needs positive samples");
  }
  std::vector<ScalingSample> sorted = samples;
  std::sort(sorted.begin(), sorted.end(),
            [](const ScalingSample& a, const ScalingSample& b) { return a.n < b.n; });

  double mean_x = 0.0, mean_y = 0.0;
  for (const auto& s : sorted) {
    mean_x += std::log(s.n);
    mean_y += std::log(s.value);
  }
  mean_x /= static_cast<double>(sorted.size());
  mean_y /= static_cast<double>(sorted.size());
  double cov = 0.0, var = 0.0;
  for (const auto& s : sorted) {
    const double dx = std::log(s.n) - mean_x;
    cov += dx * (std::log(s.value) - mean_y);
    var += dx * dx;
  }
  require(var > 0, "scaling fit needs at least two distinct n");

  ScalingFit fit;
  fit.slope = cov / var;
  fit.intercept = mean_y - fit.slope * mean_x;
  const std::size_t quartile_start = sorted.size() - (sorted.size() + 3) / 4;
  double c_sum = 0.0;
  for (std::size_t i = quartile_start; i < sorted.size(); ++i) {
    c_sum += sorted[i].value / std::sqrt(sorted[i].n);
  }
  fit.c_hat = c_sum / static_cast<double>(sorted.size() - quartile_start);
  return fit;
}

}  // namespace semigame
