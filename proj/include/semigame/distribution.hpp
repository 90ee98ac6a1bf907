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
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "semigame/common.hpp"
#include "semigame/rational.hpp"
#include "semigame/rng.hpp"

namespace semigame {

// Exact probability vector over vertices 0..k-1.  Alongside the rational
// probabilities it keeps an integer-weight form (w_i over a common total W)
// so that sampling and expected-gain computations stay in integer land.
class Distribution {
 public:
  explicit Distribution(std::vector<Rational> probs) : p_(std::move(probs)) {
    Rational sum = 0;
    for (const auto& x : p_) {
      require(sgn(x) >= 0, "negative probability in distribution");
      sum += x;
    }
    require(sum == 1, "distribution must sum to exactly 1");
    build_weights();
  }

  static Distribution from_weights(std::vector<Integer> weights) {
    Integer total = 0;
    for (const auto& w : weights) {
      require(sgn(w) >= 0, "negative weight in distribution");
      total += w;
    }
    require(sgn(total) > 0, "distribution weights must not all be zero");
    std::vector<Rational> probs;
    probs.reserve(weights.size());
    for (const auto& w : weights) {
      Rational q(w, total);
      q.canonicalize();
      probs.push_back(q);
    }
    return Distribution(std::move(probs));
  }

  static Distribution point_mass(int k, int v) {
    require(v >= 0 && v < k, "point mass vertex out of range");
    std::vector<Rational> probs(k, Rational(0));
    probs[v] = 1;
    return Distribution(std::move(probs));
  }

  static Distribution uniform_over(int k, const std::vector<int>& support) {
    require(!support.empty(), "uniform distribution needs a nonempty support");
    std::vector<Rational> probs(k, Rational(0));
    for (int v : support) {
      require(v >= 0 && v < k, "support vertex out of range");
      require(sgn(probs[v]) == 0, "duplicate vertex in support");
      probs[v] = make_rational(1, static_cast<long>(support.size()));
    }
    return Distribution(std::move(probs));
  }

  int size() const { return static_cast<int>(p_.size()); }
  const std::vector<Rational>& probs() const { return p_; }
  const Rational& operator[](int v) const { return p_[v]; }

  std::vector<int> support() const {
    std::vector<int> s;
    for (int v = 0; v < size(); ++v)
      if (sgn(p_[v]) > 0) s.push_back(v);
    return s;
  }

  const std::vector<Integer>& weights() const { return weights_; }
  const Integer& weight_total() const { return total_; }

  // Frozen sampling contract: draw x uniform in [0, W) and return the least
  // index i with x < w_0 + ... + w_i.  When W exceeds 64 bits the draw uses
  // top-down bit rejection on ceil(log2 W) bits.
  int sample(SplitMix64& rng) const {
    Integer x;
    if (mpz_sizeinbase(total_.get_mpz_t(), 2) <= 63) {
      x = Integer(static_cast<unsigned long>(
          rng.uniform_below(static_cast<std::uint64_t>(total_.get_ui()))));
    } else {
      x = draw_big(rng);
    }
    Integer cumulative = 0;
    for (int v = 0; v < size(); ++v) {
      cumulative += weights_[v];
      if (x < cumulative) return v;
    }
    throw internal_error("distribution sampling fell off the cumulative walk");
  }

 private:
  void build_weights() {
    // Common denominator L = lcm of all denominators; w_i = num_i * (L/den_i).
    Integer lcm = 1;
    for (const auto& q : p_) {
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
    }
    weights_.reserve(p_.size());
    for (const auto& q : p_) {
      weights_.push_back(q.get_num() * (lcm / q.get_den()));
    }
    total_ = lcm;
  }

  Integer draw_big(SplitMix64& rng) const {
    const std::size_t bits = mpz_sizeinbase(total_.get_mpz_t(), 2);
    while (true) {
      Integer x = 0;
      std::size_t filled = 0;
      while (filled < bits) {
        const std::size_t take = std::min<std::size_t>(64, bits - filled);
        std::uint64_t chunk = rng.next();
        if (take < 64) chunk &= (std::uint64_t{1} << take) - 1;
        x <<= take;
        x += Integer(static_cast<unsigned long>(chunk));
        filled += take;
      }
      if (x < total_) return x;
    }
  }

  std::vector<Rational> p_;
  std::vector<Integer> weights_;
  Integer total_;
};

// True when supp(dist) is contained in the allowed vertex set.
inline bool support_within(const Distribution& dist, const std::vector<int>& allowed) {
  std::vector<bool> ok(dist.size(), false);
  for (int v : allowed)
    if (v >= 0 && v < dist.size()) ok[v] = true;
  for (int v = 0; v < dist.size(); ++v)
    if (sgn(dist[v]) > 0 && !ok[v]) return false;
  return true;
}

}  // namespace semigame
