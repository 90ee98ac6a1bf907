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

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "semigame/common.hpp"
#include "semigame/digraph.hpp"
#include "semigame/distribution.hpp"
#include "semigame/lp.hpp"
#include "semigame/rational.hpp"
#include "semigame/rng.hpp"
#include "semigame/solver.hpp"
#include "semigame/strategies.hpp"

namespace semigame {

// Even vertex set S with N+(v) cap S never contained in N+(w) cap S for
// v in S, w != v.  Such a set certifies that the tournament admits no
// oblivious optimal strategy.
struct Certificate {
  std::vector<int> vertices;  // sorted
};

inline bool certificate_holds(const Digraph& d, const std::vector<int>& s) {
  const int k = d.vertex_count();
  if (s.empty() || s.size() % 2 != 0) return false;
  std::uint64_t s_mask = 0;
  for (int x : s) {
    require(x >= 0 && x < k, "certificate vertex out of range");
    s_mask |= std::uint64_t{1} << x;
  }
  for (int v : s) {
    const std::uint64_t nv = d.out_mask(v) & s_mask;
    for (int w = 0; w < k; ++w) {
      if (w == v) continue;
      const std::uint64_t nw = d.out_mask(w) & s_mask;
      if ((nv & ~nw) == 0) return false;  // N+(v) cap S is contained in N+(w) cap S
    }
  }
  return true;
}

// Searches even subsets by increasing size, lexicographic within a size, so a
// found certificate is canonical.  Below the cap the search is exhaustive and
// a miss is definitive; above it, `sampled_subsets` random even subsets are
// tried per size instead.
inline std::optional<Certificate> find_certificate(const Digraph& d, int exhaustive_cap = 16,
                                                   int sampled_subsets = 20000,
                                                   std::uint64_t seed = 0) {
  require(is_tournament(d), "certificates are defined for tournaments");
  const int k = d.vertex_count();
  if (k <= exhaustive_cap) {
    for (int size = 2; size <= k; size += 2) {
      std::vector<int> subset(size);
      for (int i = 0; i < size; ++i) subset[i] = i;
      while (true) {
        if (certificate_holds(d, subset)) return Certificate{subset};
        int i = size - 1;
        while (i >= 0 && subset[i] == k - size + i) --i;
        if (i < 0) break;
        ++subset[i];
        for (int j = i + 1; j < size; ++j) subset[j] = subset[j - 1] + 1;
      }
    }
    return std::nullopt;
  }
  SplitMix64 rng(seed);
  for (int size = 2; size <= k; size += 2) {
    for (int attempt = 0; attempt < sampled_subsets; ++attempt) {
      std::vector<int> pool(k);
      for (int i = 0; i < k; ++i) pool[i] = i;
      for (int i = 0; i < size; ++i) {
        const int j = i + static_cast<int>(rng.uniform_below(k - i));
        std::swap(pool[i], pool[j]);
      }
      std::vector<int> subset(pool.begin(), pool.begin() + size);
      std::sort(subset.begin(), subset.end());
      if (certificate_holds(d, subset)) return Certificate{subset};
    }
  }
  return std::nullopt;
}

struct ObliviousRate {
  int with_certificate = 0;
  int samples = 0;
  double rate = 0.0;
};

// Fraction of random tournaments carrying a certificate: a lower bound on
// the non-oblivious fraction.
inline ObliviousRate oblivious_rate(int k, int samples, std::uint64_t seed) {
  require(k >= 3, "rate experiment needs at least three vertices");
  require(samples >= 1, "rate experiment needs at least one sample");
  ObliviousRate result;
  result.samples = samples;
  for (int i = 0; i < samples; ++i) {
    const Digraph d = random_tournament(k, substream_seed(seed, i));
    if (find_certificate(d).has_value()) ++result.with_certificate;
  }
  result.rate = static_cast<double>(result.with_certificate) / samples;
  return result;
}

// --- Boxed obliviousness decision ------------------------------------------

struct ObliviousnessVerdict {
  enum class Kind { not_oblivious, oblivious_on_box, inconclusive };
  Kind kind = Kind::inconclusive;
  RestrictionVector box;
  std::optional<Certificate> certificate;         // proof via Proposition-style set
  std::optional<std::vector<int>> empty_support;  // proof via empty feasibility polytope
  std::optional<ObliviousTable> table;            // witness when oblivious on the box
  std::string note;
};

namespace detail {
// Feasibility of one per-support polytope by row generation: start from the
// first state, solve, scan all states of the support for an exactly violated
// constraint, add that state, repeat.  Returns a witness or nothing.
inline std::optional<Distribution> support_polytope_point(
    const Digraph& d, const std::vector<int>& support,
    const std::vector<RestrictionVector>& states, const ValueTable& table) {
  const int k = d.vertex_count();
  const int n = static_cast<int>(support.size());

  struct StateData {
    std::vector<std::vector<Rational>> rows;  // k rows of p-coefficients
    Rational rhs;
  };
  std::vector<StateData> data;
  data.reserve(states.size());
  for (const auto& r : states) {
    std::vector<Rational> child_values;
    for (int u : support) child_values.push_back(table.at(r.minus(u)));
    data.push_back(StateData{state_constraints(d, support, child_values), table.at(r)});
  }

  std::vector<std::size_t> active = {0};
  std::vector<bool> is_active(states.size(), false);
  is_active[0] = true;

  while (true) {
    LinearProgram lp(n);
    for (std::size_t idx : active) {
      for (int v = 0; v < k; ++v) {
        lp.add_row(data[idx].rows[v], LpRel::le, data[idx].rhs);
      }
    }
    lp.add_row(std::vector<Rational>(n, Rational(1)), LpRel::eq, Rational(1));
    const LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::optimal) return std::nullopt;

    // Exact violation scan over every state of this support.
    std::optional<std::size_t> violated;
    for (std::size_t idx = 0; idx < states.size() && !violated; ++idx) {
      if (is_active[idx]) continue;
      for (int v = 0; v < k && !violated; ++v) {
        Rational lhs = 0;
        for (int j = 0; j < n; ++j) lhs += sol.x[j] * data[idx].rows[v][j];
        if (lhs > data[idx].rhs) violated = idx;
      }
    }
    if (!violated) {
      std::vector<Rational> probs(k, Rational(0));
      for (int j = 0; j < n; ++j) probs[support[j]] = sol.x[j];
      return Distribution(std::move(probs));
    }
    active.push_back(*violated);
    is_active[*violated] = true;
  }
}
}  // namespace detail

// Decides obliviousness relative to a solved box.  A Proposition-style
// certificate (tournaments) or an empty per-support polytope disproves
// obliviousness globally; otherwise a per-support witness table is assembled
// and re-verified exactly against every state of the box.
inline ObliviousnessVerdict decide_oblivious_on_box(const Digraph& d,
                                                    const RestrictionVector& box,
                                                    ValueTable& table) {
  require(box.size() == d.vertex_count(), "box dimension mismatch");
  solve_box(d, box, table);

  ObliviousnessVerdict verdict;
  verdict.box = box;

  if (is_tournament(d) && d.vertex_count() <= 16) {
    if (auto cert = find_certificate(d)) {
      verdict.kind = ObliviousnessVerdict::Kind::not_oblivious;
      verdict.certificate = std::move(cert);
      return verdict;
    }
  }

  // Group the box's states by support, order: increasing |S|, lexicographic.
  std::map<std::vector<int>, std::vector<RestrictionVector>> by_support;
  for (const auto& r : box_states_level_order(box)) {
    if (r.total() == 0) continue;
    by_support[r.support()].push_back(r);
  }
  std::vector<std::vector<int>> supports;
  for (const auto& [s, _] : by_support) supports.push_back(s);
  std::sort(supports.begin(), supports.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });

  ObliviousTable witness_table;
  for (const auto& s : supports) {
    auto point = detail::support_polytope_point(d, s, by_support.at(s), table);
    if (!point) {
      verdict.kind = ObliviousnessVerdict::Kind::not_oblivious;
      verdict.empty_support = s;
      return verdict;
    }
    witness_table.by_support.emplace(s, std::move(*point));
  }

  // Verification re-solve: the assembled table must reproduce every exact
  // value on the box.
  const ReiStrategy strategy = witness_table;
  for (const auto& r : box_states_level_order(box)) {
    if (r.total() == 0) continue;
    if (best_response_value(d, r, strategy) != table.at(r)) {
      verdict.kind = ObliviousnessVerdict::Kind::inconclusive;
      verdict.note = "per-support witnesses exist but fail the exact re-solve at (" +
                     r.to_string() + ")";
      return verdict;
    }
  }
  verdict.kind = ObliviousnessVerdict::Kind::oblivious_on_box;
  verdict.table = std::move(witness_table);
  return verdict;
}

// --- Lemma-style argmax consistency check -----------------------------------

struct ArgmaxViolation {
  std::vector<int> support;
  int vertex = 0;
  Rational attained;
  Rational best;
};

namespace detail {
// Is there a non-negative q with supp(q) = S making v the round-gain argmax?
// Modeled with q_u >= 1 on S (the condition is homogeneous in q).
inline bool vertex_can_lead(const Digraph& d, const std::vector<int>& support, int v) {
  const int k = d.vertex_count();
  const int n = static_cast<int>(support.size());
  LinearProgram lp(n);  // q_u = 1 + y_u with y_u >= 0
  for (int w = 0; w < k; ++w) {
    if (w == v) continue;
    std::vector<Rational> coeffs(n);
    Rational constant = 0;
    for (int j = 0; j < n; ++j) {
      const Rational c = Rational(d.orient(v, support[j]) - d.orient(w, support[j]));
      coeffs[j] = c;
      constant += c;
    }
    // sum_j c_j (1 + y_j) >= 0  <=>  sum_j c_j y_j >= -constant
    lp.add_row(std::move(coeffs), LpRel::ge, -constant);
  }
  return solve_lp(lp).status == LpStatus::optimal;
}
}  // namespace detail

// For each support of the box and each v in S that could lead the round gain
// under some q with supp(q) = S, checks that v ties the maximum under the
// oblivious table's mixture.  Violations are returned (expected empty).
inline std::vector<ArgmaxViolation> lemma_4_2_check(const Digraph& d,
                                                    const RestrictionVector& box,
                                                    const ObliviousTable& table) {
  std::vector<ArgmaxViolation> violations;
  std::map<std::vector<int>, bool> seen;
  for (const auto& r : box_states_level_order(box)) {
    if (r.total() == 0) continue;
    const auto s = r.support();
    if (seen.count(s)) continue;
    seen[s] = true;

    auto it = table.by_support.find(s);
    require(it != table.by_support.end(),
            "oblivious table has no entry for support " + support_key(s));
    const Distribution& p = it->second;

    std::vector<Rational> gains(d.vertex_count(), Rational(0));
    Rational best = 0;
    for (int w = 0; w < d.vertex_count(); ++w) {
      for (int u = 0; u < d.vertex_count(); ++u) {
        const int o = d.orient(w, u);
        if (o == 1) gains[w] += p[u];
        else if (o == -1) gains[w] -= p[u];
      }
      if (w == 0 || gains[w] > best) best = gains[w];
    }
    for (int v : s) {
      if (!detail::vertex_can_lead(d, s, v)) continue;
      if (gains[v] != best) {
        violations.push_back(ArgmaxViolation{s, v, gains[v], best});
      }
    }
  }
  return violations;
}

// --- JSON --------------------------------------------------------------------

inline nlohmann::json verdict_to_json(const ObliviousnessVerdict& verdict) {
  nlohmann::json j;
  switch (verdict.kind) {
    case ObliviousnessVerdict::Kind::not_oblivious: j["verdict"] = "not-oblivious"; break;
    case ObliviousnessVerdict::Kind::oblivious_on_box: j["verdict"] = "oblivious-on-box"; break;
    case ObliviousnessVerdict::Kind::inconclusive: j["verdict"] = "inconclusive"; break;
  }
  j["box"] = verdict.box.to_string();
  if (verdict.certificate) j["certificate"] = verdict.certificate->vertices;
  if (verdict.empty_support) j["empty_support"] = *verdict.empty_support;
  if (verdict.table) {
    auto& table = j["table"];
    table = nlohmann::json::object();
    for (const auto& [s, dist] : verdict.table->by_support) {
      table[support_key(s)] = distribution_to_json(dist);
    }
  }
  if (!verdict.note.empty()) j["note"] = verdict.note;
  return j;
}

}  // namespace semigame
