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
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "semigame/common.hpp"
#include "semigame/digraph.hpp"
#include "semigame/distribution.hpp"
#include "semigame/lp.hpp"
#include "semigame/rational.hpp"

namespace semigame {

// Per-vertex non-negative remaining-play counts for the restricted player.
class RestrictionVector {
 public:
  RestrictionVector() = default;
  explicit RestrictionVector(std::vector<int> counts) : counts_(std::move(counts)) {
    for (int c : counts_) require(c >= 0, "restriction counts must be non-negative");
  }

  static RestrictionVector parse(const std::string& csv) {
    std::vector<int> counts;
    std::stringstream ss(csv);
    std::string token;
    while (std::getline(ss, token, ',')) {
      try {
        std::size_t used = 0;
        counts.push_back(std::stoi(token, &used));
        require(used == token.size(), "bad restriction entry");
      } catch (const std::exception&) {
        throw input_error("malformed restriction vector '" + csv + "'");
      }
    }
    require(!counts.empty(), "empty restriction vector '" + csv + "'");
    return RestrictionVector(std::move(counts));
  }

  static RestrictionVector constant(int k, int n) {
    require(k >= 1 && n >= 0, "bad constant restriction vector");
    return RestrictionVector(std::vector<int>(k, n));
  }

  int size() const { return static_cast<int>(counts_.size()); }
  int operator[](int v) const { return counts_[v]; }
  const std::vector<int>& counts() const { return counts_; }

  long total() const {
    long t = 0;
    for (int c : counts_) t += c;
    return t;
  }

  std::vector<int> support() const {
    std::vector<int> s;
    for (int v = 0; v < size(); ++v)
      if (counts_[v] > 0) s.push_back(v);
    return s;
  }

  RestrictionVector minus(int v) const {
    require(v >= 0 && v < size() && counts_[v] > 0,
            "cannot remove an action of vertex " + std::to_string(v));
    auto c = counts_;
    --c[v];
    return RestrictionVector(std::move(c));
  }

  RestrictionVector plus(int v) const {
    require(v >= 0 && v < size(), "vertex out of range");
    auto c = counts_;
    ++c[v];
    return RestrictionVector(std::move(c));
  }

  bool leq(const RestrictionVector& box) const {
    require(size() == box.size(), "dimension mismatch");
    for (int v = 0; v < size(); ++v)
      if (counts_[v] > box[v]) return false;
    return true;
  }

  std::string to_string() const {
    std::string s;
    for (int v = 0; v < size(); ++v) {
      if (v) s += ',';
      s += std::to_string(counts_[v]);
    }
    return s;
  }

  friend bool operator==(const RestrictionVector& a, const RestrictionVector& b) {
    return a.counts_ == b.counts_;
  }
  friend bool operator<(const RestrictionVector& a, const RestrictionVector& b) {
    return a.counts_ < b.counts_;
  }

 private:
  std::vector<int> counts_;
};

// Enumerates every r <= box in level order (increasing total), lexicographic
// within a level; this is the solver's deterministic sweep order.
inline std::vector<RestrictionVector> box_states_level_order(const RestrictionVector& box) {
  std::vector<std::vector<int>> all;
  std::vector<int> current(box.size(), 0);
  while (true) {
    all.push_back(current);
    int v = box.size() - 1;
    while (v >= 0 && current[v] == box[v]) {
      current[v] = 0;
      --v;
    }
    if (v < 0) break;
    ++current[v];
  }
  std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    long ta = 0, tb = 0;
    for (int x : a) ta += x;
    for (int x : b) tb += x;
    return ta != tb ? ta < tb : a < b;
  });
  std::vector<RestrictionVector> states;
  states.reserve(all.size());
  for (auto& c : all) states.emplace_back(std::move(c));
  return states;
}

// Memoized exact game values for one digraph.  The zero vector is pinned to
// value 0 and every stored state has all of its children stored, which is
// exactly what the cache loader re-validates.
class ValueTable {
 public:
  ValueTable(std::string fingerprint, int k) : fingerprint_(std::move(fingerprint)), k_(k) {}

  const std::string& fingerprint() const { return fingerprint_; }
  int k() const { return k_; }
  std::size_t size() const { return values_.size(); }

  bool contains(const RestrictionVector& r) const { return values_.count(r) > 0; }

  const Rational& at(const RestrictionVector& r) const {
    auto it = values_.find(r);
    require(it != values_.end(), "value table has no entry for (" + r.to_string() + ")");
    return it->second;
  }

  void insert(const RestrictionVector& r, Rational value) {
    require(r.size() == k_, "restriction vector dimension mismatch");
    values_.insert_or_assign(r, std::move(value));
  }

  long completion_level() const {
    long level = -1;
    for (const auto& [r, v] : values_) level = std::max(level, r.total());
    return level;
  }

  const std::map<RestrictionVector, Rational>& entries() const { return values_; }

  // Cache format: one header line "semigame-cache v1 <fingerprint>", then one
  // CSV row "r_0,...,r_{k-1},num/den" per state in lexicographic order.
  void save(std::ostream& out) const {
    out << "semigame-cache v1 " << fingerprint_ << "\n";
    for (const auto& [r, v] : values_) {
      out << r.to_string() << "," << to_fraction_string(v) << "\n";
    }
  }

  void save_file(const std::string& path) const {
    std::ofstream out(path);
    require(out.good(), "cannot open cache file for writing: " + path);
    save(out);
    ensure(out.good(), "cache write failed: " + path);
  }

  static ValueTable load(std::istream& in, const std::string& expected_fingerprint) {
    std::string header;
    require(static_cast<bool>(std::getline(in, header)), "empty cache file");
    std::stringstream hs(header);
    std::string magic, version, fingerprint;
    hs >> magic >> version >> fingerprint;
    require(magic == "semigame-cache" && version == "v1",
            "unrecognized cache header '" + header + "'");
    require(expected_fingerprint.empty() || fingerprint == expected_fingerprint,
            "cache fingerprint " + fingerprint + " does not match digraph fingerprint " +
                expected_fingerprint);

    std::vector<std::pair<RestrictionVector, Rational>> rows;
    std::string line;
    int k = -1;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      const auto cut = line.rfind(',');
      require(cut != std::string::npos && cut > 0,
              "cache line " + std::to_string(line_no) + " is not a CSV row");
      RestrictionVector r = RestrictionVector::parse(line.substr(0, cut));
      Rational v = rational_from_string(line.substr(cut + 1));
      if (k < 0) k = r.size();
      require(r.size() == k, "cache line " + std::to_string(line_no) + " has mixed dimension");
      rows.emplace_back(std::move(r), std::move(v));
    }
    require(k > 0, "cache file has no entries");

    ValueTable table(fingerprint, k);
    for (auto& [r, v] : rows) table.insert(r, std::move(v));
    // Children-present invariant, and the zero state must be zero.
    for (const auto& [r, v] : table.values_) {
      if (r.total() == 0) {
        require(sgn(v) == 0, "cache stores a nonzero value for the zero vector");
        continue;
      }
      for (int u : r.support()) {
        require(table.contains(r.minus(u)),
                "cache is missing child (" + r.minus(u).to_string() + ") of (" + r.to_string() + ")");
      }
    }
    return table;
  }

  static ValueTable load_file(const std::string& path, const std::string& expected_fingerprint) {
    std::ifstream in(path);
    require(in.good(), "cannot open cache file: " + path);
    return load(in, expected_fingerprint);
  }

 private:
  std::string fingerprint_;
  int k_ = 0;
  std::map<RestrictionVector, Rational> values_;
};

// --- Per-state linear program -------------------------------------------

struct StateSolution {
  Rational value;
  Distribution witness;
};

namespace detail {
// Constraint coefficient of p_u in state r at Norman's vertex v:
// A_D[v][u] + S_D(r - delta_u).
inline std::vector<std::vector<Rational>> state_constraints(
    const Digraph& d, const std::vector<int>& supp, const std::vector<Rational>& child_values) {
  const int k = d.vertex_count();
  std::vector<std::vector<Rational>> rows(k, std::vector<Rational>(supp.size()));
  for (int v = 0; v < k; ++v) {
    for (std::size_t j = 0; j < supp.size(); ++j) {
      rows[v][j] = Rational(d.orient(v, supp[j])) + child_values[j];
    }
  }
  return rows;
}
}  // namespace detail

// Solves the one-round min-max at state r: minimize t subject to
//   sum_u p_u (A_D[v][u] + S(r - delta_u)) <= t  for every vertex v,
//   p a probability vector on supp(r).
// The witness is re-verified exactly against every constraint before return.
inline StateSolution solve_state(const Digraph& d, const RestrictionVector& r,
                                 const ValueTable& table) {
  const int k = d.vertex_count();
  require(r.size() == k, "state dimension mismatch");
  const auto supp = r.support();
  require(!supp.empty(), "state LP needs a nonempty restriction vector");

  std::vector<Rational> child_values;
  child_values.reserve(supp.size());
  for (int u : supp) child_values.push_back(table.at(r.minus(u)));
  const auto rows = detail::state_constraints(d, supp, child_values);

  const int n = static_cast<int>(supp.size());
  // Variables p_0..p_{n-1}, then t.  Norman's guaranteed round gain is never
  // negative (he can mirror Rei's mixture), so t >= 0 loses nothing.
  LinearProgram lp(n + 1);
  std::vector<Rational> objective(n + 1, Rational(0));
  objective[n] = 1;
  lp.set_objective(objective);
  for (int v = 0; v < k; ++v) {
    std::vector<Rational> c(n + 1, Rational(0));
    for (int j = 0; j < n; ++j) c[j] = rows[v][j];
    c[n] = -1;
    lp.add_row(std::move(c), LpRel::le, Rational(0));
  }
  {
    std::vector<Rational> c(n + 1, Rational(0));
    for (int j = 0; j < n; ++j) c[j] = 1;
    lp.add_row(std::move(c), LpRel::eq, Rational(1));
  }

  const LpSolution sol = solve_lp(lp);
  ensure(sol.status == LpStatus::optimal, "state LP must be feasible and bounded");

  std::vector<Rational> probs(k, Rational(0));
  for (int j = 0; j < n; ++j) probs[supp[j]] = sol.x[j];
  Distribution witness(std::move(probs));

  // Exact re-verification: witness feasible, objective attained, one tight row.
  bool tight = false;
  for (int v = 0; v < k; ++v) {
    Rational lhs = 0;
    for (int j = 0; j < n; ++j) lhs += witness[supp[j]] * rows[v][j];
    ensure(lhs <= sol.objective, "witness violates a state constraint");
    if (lhs == sol.objective) tight = true;
  }
  ensure(tight, "witness leaves every constraint slack");
  return StateSolution{sol.objective, std::move(witness)};
}

// --- Backward induction over a box ---------------------------------------

// Solves every state r <= box by level order, memoizing into `table`.
// Identical (digraph, box) inputs produce bit-identical tables.
inline void solve_box(const Digraph& d, const RestrictionVector& box, ValueTable& table) {
  require(box.size() == d.vertex_count(), "box dimension mismatch");
  require(table.fingerprint() == d.fingerprint(), "value table belongs to a different digraph");
  for (const auto& r : box_states_level_order(box)) {
    if (table.contains(r)) continue;
    if (r.total() == 0) {
      table.insert(r, Rational(0));
      continue;
    }
    table.insert(r, solve_state(d, r, table).value);
  }
}

inline ValueTable make_table(const Digraph& d) { return ValueTable(d.fingerprint(), d.vertex_count()); }

// S_D(r), solving the downward closure of r on demand.
inline Rational value(const Digraph& d, const RestrictionVector& r, ValueTable& table) {
  if (!table.contains(r)) solve_box(d, r, table);
  return table.at(r);
}

// --- Optimal face ----------------------------------------------------------

struct OptimalFace {
  Rational value;
  std::vector<int> support;
  std::vector<std::pair<Rational, Rational>> ranges;  // [min p_u, max p_u] per support vertex
  Distribution witness;
  bool singleton = false;
};

// Per-coordinate extremes of the optimal set: re-solve the state constraints
// with t pinned to the optimal value and objective +-p_u.
inline OptimalFace optimal_face(const Digraph& d, const RestrictionVector& r, ValueTable& table) {
  const Rational t_star = value(d, r, table);
  const auto supp = r.support();
  require(!supp.empty(), "optimal face needs a nonempty state");

  std::vector<Rational> child_values;
  for (int u : supp) child_values.push_back(table.at(r.minus(u)));
  const auto rows = detail::state_constraints(d, supp, child_values);
  const int n = static_cast<int>(supp.size());
  const int k = d.vertex_count();

  auto extreme = [&](int coordinate, bool maximize) {
    LinearProgram lp(n);
    std::vector<Rational> objective(n, Rational(0));
    objective[coordinate] = maximize ? Rational(-1) : Rational(1);
    lp.set_objective(objective);
    for (int v = 0; v < k; ++v) {
      std::vector<Rational> c(rows[v]);
      lp.add_row(std::move(c), LpRel::le, t_star);
    }
    lp.add_row(std::vector<Rational>(n, Rational(1)), LpRel::eq, Rational(1));
    const LpSolution sol = solve_lp(lp);
    ensure(sol.status == LpStatus::optimal, "face LP must be feasible and bounded");
    return maximize ? -sol.objective : sol.objective;
  };

  OptimalFace face{t_star, supp, {}, solve_state(d, r, table).witness, true};
  for (int j = 0; j < n; ++j) {
    Rational lo = extreme(j, /*maximize=*/false);
    Rational hi = extreme(j, /*maximize=*/true);
    ensure(lo <= face.witness[supp[j]] && face.witness[supp[j]] <= hi,
           "witness falls outside its own face range");
    if (lo != hi) face.singleton = false;
    face.ranges.emplace_back(std::move(lo), std::move(hi));
  }
  return face;
}

// --- Switch-cost constant and Lemma-style checks ---------------------------

// alpha(u,v): 2 when some x has u->x->v; 0 when N+(u) and N-(v) are both
// empty; 1 otherwise.
inline int alpha(const Digraph& d, int u, int v) {
  require(u != v, "alpha(u,v) needs distinct vertices");
  const std::uint64_t mid = d.out_mask(u) & d.in_mask(v);
  if (mid != 0) return 2;
  if (d.out_mask(u) == 0 && d.in_mask(v) == 0) return 0;
  return 1;
}

struct SwitchViolation {
  RestrictionVector r;
  int u, v;
  Rational lhs, rhs;
  bool strict_required;
};

// Checks S(r - delta_u) <= S(r - delta_v) + alpha(u,v) over every r <= box
// with r_u, r_v >= 1, strict when N-(u) is nonempty or alpha = 2.  Returns
// the (expectedly empty) violation list.
inline std::vector<SwitchViolation> check_switch_lemma(const Digraph& d,
                                                       const RestrictionVector& box,
                                                       ValueTable& table) {
  solve_box(d, box, table);
  std::vector<SwitchViolation> violations;
  const int k = d.vertex_count();
  for (const auto& r : box_states_level_order(box)) {
    for (int u = 0; u < k; ++u) {
      if (r[u] < 1) continue;
      for (int v = 0; v < k; ++v) {
        if (v == u || r[v] < 1) continue;
        const Rational lhs = table.at(r.minus(u));
        const Rational rhs = table.at(r.minus(v)) + alpha(d, u, v);
        const bool strict = d.in_mask(u) != 0 || alpha(d, u, v) == 2;
        if (lhs > rhs || (strict && lhs == rhs)) {
          violations.push_back(SwitchViolation{r, u, v, lhs, rhs, strict});
        }
      }
    }
  }
  return violations;
}

// max_v { sum_{u in N+(v)} r_u - sum_{u in N-(v)} r_u }: Norman's guaranteed
// score from playing one fixed vertex all game.
inline long lower_bound(const Digraph& d, const RestrictionVector& r) {
  require(r.size() == d.vertex_count(), "dimension mismatch");
  long best = 0;
  bool first = true;
  for (int v = 0; v < d.vertex_count(); ++v) {
    long s = 0;
    for (int u : d.out_neighbors(v)) s += r[u];
    for (int u : d.in_neighbors(v)) s -= r[u];
    if (first || s > best) best = s;
    first = false;
  }
  return best;
}

// --- Best response against a fixed Rei strategy ----------------------------

// mixture(r) must return Rei's distribution at state r with support inside
// supp(r); violations are reported with the offending state.
template <class MixtureFn>
Rational best_response_value_against(const Digraph& d, const RestrictionVector& r,
                                     MixtureFn&& mixture) {
  std::map<RestrictionVector, Rational> memo;
  std::function<Rational(const RestrictionVector&)> eval =
      [&](const RestrictionVector& state) -> Rational {
    if (state.total() == 0) return Rational(0);
    auto it = memo.find(state);
    if (it != memo.end()) return it->second;

    const Distribution p = mixture(state);
    require(p.size() == d.vertex_count(), "strategy mixture has wrong dimension");
    require(support_within(p, state.support()),
            "strategy plays outside supp(r) at state (" + state.to_string() + ")");

    // One-round Fact-style recursion: Norman takes the best round gain, then
    // the game continues on the realized child.
    Rational best_gain = 0;
    bool first = true;
    for (int v = 0; v < d.vertex_count(); ++v) {
      Rational gain = 0;
      for (int u = 0; u < d.vertex_count(); ++u) {
        const int o = d.orient(v, u);
        if (o == 1) gain += p[u];
        else if (o == -1) gain -= p[u];
      }
      if (first || gain > best_gain) best_gain = gain;
      first = false;
    }
    Rational total = best_gain;
    for (int u = 0; u < d.vertex_count(); ++u) {
      if (sgn(p[u]) > 0) total += p[u] * eval(state.minus(u));
    }
    memo.emplace(state, total);
    return total;
  };
  return eval(r);
}

// --- C3 greedy backend ------------------------------------------------------

namespace detail {
inline void check_is_three_cycle(const Digraph& d) {
  require(d.vertex_count() == 3 && is_tournament(d) && is_eulerian(d),
          "greedy backend requires the 3-vertex circuit");
}

// Greedy mixture on the circuit: uniform at full support, 2/3 on the beater
// with two options, forced with one.
inline std::vector<std::pair<int, Rational>> c3_greedy_mixture(const Digraph& d,
                                                               const std::vector<int>& supp) {
  if (supp.size() == 3) {
    return {{supp[0], make_rational(1, 3)}, {supp[1], make_rational(1, 3)},
            {supp[2], make_rational(1, 3)}};
  }
  if (supp.size() == 2) {
    int winner = supp[0], loser = supp[1];
    if (d.has_arc(loser, winner)) std::swap(winner, loser);
    return {{winner, make_rational(2, 3)}, {loser, make_rational(1, 3)}};
  }
  return {{supp[0], Rational(1)}};
}

inline Rational c3_round_cost(std::size_t support_size) {
  switch (support_size) {
    case 3: return Rational(0);
    case 2: return make_rational(1, 3);
    default: return Rational(1);
  }
}
}  // namespace detail

// Exact greedy-strategy value on the 3-cycle, by the closed-form recursion
// (the greedy strategy is optimal there, so this equals S_D).  Streams the
// box level by level, so boxes like (100,100,100) stay cheap in memory.
inline Rational c3_greedy_value(const Digraph& d, const RestrictionVector& r) {
  detail::check_is_three_cycle(d);
  require(r.size() == 3, "restriction vector must have 3 entries");
  const int a_max = r[0], b_max = r[1], c_max = r[2];
  std::map<std::vector<int>, Rational> level_values;
  level_values[{0, 0, 0}] = Rational(0);

  for (long t = 1; t <= r.total(); ++t) {
    std::map<std::vector<int>, Rational> next;
    for (int a = 0; a <= a_max; ++a) {
      if (a > t) break;
      for (int b = 0; b <= b_max; ++b) {
        const long c = t - a - b;
        if (c < 0) break;
        if (c > c_max) continue;
        const RestrictionVector state(std::vector<int>{a, b, static_cast<int>(c)});
        const auto supp = state.support();
        Rational v = detail::c3_round_cost(supp.size());
        for (const auto& [u, prob] : detail::c3_greedy_mixture(d, supp)) {
          v += prob * level_values.at(state.minus(u).counts());
        }
        next.emplace(state.counts(), std::move(v));
      }
    }
    level_values = std::move(next);
  }
  return level_values.at(r.counts());
}

// Diagonal values S(n,n,n) for n = 0..n_max in one streaming sweep.
inline std::vector<Rational> c3_greedy_diagonal(const Digraph& d, int n_max) {
  detail::check_is_three_cycle(d);
  require(n_max >= 0, "n_max must be non-negative");
  std::vector<Rational> diagonal(n_max + 1, Rational(0));
  std::map<std::vector<int>, Rational> level_values;
  level_values[{0, 0, 0}] = Rational(0);

  for (long t = 1; t <= 3L * n_max; ++t) {
    std::map<std::vector<int>, Rational> next;
    for (int a = 0; a <= n_max && a <= t; ++a) {
      for (int b = 0; b <= n_max; ++b) {
        const long c = t - a - b;
        if (c < 0) break;
        if (c > n_max) continue;
        const RestrictionVector state(std::vector<int>{a, b, static_cast<int>(c)});
        const auto supp = state.support();
        Rational v = detail::c3_round_cost(supp.size());
        for (const auto& [u, prob] : detail::c3_greedy_mixture(d, supp)) {
          v += prob * level_values.at(state.minus(u).counts());
        }
        next.emplace(state.counts(), std::move(v));
      }
    }
    level_values = std::move(next);
    if (t % 3 == 0 && t / 3 <= n_max) {
      const int n = static_cast<int>(t / 3);
      diagonal[n] = level_values.at(std::vector<int>{n, n, n});
    }
  }
  return diagonal;
}

// Fills a value table from the greedy recursion over a whole box.
inline ValueTable c3_greedy_table(const Digraph& d, const RestrictionVector& box) {
  detail::check_is_three_cycle(d);
  ValueTable table = make_table(d);
  for (const auto& r : box_states_level_order(box)) {
    if (r.total() == 0) {
      table.insert(r, Rational(0));
      continue;
    }
    const auto supp = r.support();
    Rational v = detail::c3_round_cost(supp.size());
    for (const auto& [u, prob] : detail::c3_greedy_mixture(d, supp)) {
      v += prob * table.at(r.minus(u));
    }
    table.insert(r, std::move(v));
  }
  return table;
}

// --- Float monitoring backend ----------------------------------------------

// Same sweep as solve_box with machine floats; no face extraction, no
// equality assertions.  Intended for large-n scaling runs only.
inline std::map<RestrictionVector, double> solve_box_float(const Digraph& d,
                                                           const RestrictionVector& box) {
  require(box.size() == d.vertex_count(), "box dimension mismatch");
  std::map<RestrictionVector, double> values;
  const int k = d.vertex_count();
  for (const auto& r : box_states_level_order(box)) {
    if (r.total() == 0) {
      values[r] = 0.0;
      continue;
    }
    const auto supp = r.support();
    const int n = static_cast<int>(supp.size());
    LinearProgramT<double> lp(n + 1);
    std::vector<double> objective(n + 1, 0.0);
    objective[n] = 1.0;
    lp.set_objective(objective);
    for (int v = 0; v < k; ++v) {
      std::vector<double> c(n + 1, 0.0);
      for (int j = 0; j < n; ++j) {
        c[j] = d.orient(v, supp[j]) + values.at(r.minus(supp[j]));
      }
      c[n] = -1.0;
      lp.add_row(std::move(c), LpRel::le, 0.0);
    }
    lp.add_row(std::vector<double>(n + 1, 1.0), LpRel::eq, 1.0);
    // The t column must stay out of the probability-sum row.
    lp.rows.back().coeffs[n] = 0.0;
    const auto sol = solve_lp(lp);
    ensure(sol.status == LpStatus::optimal, "float state LP failed");
    values[r] = sol.objective;
  }
  return values;
}

}  // namespace semigame
