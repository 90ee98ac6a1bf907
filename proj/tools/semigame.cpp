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
//
// Command-line surface for the semi-restricted game toolkit.

#include <openssl/evp.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "semigame/digraph.hpp"
#include "semigame/enumerate.hpp"
#include "semigame/oblivious.hpp"
#include "semigame/rational.hpp"
#include "semigame/restricted.hpp"
#include "semigame/simulate.hpp"
#include "semigame/skew.hpp"
#include "semigame/solver.hpp"
#include "semigame/strategies.hpp"
#include "semigame/switching.hpp"

namespace sg = semigame;
using nlohmann::json;

namespace {

// --- helpers -----------------------------------------------------------------

sg::Digraph parse_graph_spec(const std::string& spec) {
  if (spec.rfind("random:", 0) == 0) {
    std::stringstream ss(spec.substr(7));
    std::string k_str, seed_str;
    sg::require(static_cast<bool>(std::getline(ss, k_str, ':')) &&
                    static_cast<bool>(std::getline(ss, seed_str, ':')),
                "usage: random:<k>:<seed>");
    return sg::random_tournament(std::stoi(k_str), std::stoull(seed_str));
  }
  if (spec.find('/') != std::string::npos || spec.size() > 5 &&
      spec.compare(spec.size() - 5, 5, ".json") == 0 || std::filesystem::exists(spec)) {
    std::ifstream in(spec);
    sg::require(in.good(), "cannot open graph file: " + spec);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return sg::digraph_from_json_text(buffer.str());
  }
  return sg::make_named(spec);
}

std::string cache_dir() {
  if (const char* env = std::getenv("SEMIGAME_CACHE")) return env;
  return "./cache";
}

std::string cache_path(const sg::Digraph& d, const std::string& backend) {
  return cache_dir() + "/" + d.fingerprint() + "-" + backend + ".cache";
}

// Loads the exact cache when present, solves and persists otherwise.
sg::ValueTable solved_table(const sg::Digraph& d, const sg::RestrictionVector& box,
                            bool persist) {
  const std::string path = cache_path(d, "exact");
  sg::ValueTable table = sg::make_table(d);
  if (std::filesystem::exists(path)) {
    table = sg::ValueTable::load_file(path, d.fingerprint());
  }
  sg::solve_box(d, box, table);
  if (persist) {
    std::filesystem::create_directories(cache_dir());
    table.save_file(path);
  }
  return table;
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    sg::require(out.good(), "cannot open output file: " + out_path);
    out << j.dump(2) << "\n";
  }
}

std::string sha256_hex(const std::string& payload) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(payload.data(), payload.size(), digest, &length, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xF];
  }
  return out;
}

sg::ReiStrategy parse_rei(const std::string& name, const sg::Digraph& d,
                          const sg::RestrictionVector& r0) {
  if (name == "greedy") return sg::GreedyRps{};
  if (name == "uniform") return sg::UniformUntilDepletion{};
  if (name == "trimmed") return sg::trimmed_proportional(d, r0);
  if (name == "optimal") {
    auto table = std::make_shared<sg::ValueTable>(solved_table(d, r0, /*persist=*/true));
    return sg::OptimalFromTable{table, std::make_shared<sg::Digraph>(d)};
  }
  if (name.rfind("oblivious:", 0) == 0) {
    std::ifstream in(name.substr(10));
    sg::require(in.good(), "cannot open strategy file: " + name.substr(10));
    json j = json::parse(in);
    return sg::rei_strategy_from_json(j);
  }
  throw sg::input_error("unknown Rei strategy '" + name +
                        "' (greedy|uniform|trimmed|optimal|oblivious:<file>)");
}

sg::NormanStrategy parse_norman(const std::string& name) {
  if (name == "best-response") return sg::PerRoundBestResponse{};
  if (name.rfind("fixed:", 0) == 0) return sg::FixedVertex{std::stoi(name.substr(6))};
  throw sg::input_error("unknown Norman strategy '" + name + "' (best-response|fixed:<v>)");
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  sg::require(dots != std::string::npos, "range must look like 10..100");
  return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
}

json monte_carlo_json(const sg::MonteCarloResult& r) {
  return json{{"mean", r.mean},
              {"stderr", r.stderr_of_mean},
              {"ci95", {r.ci95_low, r.ci95_high}},
              {"reps", r.reps}};
}

// --- subcommand bodies ---------------------------------------------------------

int run_graph(const std::string& spec, const std::string& enumerate_kind, int enum_k,
              int enum_cap, const std::string& out_path) {
  if (!enumerate_kind.empty()) {
    if (enumerate_kind == "eulerian") {
      const auto all = sg::enumerate_eulerian_tournaments(enum_k, enum_cap);
      json j{{"k", enum_k}, {"kind", "eulerian-tournaments"}, {"count", all.size()}};
      emit(j, out_path);
    } else if (enumerate_kind == "tournaments") {
      std::uint64_t count = 0;
      sg::for_each_tournament(enum_k, [&count](const sg::Digraph&) { ++count; }, enum_cap);
      json j{{"k", enum_k}, {"kind", "tournaments"}, {"count", count}};
      emit(j, out_path);
    } else {
      throw sg::input_error("--enumerate must be 'eulerian' or 'tournaments'");
    }
    return 0;
  }
  const sg::Digraph d = parse_graph_spec(spec);
  json j = sg::digraph_to_json(d);
  j["fingerprint"] = d.fingerprint();
  j["is_tournament"] = sg::is_tournament(d);
  j["is_eulerian"] = sg::is_eulerian(d);
  auto degrees = json::array();
  for (int v = 0; v < d.vertex_count(); ++v) {
    degrees.push_back({{"v", v}, {"out", d.out_degree(v)}, {"in", d.in_degree(v)}});
  }
  j["degrees"] = std::move(degrees);
  emit(j, out_path);
  return 0;
}

int run_solve(const std::string& spec, const std::string& box_csv, const std::string& backend,
              bool no_cache, const std::string& out_path) {
  const sg::Digraph d = parse_graph_spec(spec);
  const auto box = sg::RestrictionVector::parse(box_csv);
  json j{{"graph", spec}, {"box", box.to_string()}, {"backend", backend},
         {"fingerprint", d.fingerprint()}};
  if (backend == "exact") {
    sg::ValueTable table = solved_table(d, box, !no_cache);
    j["value"] = sg::to_fraction_string(table.at(box));
    j["value_float"] = sg::to_double(table.at(box));
    j["states"] = table.size();
    if (!no_cache) j["cache"] = cache_path(d, "exact");
  } else if (backend == "greedy-exact") {
    const sg::Rational v = sg::c3_greedy_value(d, box);
    j["value"] = sg::to_fraction_string(v);
    j["value_float"] = sg::to_double(v);
  } else if (backend == "float") {
    const auto values = sg::solve_box_float(d, box);
    j["value_float"] = values.at(box);
    j["states"] = values.size();
  } else {
    throw sg::input_error("--backend must be exact, greedy-exact or float");
  }
  emit(j, out_path);
  return 0;
}

int run_query(const std::string& spec, const std::string& r_csv, const std::string& out_path) {
  const sg::Digraph d = parse_graph_spec(spec);
  const auto r = sg::RestrictionVector::parse(r_csv);
  sg::ValueTable table = solved_table(d, r, /*persist=*/true);
  json j{{"graph", spec},
         {"r", r.to_string()},
         {"value", sg::to_fraction_string(table.at(r))},
         {"value_float", sg::to_double(table.at(r))},
         {"lower_bound", sg::lower_bound(d, r)},
         {"total", r.total()}};
  emit(j, out_path);
  return 0;
}

int run_face(const std::string& spec, const std::string& r_csv, const std::string& out_path) {
  const sg::Digraph d = parse_graph_spec(spec);
  const auto r = sg::RestrictionVector::parse(r_csv);
  sg::ValueTable table = solved_table(d, r, /*persist=*/true);
  const sg::OptimalFace face = sg::optimal_face(d, r, table);
  json j{{"graph", spec}, {"r", r.to_string()}, {"value", sg::to_fraction_string(face.value)},
         {"singleton", face.singleton}};
  auto ranges = json::array();
  for (std::size_t i = 0; i < face.support.size(); ++i) {
    ranges.push_back({{"vertex", face.support[i]},
                      {"min", sg::to_fraction_string(face.ranges[i].first)},
                      {"max", sg::to_fraction_string(face.ranges[i].second)},
                      {"witness", sg::to_fraction_string(face.witness[face.support[i]])}});
  }
  j["face"] = std::move(ranges);
  emit(j, out_path);
  return 0;
}

int run_scaling(const std::string& spec, const std::string& ns, const std::string& backend,
                const std::string& format, const std::string& out_path) {
  const sg::Digraph d = parse_graph_spec(spec);
  const auto [n_lo, n_hi] = parse_range(ns);
  sg::require(1 <= n_lo && n_lo <= n_hi, "bad --ns range");

  std::vector<std::pair<int, double>> rows;
  std::vector<std::string> exact_values;
  if (backend == "greedy-exact") {
    const auto diagonal = sg::c3_greedy_diagonal(d, n_hi);
    for (int n = n_lo; n <= n_hi; ++n) {
      rows.emplace_back(n, sg::to_double(diagonal[n]));
      exact_values.push_back(sg::to_fraction_string(diagonal[n]));
    }
  } else if (backend == "exact") {
    sg::ValueTable table = solved_table(d, sg::RestrictionVector::constant(d.vertex_count(), n_hi),
                                        /*persist=*/true);
    for (int n = n_lo; n <= n_hi; ++n) {
      const auto r = sg::RestrictionVector::constant(d.vertex_count(), n);
      rows.emplace_back(n, sg::to_double(table.at(r)));
      exact_values.push_back(sg::to_fraction_string(table.at(r)));
    }
  } else if (backend == "float") {
    const auto values =
        sg::solve_box_float(d, sg::RestrictionVector::constant(d.vertex_count(), n_hi));
    for (int n = n_lo; n <= n_hi; ++n) {
      rows.emplace_back(n, values.at(sg::RestrictionVector::constant(d.vertex_count(), n)));
    }
  } else {
    throw sg::input_error("--backend must be greedy-exact, exact or float");
  }

  std::vector<sg::ScalingSample> samples;
  for (const auto& [n, v] : rows) samples.push_back({static_cast<double>(n), v});
  const sg::ScalingFit fit = sg::scaling_fit(samples);

  if (format == "csv") {
    std::ostringstream csv;
    csv << "n,value,value_over_sqrt_n\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      csv << rows[i].first << ","
          << (exact_values.empty() ? sg::format_double(rows[i].second) : exact_values[i]) << ","
          << sg::format_double(rows[i].second / std::sqrt(rows[i].first)) << "\n";
    }
    if (out_path.empty()) {
      std::cout << csv.str();
    } else {
      std::ofstream out(out_path);
      sg::require(out.good(), "cannot open output file: " + out_path);
      out << csv.str();
    }
    return 0;
  }

  json j{{"graph", spec}, {"backend", backend},
         {"fit", {{"slope", fit.slope}, {"intercept", fit.intercept}, {"c_hat", fit.c_hat}}}};
  auto table_json = json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    json row{{"n", rows[i].first},
             {"value_float", rows[i].second},
             {"value_over_sqrt_n", rows[i].second / std::sqrt(rows[i].first)}};
    if (!exact_values.empty()) row["value"] = exact_values[i];
    table_json.push_back(std::move(row));
  }
  j["samples"] = std::move(table_json);
  emit(j, out_path);
  return 0;
}

int run_simulate(const std::string& experiment, const std::string& spec, const std::string& r0_csv,
                 const std::string& rei_name, const std::string& norman_name, long reps,
                 std::uint64_t seed, int dep_k, int dep_n, const std::string& geom_p, long geom_n,
                 const std::string& out_path) {
  if (experiment == "depletion") {
    const auto result = sg::depletion_stats(dep_k, dep_n, reps, seed);
    json j = monte_carlo_json(result);
    j["experiment"] = "depletion";
    j["k"] = dep_k;
    j["n"] = dep_n;
    j["mean_over_sqrt_n"] = result.mean / std::sqrt(static_cast<double>(dep_n));
    emit(j, out_path);
    return 0;
  }
  if (experiment == "geomtail") {
    const auto result = sg::geometric_tail(sg::rational_from_string(geom_p), geom_n, reps, seed);
    json j{{"experiment", "geomtail"},
           {"p", geom_p},
           {"N", geom_n},
           {"estimate", result.estimate},
           {"stderr", result.stderr_of_mean},
           {"normalized_ratio", result.normalized_ratio}};
    emit(j, out_path);
    return 0;
  }
  sg::require(experiment == "play", "--experiment must be play, depletion or geomtail");
  const sg::Digraph d = parse_graph_spec(spec);
  const auto r0 = sg::RestrictionVector::parse(r0_csv);
  const sg::ReiStrategy rei = parse_rei(rei_name, d, r0);
  const sg::NormanStrategy norman = parse_norman(norman_name);
  const auto result = sg::monte_carlo(d, r0, rei, norman, reps, seed);
  json j = monte_carlo_json(result);
  j["experiment"] = "play";
  j["graph"] = spec;
  j["r0"] = r0.to_string();
  j["rei"] = sg::rei_strategy_to_json(rei);
  j["norman"] = sg::norman_strategy_to_json(norman);
  j["seed"] = seed;
  emit(j, out_path);
  return 0;
}

int run_spectral(const std::string& spec, const std::string& out_path) {
  const sg::Digraph d = parse_graph_spec(spec);
  json j = sg::spectral_report_to_json(sg::spectral_report(d));
  j["graph"] = spec;
  j["k"] = d.vertex_count();
  emit(j, out_path);
  return 0;
}

int run_oblivious(const std::string& spec, bool certificate, bool decide, int rate_k,
                  int samples, std::uint64_t seed, const std::string& box_csv,
                  const std::string& out_path) {
  if (rate_k > 0) {
    const auto rate = sg::oblivious_rate(rate_k, samples, seed);
    json j{{"k", rate_k},
           {"samples", rate.samples},
           {"with_certificate", rate.with_certificate},
           {"rate", rate.rate},
           {"seed", seed}};
    emit(j, out_path);
    return 0;
  }
  const sg::Digraph d = parse_graph_spec(spec);
  if (certificate) {
    const auto cert = sg::find_certificate(d);
    json j{{"graph", spec}, {"found", cert.has_value()}};
    if (cert) j["certificate"] = cert->vertices;
    emit(j, out_path);
    return 0;
  }
  sg::require(decide, "pick one of --certificate, --rate, --decide");
  const auto box = sg::RestrictionVector::parse(box_csv);
  sg::ValueTable table = solved_table(d, box, /*persist=*/true);
  json j = sg::verdict_to_json(sg::decide_oblivious_on_box(d, box, table));
  j["graph"] = spec;
  emit(j, out_path);
  return 0;
}

int run_restricted(const std::string& game_spec, const std::string& a_csv,
                   const std::string& b_csv, const std::string& op, const std::string& side,
                   const std::string& out_path) {
  sg::BimatrixGame game = [&]() {
    if (game_spec == "rps") return sg::rps_game();
    std::ifstream in(game_spec);
    sg::require(in.good(), "cannot open game file: " + game_spec);
    return sg::bimatrix_from_json(json::parse(in));
  }();
  auto parse_counts = [](const std::string& csv) {
    const auto rv = sg::RestrictionVector::parse(csv);
    return rv.counts();
  };
  const sg::RestrictionPair pair(parse_counts(a_csv), parse_counts(b_csv));
  json j{{"game", game_spec}, {"a", a_csv}, {"b", b_csv}};
  if (op == "value") {
    const sg::Rational m = sg::restricted_value(game, pair);
    j["op"] = "value";
    j["value"] = sg::to_fraction_string(m);
    j["value_float"] = sg::to_double(m);
  } else if (op == "best-response") {
    const auto responder = side == "alice" ? sg::RestrictedSide::alice : sg::RestrictedSide::bob;
    const auto opponent_side =
        responder == sg::RestrictedSide::alice ? sg::RestrictedSide::bob : sg::RestrictedSide::alice;
    const sg::Rational v =
        sg::restricted_best_response(game, pair, responder, sg::uniform_rule(opponent_side));
    j["op"] = "best-response";
    j["responder"] = side;
    j["opponent"] = "uniform";
    j["alice_score"] = sg::to_fraction_string(v);
    j["alice_score_float"] = sg::to_double(v);
    j["uniform_value"] = sg::to_fraction_string(sg::restricted_value(game, pair));
  } else {
    throw sg::input_error("--op must be value or best-response");
  }
  emit(j, out_path);
  return 0;
}

int run_cache(const std::string& file, const std::string& spec) {
  std::string expected;
  if (!spec.empty()) expected = parse_graph_spec(spec).fingerprint();
  const sg::ValueTable table = sg::ValueTable::load_file(file, expected);
  json j{{"file", file},
         {"fingerprint", table.fingerprint()},
         {"entries", table.size()},
         {"completion_level", table.completion_level()},
         {"valid", true}};
  emit(j, "");
  return 0;
}

// Interactive commit-reveal play.  Rei's move is drawn and committed (hash of
// move, nonce and round index printed) before the human's vertex is read, so
// the sequential terminal cannot leak information either way.
int run_play(const std::string& spec, int n, const std::string& r0_csv,
             const std::string& rei_name, std::uint64_t seed) {
  const sg::Digraph d = parse_graph_spec(spec);
  sg::RestrictionVector r = r0_csv.empty()
                                ? sg::RestrictionVector::constant(d.vertex_count(), n)
                                : sg::RestrictionVector::parse(r0_csv);
  const sg::RestrictionVector r0 = r;

  // Default Rei: optimal from a solved table when the box is desk-sized,
  // greedy on the circuit otherwise.
  long box_states = 1;
  for (int v = 0; v < r0.size(); ++v) {
    box_states *= r0[v] + 1;
    if (box_states > 200000) break;
  }
  sg::ReiStrategy rei = sg::GreedyRps{};
  std::optional<sg::Rational> exact_value;
  std::string rei_label = rei_name;
  if (rei_name == "optimal" || (rei_name.empty() && box_states <= 20000)) {
    auto table = std::make_shared<sg::ValueTable>(solved_table(d, r0, /*persist=*/true));
    exact_value = table->at(r0);
    rei = sg::OptimalFromTable{table, std::make_shared<sg::Digraph>(d)};
    rei_label = "optimal";
  } else if (rei_name == "greedy" || rei_name.empty()) {
    rei = sg::GreedyRps{};
    rei_label = "greedy";
    sg::ValueTable table = sg::c3_greedy_table(d, r0);
    exact_value = table.at(r0);
  } else if (rei_name == "uniform") {
    rei = sg::UniformUntilDepletion{};
  } else {
    throw sg::input_error("--rei must be optimal, greedy or uniform");
  }

  sg::SplitMix64 rng(seed);
  long score = 0;  // human's (Norman's) score
  long round_index = 0;
  std::cout << "semigame play: you are Norman on '" << spec << "', Rei plays " << rei_label
            << ".\n";
  std::cout << "Rei must use vertex v exactly r_v more times; you may play any vertex.\n";

  while (r.total() > 0) {
    const sg::Distribution mixture = sg::realize(rei, d, r);
    const int rei_move = mixture.sample(rng);
    const std::uint64_t nonce = rng.next();
    const std::string commitment = sha256_hex(std::to_string(rei_move) + ":" +
                                              std::to_string(nonce) + ":" +
                                              std::to_string(round_index));
    std::cout << "\nround " << round_index << " | remaining r = (" << r.to_string()
              << ") | your score " << score << "\n";
    std::cout << "rei-commit " << commitment << "\n";

    int human = -1;
    while (true) {
      std::cout << "your vertex [0.." << d.vertex_count() - 1 << "]: " << std::flush;
      std::string line;
      if (!std::getline(std::cin, line)) {
        std::cout << "\nsession aborted.\n";
        return 0;
      }
      try {
        human = std::stoi(line);
      } catch (const std::exception&) {
        std::cout << "not a vertex; try again.\n";
        continue;
      }
      if (human < 0 || human >= d.vertex_count()) {
        std::cout << "vertex out of range; try again.\n";
        continue;
      }
      break;
    }

    const int delta = d.orient(human, rei_move);
    score += delta;
    std::cout << "rei-reveal move=" << rei_move << " nonce=" << nonce << " (check "
              << sha256_hex(std::to_string(rei_move) + ":" + std::to_string(nonce) + ":" +
                            std::to_string(round_index))
              << ")\n";
    std::cout << "you " << (delta > 0 ? "win" : delta < 0 ? "lose" : "draw") << " the round ("
              << (delta > 0 ? "+1" : delta < 0 ? "-1" : "0") << ")\n";
    r = r.minus(rei_move);
    ++round_index;
  }

  std::cout << "\nfinal score " << score << " after " << round_index << " rounds\n";
  if (exact_value) {
    std::cout << "exact game value for an optimal Norman: " << sg::to_fraction_string(*exact_value)
              << " = " << sg::to_double(*exact_value) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semigame: exact solver and experiment toolkit for semi-restricted games on digraphs"};
  app.require_subcommand(1);

  // graph
  auto* graph = app.add_subcommand("graph", "inspect, generate or enumerate digraphs");
  std::string g_spec = "cycle3", g_enum, g_out;
  int g_k = 5, g_cap = sg::kEnumerationCap;
  graph->add_option("--graph", g_spec, "graph spec: name | file | random:<k>:<seed>");
  graph->add_option("--enumerate", g_enum, "enumerate 'eulerian' or 'tournaments'");
  graph->add_option("--k", g_k, "vertex count for --enumerate");
  graph->add_option("--cap", g_cap, "enumeration cap override");
  graph->add_option("--out", g_out, "write JSON here instead of stdout");

  // solve
  auto* solve = app.add_subcommand("solve", "solve a box of states by backward induction");
  std::string s_spec = "cycle3", s_box = "5,5,5", s_backend = "exact", s_out;
  bool s_no_cache = false;
  solve->add_option("--graph", s_spec, "graph spec");
  solve->add_option("--box", s_box, "box corner, e.g. 5,5,5");
  solve->add_option("--backend", s_backend, "exact | greedy-exact | float");
  solve->add_flag("--no-cache", s_no_cache, "do not read or write the cache");
  solve->add_option("--out", s_out, "write JSON here instead of stdout");

  // query
  auto* query = app.add_subcommand("query", "exact value of one restriction vector");
  std::string q_spec = "cycle3", q_r = "1,1,1", q_out;
  query->add_option("--graph", q_spec, "graph spec");
  query->add_option("--r", q_r, "restriction vector");
  query->add_option("--out", q_out, "write JSON here instead of stdout");

  // face
  auto* face = app.add_subcommand("face", "optimal-face ranges at one state");
  std::string f_spec = "cycle3", f_r = "1,1,1", f_out;
  face->add_option("--graph", f_spec, "graph spec");
  face->add_option("--r", f_r, "restriction vector");
  face->add_option("--out", f_out, "write JSON here instead of stdout");

  // scaling
  auto* scaling = app.add_subcommand("scaling", "values of n*(1,...,1) and a sqrt-n fit");
  std::string sc_spec = "cycle3", sc_ns = "10..100", sc_backend = "greedy-exact",
              sc_format = "json", sc_out;
  scaling->add_option("--graph", sc_spec, "graph spec");
  scaling->add_option("--ns", sc_ns, "range of n, e.g. 10..100");
  scaling->add_option("--backend", sc_backend, "greedy-exact | exact | float");
  scaling->add_option("--format", sc_format, "json | csv");
  scaling->add_option("--out", sc_out, "write here instead of stdout");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "seeded Monte Carlo experiments");
  std::string m_experiment = "play", m_spec = "cycle3", m_r0 = "3,3,3", m_rei = "greedy",
              m_norman = "best-response", m_geom_p = "1/3", m_out;
  long m_reps = 1000, m_geom_n = 100;
  std::uint64_t m_seed = 1;
  int m_dep_k = 3, m_dep_n = 100;
  simulate->add_option("--experiment", m_experiment, "play | depletion | geomtail");
  simulate->add_option("--graph", m_spec, "graph spec (play)");
  simulate->add_option("--r0", m_r0, "initial restriction vector (play)");
  simulate->add_option("--rei", m_rei, "greedy|uniform|trimmed|optimal|oblivious:<file>");
  simulate->add_option("--norman", m_norman, "best-response|fixed:<v>");
  simulate->add_option("--reps", m_reps, "repetitions");
  simulate->add_option("--seed", m_seed, "master seed");
  simulate->add_option("--k", m_dep_k, "alphabet size (depletion)");
  simulate->add_option("--n", m_dep_n, "per-symbol budget (depletion)");
  simulate->add_option("--p", m_geom_p, "geometric parameter as num/den (geomtail)");
  simulate->add_option("--N", m_geom_n, "number of geometric terms (geomtail)");
  simulate->add_option("--out", m_out, "write JSON here instead of stdout");

  // spectral
  auto* spectral = app.add_subcommand("spectral", "skew adjacency spectral report");
  std::string sp_spec = "cycle3", sp_out;
  spectral->add_option("--graph", sp_spec, "graph spec");
  spectral->add_option("--out", sp_out, "write JSON here instead of stdout");

  // oblivious
  auto* oblivious = app.add_subcommand("oblivious", "certificates, rates and boxed decisions");
  std::string o_spec = "cycle3", o_box = "3,3,3", o_out;
  bool o_cert = false, o_decide = false;
  int o_rate_k = 0, o_samples = 200;
  std::uint64_t o_seed = 1;
  oblivious->add_option("--graph", o_spec, "graph spec");
  oblivious->add_flag("--certificate", o_cert, "search for a non-obliviousness certificate");
  oblivious->add_flag("--decide", o_decide, "decide obliviousness relative to --box");
  oblivious->add_option("--rate", o_rate_k, "certificate rate over random tournaments on k vertices");
  oblivious->add_option("--samples", o_samples, "samples for --rate");
  oblivious->add_option("--seed", o_seed, "seed for --rate");
  oblivious->add_option("--box", o_box, "box for --decide");
  oblivious->add_option("--out", o_out, "write JSON here instead of stdout");

  // restricted
  auto* restricted = app.add_subcommand("restricted", "games with both players restricted");
  std::string r_game = "rps", r_a = "1,1,1", r_b = "1,1,1", r_op = "value", r_side = "alice",
              r_out;
  restricted->add_option("--game", r_game, "rps | payoff JSON file");
  restricted->add_option("--a", r_a, "Alice's counts");
  restricted->add_option("--b", r_b, "Bob's counts");
  restricted->add_option("--op", r_op, "value | best-response");
  restricted->add_option("--side", r_side, "responding side for best-response: alice | bob");
  restricted->add_option("--out", r_out, "write JSON here instead of stdout");

  // play
  auto* play = app.add_subcommand("play", "interactive commit-reveal session against Rei");
  std::string p_spec = "cycle3", p_r0, p_rei;
  int p_n = 2;
  std::uint64_t p_seed = 0;
  play->add_option("--graph", p_spec, "graph spec");
  play->add_option("--n", p_n, "uniform restriction n per vertex");
  play->add_option("--r0", p_r0, "explicit restriction vector (overrides --n)");
  play->add_option("--rei", p_rei, "optimal | greedy | uniform (default: optimal, greedy fallback)");
  play->add_option("--seed", p_seed, "session seed");

  // cache
  auto* cache = app.add_subcommand("cache", "inspect and validate a cache file");
  std::string c_file, c_spec;
  cache->add_option("--file", c_file, "cache file path")->required();
  cache->add_option("--graph", c_spec, "graph spec to validate the fingerprint against");

  try {
    app.parse(argc, argv);
    if (graph->parsed()) return run_graph(g_spec, g_enum, g_k, g_cap, g_out);
    if (solve->parsed()) return run_solve(s_spec, s_box, s_backend, s_no_cache, s_out);
    if (query->parsed()) return run_query(q_spec, q_r, q_out);
    if (face->parsed()) return run_face(f_spec, f_r, f_out);
    if (scaling->parsed()) return run_scaling(sc_spec, sc_ns, sc_backend, sc_format, sc_out);
    if (simulate->parsed())
      return run_simulate(m_experiment, m_spec, m_r0, m_rei, m_norman, m_reps, m_seed, m_dep_k,
                          m_dep_n, m_geom_p, m_geom_n, m_out);
    if (spectral->parsed()) return run_spectral(sp_spec, sp_out);
    if (oblivious->parsed())
      return run_oblivious(o_spec, o_cert, o_decide, o_rate_k, o_samples, o_seed, o_box, o_out);
    if (restricted->parsed()) return run_restricted(r_game, r_a, r_b, r_op, r_side, r_out);
    if (play->parsed()) return run_play(p_spec, p_n, p_r0, p_rei, p_seed);
    if (cache->parsed()) return run_cache(c_file, c_spec);
    std::cerr << app.help() << "\n";
    return 1;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const sg::input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const sg::internal_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
