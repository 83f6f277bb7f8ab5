// Copyright 2026 The meshplan Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "meshplan/cli.hpp"
#include "unit/test_support.hpp"

namespace {

using namespace meshplan;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Criterion 9 tally over every feasible plan seen by the suite.
struct ConservationTally {
  long checked = 0;
  long failed = 0;
  void add(const Solution& s, const PlanningInstance& inst) {
    ++checked;
    if (!testing::flows_conserved(s, inst)) ++failed;
  }
};

ConservationTally g_conservation;

struct Counts {
  double aps = 0, relays = 0, gateways = 0, total = 0;
};

Counts cheapest_counts(const PlanningInstance& inst, ModelVariant variant, std::uint64_t seed) {
  const PlanningContext ctx(inst);
  MopsoConfig config;
  config.seed = seed;
  config.variant = variant;
  const auto result = run(ctx, config);
  for (const auto& e : result.archive.entries()) g_conservation.add(e.solution, inst);
  const auto& s = cheapest_solution(result.archive).solution;
  return {static_cast<double>(s.access_point_count()), static_cast<double>(s.relay_count()),
          static_cast<double>(s.gateway_count()), static_cast<double>(s.access_point_count() + s.relay_count())};
}

PlanningInstance grid(int side, double traffic, std::uint64_t seed) {
  GridInstanceParams p;
  p.rows = p.cols = side;
  p.traffic = traffic;
  p.seed = seed;
  return build_grid_instance(p);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Verdict {
  bool pass;
  std::string detail;
};

Verdict feasibility() {
  const auto start = Clock::now();
  const PlanningContext ctx(testing::standard_instance(1));
  int ok = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng rng(seed);
    const auto s = construct_feasible(ctx, rng);
    if (check_constraints(s, ctx).feasible()) ++ok;
    g_conservation.add(s, ctx.instance());
  }
  const double t = seconds_since(start);
  return {ok == 100 && t < 30.0, std::to_string(ok) + "/100 feasible in " + fmt("%.1f", t) + " s"};
}

Verdict archive_soundness() {
  const auto start = Clock::now();
  const PlanningContext ctx(testing::standard_instance(1));
  MopsoConfig config;
  const auto result = run(ctx, config);
  int infeasible = 0, dominated_pairs = 0;
  for (const auto& a : result.archive.entries()) {
    if (!check_constraints(a.solution, ctx).feasible()) ++infeasible;
    g_conservation.add(a.solution, ctx.instance());
    for (const auto& b : result.archive.entries()) dominated_pairs += dominates(a.objectives, b.objectives);
  }
  const double t = seconds_since(start);
  return {infeasible == 0 && dominated_pairs == 0 && t < 120.0,
          "archive " + std::to_string(result.archive.size()) + ", infeasible " + std::to_string(infeasible) +
              ", dominated pairs " + std::to_string(dominated_pairs) + ", " + fmt("%.1f", t) + " s"};
}

Verdict oracle_equivalence() {
  const auto start = Clock::now();
  std::ostringstream out, err;
  const int code = cli::run_cli({"verify", "--instance", testing::fixture_path("toy_instance.json").string(),
                                 "--front", testing::fixture_path("toy_front_lglb.json").string(), "--reps", "5"},
                                out, err);
  const double t = seconds_since(start);
  int ok = 0;
  std::istringstream lines(out.str());
  for (std::string line; std::getline(lines, line);) ok += line.size() >= 2 && line.substr(line.size() - 2) == "ok";
  return {code == 0 && ok == 5 && t < 300.0,
          std::to_string(ok) + "/5 seeds on the true front with coverage >= 0.8, " + fmt("%.1f", t) + " s"};
}

Verdict relay_counts() {
  const PlanningContext ctx(testing::hand_instance(3, 3, {{1.0, 1.0}}));
  std::string got;
  bool pass = true;
  for (auto [site, want] : {std::pair{0, 2}, std::pair{1, 3}, std::pair{4, 4}}) {
    Solution s(ctx);
    s.install_access_point(site);
    place_relays(s, ctx);
    pass = pass && s.relay_count() == want;
    got += (got.empty() ? "" : "/") + std::to_string(s.relay_count());
  }
  return {pass, "corner/edge/internal relays " + got};
}

std::string list(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : ", ") + fmt("%.2f", x);
  return s;
}

Verdict grid_trend() {
  std::vector<double> means;
  for (int side : {6, 7, 8, 10}) {
    double sum = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) sum += cheapest_counts(grid(side, 2.0, seed), ModelVariant::Lglb, seed).total;
    means.push_back(sum / 10.0);
  }
  bool increasing = true;
  for (std::size_t i = 1; i < means.size(); ++i) increasing = increasing && means[i] > means[i - 1];
  return {increasing, "mean total nodes 6x6..10x10: " + list(means)};
}

Verdict traffic_trend() {
  std::vector<double> means;
  for (double traffic : {1.0, 2.0, 3.0, 4.0}) {
    double sum = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto c = cheapest_counts(grid(6, traffic, seed), ModelVariant::Lglb, seed);
      sum += c.aps + c.gateways;
    }
    means.push_back(sum / 10.0);
  }
  bool monotone = means.back() > means.front();
  for (std::size_t i = 1; i < means.size(); ++i) monotone = monotone && means[i] >= means[i - 1];
  return {monotone, "mean APs+gateways for T=1..4: " + list(means)};
}

std::map<ModelVariant, Counts> g_variant_means;

void run_variants() {
  if (!g_variant_means.empty()) return;
  for (auto variant : {ModelVariant::Cov, ModelVariant::Llb, ModelVariant::Glb, ModelVariant::Lglb}) {
    Counts sum;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto c = cheapest_counts(grid(6, 2.0, seed), variant, seed);
      sum.aps += c.aps / 10.0;
      sum.relays += c.relays / 10.0;
    }
    g_variant_means[variant] = sum;
  }
}

std::string variant_line(double Counts::*field) {
  std::string s;
  for (const auto& [variant, c] : g_variant_means) {
    s += (s.empty() ? "" : ", ") + std::string(to_string(variant)) + " " + fmt("%.2f", c.*field);
  }
  return s;
}

Verdict cov_most_aps() {
  run_variants();
  const double cov = g_variant_means[ModelVariant::Cov].aps;
  bool pass = true;
  for (auto v : {ModelVariant::Llb, ModelVariant::Glb, ModelVariant::Lglb}) pass = pass && cov >= g_variant_means[v].aps;
  return {pass, "mean APs: " + variant_line(&Counts::aps)};
}

Verdict balanced_fewer_relays() {
  run_variants();
  const double cov = g_variant_means[ModelVariant::Cov].relays;
  const bool pass = g_variant_means[ModelVariant::Llb].relays <= cov && g_variant_means[ModelVariant::Lglb].relays <= cov;
  return {pass, "mean relays: " + variant_line(&Counts::relays)};
}

Verdict determinism() {
  const auto base = fs::temp_directory_path() / "meshplan_acceptance_determinism";
  fs::remove_all(base);
  auto plan = [&](const std::string& name, const char* threads) {
    std::ostringstream out, err;
    return cli::run_cli({"plan", "--grid", "6x6", "--dps", "200", "--traffic", "2", "--capacity", "54", "--radios", "3",
                         "--channels", "11", "--hops", "3", "--model", "lglb", "--seed", "1", "--threads", threads,
                         "--out", (base / name).string()},
                        out, err);
  };
  const bool ran = plan("a", "1") == 0 && plan("b", "1") == 0 && plan("c", "4") == 0;
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  bool same = ran;
  for (const char* f : {"archive.json", "stats.csv"}) {
    const auto a = slurp(base / "a" / f);
    same = same && !a.empty() && a == slurp(base / "b" / f) && a == slurp(base / "c" / f);
  }
  fs::remove_all(base);
  return {same, ran ? (same ? "repeat and 4-thread runs byte-identical" : "outputs differ") : "plan failed"};
}

Verdict flow_conservation() {
  return {g_conservation.checked > 0 && g_conservation.failed == 0,
          std::to_string(g_conservation.checked) + " plans checked, " + std::to_string(g_conservation.failed) +
              " unbalanced"};
}

Verdict evaluator_spot_checks() {
  const std::vector<double> balanced{10.0, 10.0}, skewed{20.0, 0.0};
  const double a = evaluate_gateway_balance(balanced), b = evaluate_gateway_balance(skewed);
  Solution s(6, 0, 3);
  for (int j : {0, 1, 2}) s.install_access_point(j);
  for (int j : {3, 4}) s.install_relay(j);
  s.gateway[3] = 1;
  const int cost = evaluate_cost(s);
  const bool pass = std::abs(a - std::sqrt(10.0)) <= 1e-12 && std::abs(b - std::sqrt(20.0)) <= 1e-12 && cost == 6;
  return {pass, "balance " + fmt("%.12g", a) + " / " + fmt("%.12g", b) + ", cost " + std::to_string(cost)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Verdict()> check;
  };
  // Criterion 9 runs last so it sees every plan produced by the others.
  const std::vector<Criterion> criteria{
      {1, "feasibility contract", feasibility},
      {2, "archive soundness", archive_soundness},
      {3, "oracle equivalence", oracle_equivalence},
      {4, "relay placement counts", relay_counts},
      {5, "nodes grow with grid size", grid_trend},
      {6, "APs and gateways grow with traffic", traffic_trend},
      {7, "COV places the most APs", cov_most_aps},
      {8, "LLB and LGLB use no more relays than COV", balanced_fewer_relays},
      {10, "determinism", determinism},
      {11, "evaluator spot checks", evaluator_spot_checks},
      {9, "flow conservation", flow_conservation},
  };
  std::map<int, std::string> lines;
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    failures += !v.pass;
    lines[c.id] = std::string(v.pass ? "PASS" : "FAIL") + " criterion " + std::to_string(c.id) + " " + c.name + ": " +
                  v.detail + " [" + fmt("%.1f", seconds_since(start)) + " s]";
    std::cerr << lines[c.id] << std::endl;
  }
  for (const auto& [id, line] : lines) std::cout << line << "\n";
  return failures;
}
