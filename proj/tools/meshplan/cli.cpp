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

#include "meshplan/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "meshplan/meshplan.hpp"

namespace meshplan::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string config;
  std::string grid = "6x6";
  std::string instance_file;
  int dps = 200;
  double traffic = 2.0;
  double capacity = 54.0;
  int radios = 3;
  int channels = 11;
  int hops = 3;
  std::string model = "lglb";
  std::string coverage_mode = "assigned";
  std::string gateways = "auto";
  int swarm = 50;
  int gmax = 100;
  double mut = 0.1;
  int archive_cap = 100;
  std::uint64_t seed = 1;
  int reps = 1;
  std::string out;
  bool dump_routes = false;
  std::string random_matrices;
  bool recombine = false;
  double threshold = 0.8;
  int threads = 0;
  std::string axis;
  std::string values;
  std::string models = "cov,llb,glb,lglb";
  std::string front_file;
  std::string solution_file;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string hex_hash(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::pair<int, int> parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  try {
    if (x == std::string::npos) throw std::invalid_argument(text);
    std::size_t used_r = 0, used_c = 0;
    const int rows = std::stoi(text.substr(0, x), &used_r);
    const int cols = std::stoi(text.substr(x + 1), &used_c);
    if (used_r != x || used_c != text.size() - x - 1) throw std::invalid_argument(text);
    return {rows, cols};
  } catch (const std::logic_error&) {
    throw ParameterError("grid must look like RxC, got '" + text + "'");
  }
}

std::optional<int> parse_gateways(const std::string& text) {
  if (text == "auto") return std::nullopt;
  try {
    std::size_t used = 0;
    const int n = std::stoi(text, &used);
    if (used != text.size() || n < 1) throw std::invalid_argument(text);
    return n;
  } catch (const std::logic_error&) {
    throw ParameterError("--gateways takes a positive count or 'auto', got '" + text + "'");
  }
}

double parse_number(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::logic_error&) {
    throw ParameterError(std::string(what) + " value '" + text + "' is not a number");
  }
}

struct InstanceSettings {
  std::string grid;
  double traffic;
  int radios;
  std::uint64_t seed;
};

InstanceSettings settings_of(const Options& o) { return {o.grid, o.traffic, o.radios, o.seed}; }

PlanningInstance make_instance(const Options& o, const InstanceSettings& s) {
  if (!o.instance_file.empty()) return load_instance(o.instance_file);
  GridInstanceParams p;
  std::tie(p.rows, p.cols) = parse_grid(s.grid);
  p.demand_points = o.dps;
  p.traffic = s.traffic;
  p.interface_capacity = o.capacity;
  p.radios = s.radios;
  p.channels = o.channels;
  p.hop_bound = o.hops;
  p.seed = s.seed;
  if (!o.random_matrices.empty()) {
    p.random_matrix_density = o.random_matrices == "default" ? 0.5 : parse_number(o.random_matrices, "--random-matrices");
  }
  return build_grid_instance(p);
}

MopsoConfig make_config(const Options& o, ModelVariant variant, std::uint64_t seed) {
  MopsoConfig c;
  c.swarm_size = o.swarm;
  c.generations = o.gmax;
  c.mutation_rate = o.mut;
  c.archive_capacity = o.archive_cap;
  c.seed = seed;
  c.variant = variant;
  c.coverage_mode = parse_coverage_mode(o.coverage_mode);
  c.gateway_count = parse_gateways(o.gateways);
  c.recombine = o.recombine;
  c.threads = o.threads;
  c.validate();
  return c;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  file << text;
  if (!file) throw IoError("cannot write " + path.string());
}

nlohmann::json read_json(const fs::path& path) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(file);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

std::string cheapest_row(const ArchiveEntry& e) {
  const auto& s = e.solution;
  const int aps = s.access_point_count();
  const int relays = s.relay_count();
  return std::to_string(aps) + "," + std::to_string(relays) + "," + std::to_string(s.gateway_count()) + "," +
         std::to_string(aps + relays) + "," + std::to_string(e.raw.coverage) + "," +
         format_double(e.raw.link_residual) + "," + format_double(e.raw.gateway_balance);
}

std::string summary_text(const PlanningInstance& inst, const MopsoConfig& config, const RunResult& result) {
  const auto& best = cheapest_solution(result.archive);
  const auto& s = best.solution;
  std::ostringstream out;
  out << "instance    " << inst.rows << "x" << inst.cols << " grid, " << inst.site_count() << " sites, "
      << inst.demand_count() << " demand points, hash " << hex_hash(instance_hash(inst)) << "\n";
  out << "model       " << to_string(config.variant) << " (" << to_string(config.coverage_mode) << " coverage), seed "
      << config.seed << "\n";
  out << "archive     " << result.archive.size() << " solutions\n";
  out << "cheapest    aps=" << s.access_point_count() << " relays=" << s.relay_count()
      << " gateways=" << s.gateway_count() << " total=" << s.installed_count() << "\n";
  out << "objectives  cost=" << best.raw.cost << " coverage=" << best.raw.coverage
      << " link_residual=" << format_double(best.raw.link_residual)
      << " gateway_balance=" << format_double(best.raw.gateway_balance) << "\n";
  return out.str();
}

int cmd_plan(const Options& o, std::ostream& out) {
  const auto inst = make_instance(o, settings_of(o));
  const PlanningContext context(inst);
  const auto config = make_config(o, parse_variant(o.model), o.seed);
  const auto result = run(context, config);

  const fs::path dir = o.out.empty() ? fs::path("meshplan-out") : fs::path(o.out);
  fs::create_directories(dir);
  write_file(dir / "instance.json", instance_to_json_string(inst) + "\n");
  write_file(dir / "archive.json", archive_to_json(result.archive, config.variant, config.coverage_mode).dump(2) + "\n");
  write_file(dir / "stats.csv", stats_to_csv(result.stats));

  const auto& best = cheapest_solution(result.archive);
  nlohmann::json cheapest = {{"objectives",
                              {{"cost", best.raw.cost},
                               {"coverage", best.raw.coverage},
                               {"link_residual", best.raw.link_residual},
                               {"gateway_balance", best.raw.gateway_balance}}},
                             {"solution", solution_to_json(best.solution)}};
  write_file(dir / "cheapest.json", cheapest.dump(2) + "\n");
  if (o.dump_routes) {
    Solution copy = best.solution;
    write_file(dir / "routes.json", traces_to_json(route_flows(copy, context)).dump(2) + "\n");
  }
  const auto summary = summary_text(inst, config, result);
  write_file(dir / "summary.txt", summary);
  out << summary << "artifacts   " << dir.string() << "\n";
  return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  if (o.axis != "grid" && o.axis != "traffic" && o.axis != "radios") {
    throw ParameterError("--axis must be grid, traffic or radios");
  }
  const auto values = split(o.values, ',');
  if (values.empty()) throw ParameterError("--values is empty");
  if (o.reps < 1) throw ParameterError("--reps must be at least 1");
  const auto variant = parse_variant(o.model);

  std::string csv = std::string(kSweepHeader) + "\n";
  for (const auto& value : values) {
    for (int rep = 0; rep < o.reps; ++rep) {
      auto s = settings_of(o);
      s.seed = o.seed + static_cast<std::uint64_t>(rep);
      if (o.axis == "grid") {
        parse_grid(value);
        s.grid = value;
      } else if (o.axis == "traffic") {
        s.traffic = parse_number(value, "traffic");
      } else {
        s.radios = static_cast<int>(parse_number(value, "radios"));
      }
      const PlanningContext context(make_instance(o, s));
      const auto result = run(context, make_config(o, variant, s.seed));
      csv += o.axis + "," + value + "," + std::to_string(s.seed) + "," + cheapest_row(cheapest_solution(result.archive)) +
             "\n";
    }
  }
  if (o.out.empty()) {
    out << csv;
  } else {
    write_file(o.out, csv);
  }
  return kExitOk;
}

int cmd_compare(const Options& o, std::ostream& out) {
  std::vector<ModelVariant> variants;
  for (const auto& m : split(o.models, ',')) variants.push_back(parse_variant(m));
  std::sort(variants.begin(), variants.end());
  variants.erase(std::unique(variants.begin(), variants.end()), variants.end());
  if (variants.size() < 2) throw ParameterError("--models needs at least two distinct variants");
  const auto grids = split(o.grid, ',');
  if (grids.empty()) throw ParameterError("--grid is empty");
  if (o.reps < 1) throw ParameterError("--reps must be at least 1");

  std::string csv = std::string(kCompareHeader) + "\n";
  for (const auto& grid : grids) {
    for (int rep = 0; rep < o.reps; ++rep) {
      auto s = settings_of(o);
      s.grid = grid;
      s.seed = o.seed + static_cast<std::uint64_t>(rep);
      // One shared instance per (grid, rep) keeps the comparison paired.
      const PlanningContext context(make_instance(o, s));
      const auto hash = hex_hash(instance_hash(context.instance()));
      for (auto variant : variants) {
        const auto result = run(context, make_config(o, variant, s.seed));
        csv += std::string(to_string(variant)) + "," + grid + "," + std::to_string(s.seed) + "," + hash + "," +
               cheapest_row(cheapest_solution(result.archive)) + "\n";
      }
    }
  }
  if (o.out.empty()) {
    out << csv;
  } else {
    write_file(o.out, csv);
  }
  return kExitOk;
}

OracleOptions oracle_options(const Options& o) {
  OracleOptions opts;
  opts.coverage_mode = parse_coverage_mode(o.coverage_mode);
  opts.gateway_count = parse_gateways(o.gateways);
  return opts;
}

std::string format_vector(const ObjectiveVector& v) {
  std::string text = "[";
  for (std::size_t m = 0; m < v.size(); ++m) text += (m ? ", " : "") + format_double(v[m]);
  return text + "]";
}

int cmd_verify(const Options& o, std::ostream& out) {
  const auto inst = make_instance(o, settings_of(o));
  const PlanningContext context(inst);
  const auto variant = parse_variant(o.model);
  if (o.reps < 1) throw ParameterError("--reps must be at least 1");

  Front truth{variant, {}};
  if (!o.front_file.empty()) {
    std::uint64_t hash = 0;
    truth = front_from_json(read_json(o.front_file), &hash);
    if (hash != instance_hash(inst)) {
      throw ParameterError("front fixture was generated for instance " + hex_hash(hash) + ", not " +
                           hex_hash(instance_hash(inst)));
    }
    check_oracle_guard(context);
  } else {
    truth.points = true_pareto_front(context, variant, oracle_options(o));
  }
  out << "true front  " << truth.points.size() << " points\n";

  bool ok = true;
  for (int rep = 0; rep < o.reps; ++rep) {
    const std::uint64_t seed = o.seed + static_cast<std::uint64_t>(rep);
    const auto result = run(context, make_config(o, variant, seed));
    Front archive{variant, result.archive.objective_vectors()};
    const auto v = verify_archive(archive, truth);
    const bool pass = v.on_front_fraction == 1.0 && v.front_coverage_fraction >= o.threshold;
    ok = ok && pass;
    out << "seed " << seed << "  archive=" << archive.points.size()
        << " on_front_fraction=" << format_double(v.on_front_fraction)
        << " front_coverage_fraction=" << format_double(v.front_coverage_fraction)
        << " violations=" << v.violations.size() << (pass ? "  ok" : "  FAIL") << "\n";
    for (const auto& p : v.violations) out << "  dominated " << format_vector(p) << "\n";
  }
  return ok ? kExitOk : kExitInfeasible;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  const auto inst = make_instance(o, settings_of(o));
  const PlanningContext context(inst);
  const auto variant = parse_variant(o.model);
  const auto opts = oracle_options(o);
  Front front{variant, true_pareto_front(context, variant, opts)};
  const auto text = front_to_json(front, instance_hash(inst), opts.coverage_mode).dump(2) + "\n";
  if (o.out.empty()) {
    out << text;
  } else {
    write_file(o.out, text);
    out << "front of " << front.points.size() << " points written to " << o.out << "\n";
  }
  return kExitOk;
}

int cmd_instance(const Options& o, std::ostream& out) {
  const auto inst = make_instance(o, settings_of(o));
  const auto text = instance_to_json_string(inst) + "\n";
  if (o.out.empty()) {
    out << text;
  } else {
    write_file(o.out, text);
    out << "instance " << hex_hash(instance_hash(inst)) << " written to " << o.out << "\n";
  }
  return kExitOk;
}

int cmd_check(const Options& o, std::ostream& out) {
  if (o.solution_file.empty()) throw ParameterError("check needs --solution");
  const PlanningContext context(make_instance(o, settings_of(o)));
  auto doc = read_json(o.solution_file);
  if (doc.contains("solution")) doc = doc["solution"];
  Solution s;
  try {
    s = solution_from_json(doc);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed solution: ") + e.what());
  }
  const auto report = check_constraints(s, context);
  out << report_to_json(report).dump(2) << "\n";
  return report.feasible() ? kExitOk : kExitInfeasible;
}

// Expands --config FILE into flag tokens placed right after the subcommand,
// so flags given on the command line take precedence.
void expand_config(std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  if (path.empty() || args.empty()) return;
  const auto doc = read_json(path);
  if (!doc.is_object()) throw SchemaError(path + ": config must be a JSON object");
  std::vector<std::string> tokens;
  for (const auto& [key, value] : doc.items()) {
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      if (value.get<bool>()) tokens.push_back(flag);
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& item : value) {
        if (!joined.empty()) joined += ",";
        joined += item.is_string() ? item.get<std::string>() : item.dump();
      }
      tokens.push_back(flag);
      tokens.push_back(joined);
    } else if (value.is_string()) {
      tokens.push_back(flag);
      tokens.push_back(value.get<std::string>());
    } else if (value.is_number()) {
      tokens.push_back(flag);
      tokens.push_back(value.dump());
    } else {
      throw SchemaError(path + ": unsupported value for '" + key + "'");
    }
  }
  args.insert(args.begin() + 1, tokens.begin(), tokens.end());
}

void add_instance_flags(CLI::App* app, Options& o) {
  app->add_option("--config", o.config, "JSON file of flag values; command-line flags win");
  app->add_option("--grid", o.grid, "Grid size RxC");
  app->add_option("--instance", o.instance_file, "Load the instance from a JSON file");
  app->add_option("--dps", o.dps, "Number of demand points");
  app->add_option("--traffic", o.traffic, "Traffic per demand point (Mb/s)");
  app->add_option("--capacity", o.capacity, "Interface and link capacity (Mb/s)");
  app->add_option("--radios", o.radios, "Radios per router (R)");
  app->add_option("--channels", o.channels, "Number of channels (K)");
  app->add_option("--hops", o.hops, "Hop bound to the nearest gateway (A)");
  app->add_option("--seed", o.seed, "Seed for instance generation and search");
  app->add_option("--random-matrices", o.random_matrices, "Random coverage/connectivity matrices with this density")
      ->expected(0, 1)
      ->default_str("default");
}

void add_model_flags(CLI::App* app, Options& o) {
  app->add_option("--model", o.model, "cov, llb, glb or lglb");
  app->add_option("--coverage-mode", o.coverage_mode, "assigned or literal");
  app->add_option("--gateways", o.gateways, "Gateway count or 'auto'");
}

void add_search_flags(CLI::App* app, Options& o) {
  add_model_flags(app, o);
  app->add_option("--swarm", o.swarm, "Swarm size");
  app->add_option("--gmax", o.gmax, "Generations, counting the initial swarm");
  app->add_option("--mut", o.mut, "Mutation factor in [0, 1]");
  app->add_option("--archive-cap", o.archive_cap, "Archive capacity");
  app->add_option("--reps", o.reps, "Repetitions; rep r uses seed + r");
  app->add_option("--threads", o.threads, "Worker threads for particle evaluation");
  app->add_flag("--recombine", o.recombine, "Recombine particles with an archive leader before mutation");
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"meshplan: multi-objective wireless mesh backbone planner", "meshplan"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  auto* plan = app.add_subcommand("plan", "Run the swarm search once and write artifacts");
  add_instance_flags(plan, o);
  add_search_flags(plan, o);
  plan->add_option("--out", o.out, "Output directory (default meshplan-out)");
  plan->add_flag("--dump-routes", o.dump_routes, "Also write the cheapest plan's routing traces");

  auto* sweep = app.add_subcommand("sweep", "Cheapest-plan node counts across one parameter axis");
  add_instance_flags(sweep, o);
  add_search_flags(sweep, o);
  sweep->add_option("--axis", o.axis, "grid, traffic or radios")->required();
  sweep->add_option("--values", o.values, "Comma-separated axis values")->required();
  sweep->add_option("--out", o.out, "CSV file (default stdout)");

  auto* compare = app.add_subcommand("compare", "Paired comparison of model variants");
  add_instance_flags(compare, o);
  add_search_flags(compare, o);
  compare->add_option("--models", o.models, "Comma-separated variants");
  compare->add_option("--out", o.out, "CSV file (default stdout)");

  auto* verify = app.add_subcommand("verify", "Check the swarm archive against the exhaustive front");
  add_instance_flags(verify, o);
  add_search_flags(verify, o);
  verify->add_option("--front", o.front_file, "Use a stored front instead of enumerating");
  verify->add_option("--threshold", o.threshold, "Minimum front coverage fraction");

  auto* oracle = app.add_subcommand("oracle", "Enumerate the true Pareto front of a tiny instance");
  add_instance_flags(oracle, o);
  add_model_flags(oracle, o);
  oracle->add_option("--out", o.out, "Front JSON file (default stdout)");

  auto* instance = app.add_subcommand("instance", "Generate an instance JSON file");
  add_instance_flags(instance, o);
  instance->add_option("--out", o.out, "Instance JSON file (default stdout)");

  auto* check = app.add_subcommand("check", "Run the constraint checker on a solution");
  add_instance_flags(check, o);
  check->add_option("--solution", o.solution_file, "Solution JSON (or a cheapest.json artifact)")->required();

  try {
    expand_config(args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*plan) return cmd_plan(o, out);
    if (*sweep) return cmd_sweep(o, out);
    if (*compare) return cmd_compare(o, out);
    if (*verify) return cmd_verify(o, out);
    if (*oracle) return cmd_oracle(o, out);
    if (*instance) return cmd_instance(o, out);
    if (*check) return cmd_check(o, out);
  } catch (const GuardRefusal& e) {
    err << "refused: " << e.what() << "\n";
    return kExitRefused;
  } catch (const ConstructionInfeasible& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const RoutingInfeasible& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace meshplan::cli
