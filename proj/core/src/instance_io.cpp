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

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "meshplan/errors.hpp"
#include "meshplan/instance.hpp"

namespace meshplan {

namespace {

constexpr int kInstanceSchemaVersion = 1;

using nlohmann::json;

json sparse_ones(const BinaryMatrix& m) {
  json out = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (m(r, c)) out.push_back({r, c});
    }
  }
  return out;
}

BinaryMatrix dense_from_sparse(const json& entries, int rows, int cols, const char* what) {
  BinaryMatrix m(rows, cols);
  for (const auto& e : entries) {
    const int r = e.at(0).get<int>();
    const int c = e.at(1).get<int>();
    if (r < 0 || r >= rows || c < 0 || c >= cols) {
      throw SchemaError(std::string(what) + " entry out of range");
    }
    m(r, c) = 1;
  }
  return m;
}

json to_json(const PlanningInstance& inst) {
  json doc;
  doc["version"] = kInstanceSchemaVersion;
  doc["rows"] = inst.rows;
  doc["cols"] = inst.cols;
  doc["spacing"] = inst.spacing;
  json sites = json::array();
  for (const auto& p : inst.sites) sites.push_back({p.x, p.y});
  doc["sites"] = std::move(sites);
  json dps = json::array();
  for (const auto& dp : inst.demand_points) {
    dps.push_back({{"x", dp.position.x}, {"y", dp.position.y}, {"traffic", dp.traffic}});
  }
  doc["demand_points"] = std::move(dps);
  doc["coverage_radius"] = inst.coverage_radius;
  doc["backbone_range"] = inst.backbone_range;
  doc["R"] = inst.radios;
  doc["K"] = inst.channels;
  doc["C_max"] = inst.interface_capacity;
  doc["A"] = inst.hop_bound;
  doc["M"] = inst.big_m;
  doc["seed"] = inst.seed;
  if (!inst.capacity_overrides.empty()) {
    json caps = json::array();
    for (const auto& o : inst.capacity_overrides) {
      caps.push_back({{"j", o.from}, {"l", o.to}, {"k", o.channel}, {"capacity", o.capacity}});
    }
    doc["link_capacity"] = std::move(caps);
  }
  if (inst.random_coverage) doc["coverage"] = sparse_ones(*inst.random_coverage);
  if (inst.random_connectivity) doc["connectivity"] = sparse_ones(*inst.random_connectivity);
  return doc;
}

PlanningInstance from_json(const json& doc) {
  PlanningInstance inst;
  try {
    const int version = doc.at("version").get<int>();
    if (version != kInstanceSchemaVersion) {
      throw SchemaError("instance schema version " + std::to_string(version) + " is not supported (expected " +
                        std::to_string(kInstanceSchemaVersion) + ")");
    }
    inst.rows = doc.at("rows").get<int>();
    inst.cols = doc.at("cols").get<int>();
    inst.spacing = doc.at("spacing").get<double>();
    for (const auto& p : doc.at("sites")) inst.sites.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    for (const auto& dp : doc.at("demand_points")) {
      inst.demand_points.push_back(
          {{dp.at("x").get<double>(), dp.at("y").get<double>()}, dp.at("traffic").get<double>()});
    }
    inst.coverage_radius = doc.at("coverage_radius").get<double>();
    inst.backbone_range = doc.at("backbone_range").get<double>();
    inst.radios = doc.at("R").get<int>();
    inst.channels = doc.at("K").get<int>();
    inst.interface_capacity = doc.at("C_max").get<double>();
    inst.hop_bound = doc.at("A").get<int>();
    inst.big_m = doc.at("M").get<double>();
    inst.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("link_capacity")) {
      for (const auto& o : doc.at("link_capacity")) {
        inst.capacity_overrides.push_back({o.at("j").get<int>(), o.at("l").get<int>(), o.at("k").get<int>(),
                                           o.at("capacity").get<double>()});
      }
    }
    if (doc.contains("coverage")) {
      inst.random_coverage = dense_from_sparse(doc.at("coverage"), inst.demand_count(), inst.site_count(), "coverage");
    }
    if (doc.contains("connectivity")) {
      inst.random_connectivity =
          dense_from_sparse(doc.at("connectivity"), inst.site_count(), inst.site_count(), "connectivity");
    }
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed instance: ") + e.what());
  }
  inst.validate();
  return inst;
}

}  // namespace

std::string instance_to_json_string(const PlanningInstance& instance) { return to_json(instance).dump(); }

PlanningInstance instance_from_json_string(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("instance is not valid JSON: ") + e.what());
  }
  return from_json(doc);
}

std::uint64_t instance_hash(const PlanningInstance& instance) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : instance_to_json_string(instance)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void save_instance(const PlanningInstance& instance, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << to_json(instance).dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

PlanningInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return instance_from_json_string(buffer.str());
}

}  // namespace meshplan
