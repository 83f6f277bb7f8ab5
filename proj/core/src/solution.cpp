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

#include "meshplan/solution.hpp"

#include <algorithm>
#include <tuple>

#include <nlohmann/json.hpp>

#include "meshplan/errors.hpp"
#include "meshplan/instance.hpp"

namespace meshplan {

Solution::Solution(int sites, int demand_points, int channels)
    : installed(sites, 0),
      access_point(sites, 0),
      relay(sites, 0),
      gateway(sites, 0),
      assignment(demand_points, sites),
      channel_active(sites, channels),
      uplink_flow(sites, 0.0) {}

Solution::Solution(const PlanningContext& context)
    : Solution(context.site_count(), context.demand_count(), context.channel_count()) {}

void Solution::install_access_point(int site) {
  installed[site] = 1;
  access_point[site] = 1;
  relay[site] = 0;
}

void Solution::install_relay(int site) {
  installed[site] = 1;
  relay[site] = 1;
  access_point[site] = 0;
}

void Solution::uninstall(int site) {
  installed[site] = 0;
  access_point[site] = 0;
  relay[site] = 0;
  gateway[site] = 0;
  assignment.clear_col(site);
}

namespace {
int count_set(const std::vector<std::uint8_t>& flags) {
  return static_cast<int>(std::count_if(flags.begin(), flags.end(), [](auto v) { return v != 0; }));
}
}  // namespace

int Solution::access_point_count() const noexcept { return count_set(access_point); }
int Solution::relay_count() const noexcept { return count_set(relay); }
int Solution::gateway_count() const noexcept { return count_set(gateway); }
int Solution::installed_count() const noexcept { return count_set(installed); }

std::vector<int> Solution::hosts() const {
  std::vector<int> out(demand_count(), -1);
  for (int i = 0; i < demand_count(); ++i) {
    for (int j = 0; j < site_count(); ++j) {
      if (assignment(i, j)) {
        out[i] = j;
        break;
      }
    }
  }
  return out;
}

std::vector<double> Solution::site_demand(const PlanningInstance& instance) const {
  std::vector<double> demand(site_count(), 0.0);
  for (int i = 0; i < demand_count(); ++i) {
    const auto row = assignment.row(i);
    for (int j = 0; j < site_count(); ++j) {
      if (row[j]) demand[j] += instance.demand_points[i].traffic;
    }
  }
  return demand;
}

double Solution::assigned_demand(const PlanningInstance& instance) const {
  double total = 0.0;
  for (double d : site_demand(instance)) total += d;
  return total;
}

void Solution::clear_radio_layer() {
  channel_active.fill(0);
  links.clear();
  clear_flows();
}

void Solution::clear_flows() {
  link_flows.clear();
  std::fill(uplink_flow.begin(), uplink_flow.end(), 0.0);
}

void Solution::add_link(int from, int to, int channel) {
  const Link link{from, to, channel};
  auto it = std::lower_bound(links.begin(), links.end(), link);
  if (it == links.end() || *it != link) links.insert(it, link);
  channel_active(from, channel) = 1;
  channel_active(to, channel) = 1;
}

bool Solution::has_link(int from, int to, int channel) const {
  return std::binary_search(links.begin(), links.end(), Link{from, to, channel});
}

double Solution::flow(int from, int to, int channel) const {
  const auto key = std::tie(from, to, channel);
  auto it = std::lower_bound(link_flows.begin(), link_flows.end(), key, [](const LinkFlow& f, const auto& k) {
    return std::tie(f.from, f.to, f.channel) < k;
  });
  if (it != link_flows.end() && std::tie(it->from, it->to, it->channel) == key) return it->amount;
  return 0.0;
}

using nlohmann::json;

json solution_to_json(const Solution& s) {
  json doc;
  doc["version"] = 1;
  doc["sites"] = s.site_count();
  doc["demand_points"] = s.demand_count();
  doc["channels"] = s.channel_count();
  doc["z"] = s.installed;
  doc["n"] = s.access_point;
  doc["r"] = s.relay;
  doc["g"] = s.gateway;
  json x = json::array();
  for (int i = 0; i < s.demand_count(); ++i) {
    for (int j = 0; j < s.site_count(); ++j) {
      if (s.assignment(i, j)) x.push_back({i, j});
    }
  }
  doc["x"] = std::move(x);
  json w = json::array();
  for (int j = 0; j < s.site_count(); ++j) {
    for (int k = 0; k < s.channel_count(); ++k) {
      if (s.channel_active(j, k)) w.push_back({j, k});
    }
  }
  doc["w"] = std::move(w);
  json links = json::array();
  for (const auto& l : s.links) links.push_back({l.from, l.to, l.channel});
  doc["L"] = std::move(links);
  json flows = json::array();
  for (const auto& f : s.link_flows) flows.push_back({f.from, f.to, f.channel, f.amount});
  doc["f"] = std::move(flows);
  doc["F"] = s.uplink_flow;
  return doc;
}

Solution solution_from_json(const json& doc) {
  try {
    if (doc.at("version").get<int>() != 1) throw SchemaError("unsupported solution schema version");
    const int sites = doc.at("sites").get<int>();
    const int dps = doc.at("demand_points").get<int>();
    const int channels = doc.at("channels").get<int>();
    if (sites < 0 || dps < 0 || channels < 0) throw SchemaError("negative solution dimensions");
    Solution s(sites, dps, channels);
    auto flags = [&](const char* key) {
      auto v = doc.at(key).get<std::vector<std::uint8_t>>();
      if (static_cast<int>(v.size()) != sites) throw SchemaError(std::string("field ") + key + " has wrong length");
      return v;
    };
    s.installed = flags("z");
    s.access_point = flags("n");
    s.relay = flags("r");
    s.gateway = flags("g");
    auto in_range = [](int v, int hi) { return v >= 0 && v < hi; };
    for (const auto& e : doc.at("x")) {
      const int i = e.at(0).get<int>(), j = e.at(1).get<int>();
      if (!in_range(i, dps) || !in_range(j, sites)) throw SchemaError("x entry out of range");
      s.assignment(i, j) = 1;
    }
    for (const auto& e : doc.at("w")) {
      const int j = e.at(0).get<int>(), k = e.at(1).get<int>();
      if (!in_range(j, sites) || !in_range(k, channels)) throw SchemaError("w entry out of range");
      s.channel_active(j, k) = 1;
    }
    for (const auto& e : doc.at("L")) {
      Link l{e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>()};
      if (!in_range(l.from, sites) || !in_range(l.to, sites) || !in_range(l.channel, channels)) {
        throw SchemaError("L entry out of range");
      }
      s.links.push_back(l);
    }
    std::sort(s.links.begin(), s.links.end());
    s.links.erase(std::unique(s.links.begin(), s.links.end()), s.links.end());
    for (const auto& e : doc.at("f")) {
      LinkFlow f{e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>(), e.at(3).get<double>()};
      if (!in_range(f.from, sites) || !in_range(f.to, sites) || !in_range(f.channel, channels)) {
        throw SchemaError("f entry out of range");
      }
      s.link_flows.push_back(f);
    }
    std::sort(s.link_flows.begin(), s.link_flows.end(), [](const LinkFlow& a, const LinkFlow& b) {
      return std::tie(a.from, a.to, a.channel) < std::tie(b.from, b.to, b.channel);
    });
    s.uplink_flow = doc.at("F").get<std::vector<double>>();
    if (static_cast<int>(s.uplink_flow.size()) != sites) throw SchemaError("field F has wrong length");
    return s;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed solution: ") + e.what());
  }
}

}  // namespace meshplan
