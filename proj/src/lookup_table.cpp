/******************************************************************************
 * Copyright 2026 The AMPC Toolkit Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *****************************************************************************/

#include "ampc/lookup_table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ampc {

namespace {

using nlohmann::json;

double axis_span(const std::vector<double>& breakpoints) {
  if (breakpoints.empty()) return 1.0;
  const auto [lo, hi] = std::minmax_element(breakpoints.begin(), breakpoints.end());
  const double span = *hi - *lo;
  return span > 0 ? span : 1.0;
}

double clamp_to_axis(double value, const std::vector<double>& breakpoints) {
  if (breakpoints.empty()) return value;
  const auto [lo, hi] = std::minmax_element(breakpoints.begin(), breakpoints.end());
  return std::clamp(value, *lo, *hi);
}

struct NormalizedQuery {
  double speed, offset, speed_span, offset_span;
};

NormalizedQuery normalize_query(const LookupTable& table, double long_vel,
                                double lateral_offset) {
  return {clamp_to_axis(long_vel, table.speed_breakpoints),
          clamp_to_axis(lateral_offset, table.offset_breakpoints),
          axis_span(table.speed_breakpoints), axis_span(table.offset_breakpoints)};
}

double normalized_distance(const NormalizedQuery& q, const TableKey& key) {
  const double ds = (q.speed - key.long_vel) / q.speed_span;
  const double doff = (q.offset - key.lateral_offset) / q.offset_span;
  return std::sqrt(ds * ds + doff * doff);
}

std::size_t nearest_index(const LookupTable& table, const NormalizedQuery& q) {
  std::size_t best = 0;
  double best_dist = normalized_distance(q, table.entries[0].key);
  for (std::size_t i = 1; i < table.entries.size(); ++i) {
    const double dist = normalized_distance(q, table.entries[i].key);
    const auto& key = table.entries[i].key;
    const auto& best_key = table.entries[best].key;
    const bool closer = dist < best_dist;
    const bool tie = dist == best_dist &&
                     (key.long_vel < best_key.long_vel ||
                      (key.long_vel == best_key.long_vel &&
                       key.lateral_offset < best_key.lateral_offset));
    if (closer || tie) {
      best = i;
      best_dist = dist;
    }
  }
  return best;
}

void validate_params(const AdaptiveParams& params, const std::string& where) {
  MpcConfig probe;  // carries the non-scheduled fields at their defaults
  try {
    probe.apply(params);
  } catch (const std::invalid_argument& err) {
    throw std::runtime_error(where + ": " + err.what());
  }
}

}  // namespace

void LookupTable::validate() const {
  if (entries.empty()) {
    throw std::runtime_error("table must contain at least one entry");
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& entry = entries[i];
    const std::string where = "entry " + std::to_string(i);
    validate_params(entry.params, where);
    if (entry.key.long_vel < kGridSpeedMin || entry.key.long_vel > kGridSpeedMax ||
        entry.key.lateral_offset < kGridOffsetMin ||
        entry.key.lateral_offset > kGridOffsetMax) {
      throw std::runtime_error(where + ": key outside the operating grid [" +
                               std::to_string(kGridSpeedMin) + "," +
                               std::to_string(kGridSpeedMax) + "]x[" +
                               std::to_string(kGridOffsetMin) + "," +
                               std::to_string(kGridOffsetMax) + "]");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (entries[j].key == entry.key) {
        throw std::runtime_error(where + ": duplicate key (long_vel=" +
                                 std::to_string(entry.key.long_vel) + ", lateral_offset=" +
                                 std::to_string(entry.key.lateral_offset) + ")");
      }
    }
  }
}

std::string vehicle_config_hash(const VehicleParams& params, const PacejkaCoeffs& coeffs) {
  char buffer[256];
  std::snprintf(buffer, sizeof(buffer),
                "%.17g|%.17g|%.17g|%.17g|%.17g|%.17g|%.17g|%.17g|%.17g|%.17g|%.17g",
                params.mass, params.yaw_inertia, params.dist_front, params.dist_rear,
                params.stiff_front, params.stiff_rear, coeffs.b, coeffs.c, coeffs.d_scale,
                coeffs.e, coeffs.mu);
  // FNV-1a 64
  std::uint64_t hash = 1469598103934665603ull;
  for (const char* p = buffer; *p; ++p) {
    hash ^= static_cast<std::uint64_t>(static_cast<unsigned char>(*p));
    hash *= 1099511628211ull;
  }
  char out[17];
  std::snprintf(out, sizeof(out), "%016llx", static_cast<unsigned long long>(hash));
  return out;
}

std::string table_to_json(const LookupTable& table) {
  json doc;
  doc["schema_version"] = kTableSchemaVersion;
  doc["vehicle_hash"] = table.vehicle_hash;
  doc["grid"]["speeds"] = table.speed_breakpoints;
  doc["grid"]["offsets"] = table.offset_breakpoints;
  doc["entries"] = json::array();
  for (const auto& entry : table.entries) {
    json e;
    e["long_vel"] = entry.key.long_vel;
    e["lateral_offset"] = entry.key.lateral_offset;
    e["params"] = {{"np", entry.params.pred_horizon},
                   {"nc", entry.params.ctrl_horizon},
                   {"q_y", entry.params.weight_track},
                   {"r", entry.params.weight_ctrl},
                   {"lag_n", entry.params.laguerre_terms},
                   {"lag_alpha", entry.params.laguerre_scale}};
    e["fitness"] = entry.fitness;
    e["seed"] = entry.seed;
    e["timestamp"] = entry.timestamp;
    doc["entries"].push_back(e);
  }
  return doc.dump(2) + "\n";
}

LookupTable table_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw std::runtime_error(std::string("table parse error: ") + err.what());
  }
  try {
    const int version = doc.at("schema_version").get<int>();
    if (version != kTableSchemaVersion) {
      throw std::runtime_error("unsupported table schema_version " +
                               std::to_string(version) + " (expected " +
                               std::to_string(kTableSchemaVersion) + ")");
    }
    LookupTable table;
    table.vehicle_hash = doc.value("vehicle_hash", std::string{});
    if (doc.contains("grid")) {
      table.speed_breakpoints = doc["grid"].value("speeds", std::vector<double>{});
      table.offset_breakpoints = doc["grid"].value("offsets", std::vector<double>{});
    }
    for (const auto& e : doc.at("entries")) {
      TableEntry entry;
      entry.key.long_vel = e.at("long_vel").get<double>();
      entry.key.lateral_offset = e.at("lateral_offset").get<double>();
      const auto& p = e.at("params");
      entry.params.pred_horizon = p.at("np").get<int>();
      entry.params.ctrl_horizon = p.at("nc").get<int>();
      entry.params.weight_track = p.at("q_y").get<double>();
      entry.params.weight_ctrl = p.at("r").get<double>();
      entry.params.laguerre_terms = p.at("lag_n").get<int>();
      entry.params.laguerre_scale = p.at("lag_alpha").get<double>();
      entry.fitness = e.value("fitness", 0.0);
      entry.seed = e.value("seed", std::uint64_t{0});
      entry.timestamp = e.value("timestamp", std::string{});
      table.entries.push_back(entry);
    }
    table.validate();
    return table;
  } catch (const json::exception& err) {
    throw std::runtime_error(std::string("table field error: ") + err.what());
  }
}

void save_table(const LookupTable& table, const std::string& path) {
  table.validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write table file: " + path);
  }
  out << table_to_json(table);
}

LookupTable load_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open table file: " + path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return table_from_json(buffer.str());
  } catch (const std::runtime_error& err) {
    throw std::runtime_error(path + ": " + err.what());
  }
}

const TableEntry& nearest_entry(const LookupTable& table, double long_vel,
                                double lateral_offset) {
  if (table.entries.empty()) {
    throw std::invalid_argument("lookup on an empty table");
  }
  const NormalizedQuery q = normalize_query(table, long_vel, lateral_offset);
  return table.entries[nearest_index(table, q)];
}

ParameterScheduler::ParameterScheduler(const LookupTable& table, double hysteresis)
    : table_(&table), hysteresis_(hysteresis) {
  table.validate();
}

const TableEntry& ParameterScheduler::select(double long_vel, double lateral_offset) {
  const NormalizedQuery q = normalize_query(*table_, long_vel, lateral_offset);
  const std::size_t candidate = nearest_index(*table_, q);
  switched_ = false;
  if (current_ < 0) {
    current_ = static_cast<int>(candidate);
    switched_ = true;
  } else if (static_cast<int>(candidate) != current_) {
    const double cand_dist = normalized_distance(q, table_->entries[candidate].key);
    const double incumbent_dist =
        normalized_distance(q, table_->entries[current_].key);
    if (cand_dist < (1.0 - hysteresis_) * incumbent_dist) {
      current_ = static_cast<int>(candidate);
      switched_ = true;
    }
  }
  return table_->entries[current_];
}

}  // namespace ampc
