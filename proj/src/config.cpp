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

#include "ampc/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ampc {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& token) {
  std::size_t used = 0;
  const double value = std::stod(token, &used);
  if (used != token.size()) {
    throw std::invalid_argument("trailing characters");
  }
  return value;
}

}  // namespace

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file: " + path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_string(buffer.str(), path);
}

Config Config::from_string(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                               ": expected `key = value`");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw std::runtime_error(origin + ":" + std::to_string(line_no) + ": empty key");
    }
    cfg.values_[key] = value;
    cfg.lines_[key] = line_no;
  }
  return cfg;
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

std::string Config::raw(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    throw std::runtime_error(origin_ + ": missing config key `" + key + "`");
  }
  return it->second;
}

void Config::fail(const std::string& key, const std::string& what) const {
  const auto line = lines_.find(key);
  const std::string where =
      line == lines_.end() ? origin_ : origin_ + ":" + std::to_string(line->second);
  throw std::runtime_error(where + ": key `" + key + "`: " + what);
}

double Config::number(const std::string& key) const {
  try {
    return parse_number(raw(key));
  } catch (const std::runtime_error&) {
    throw;
  } catch (const std::exception&) {
    fail(key, "not a number: `" + raw(key) + "`");
  }
}

double Config::number(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

int Config::integer(const std::string& key) const {
  const double value = number(key);
  const double rounded = std::nearbyint(value);
  if (std::abs(value - rounded) > 1e-9) {
    fail(key, "expected an integer");
  }
  return static_cast<int>(rounded);
}

int Config::integer(const std::string& key, int fallback) const {
  return has(key) ? integer(key) : fallback;
}

std::string Config::str(const std::string& key) const { return raw(key); }

std::string Config::str(const std::string& key, const std::string& fallback) const {
  return has(key) ? raw(key) : fallback;
}

std::vector<double> Config::list(const std::string& key) const {
  const std::string value = raw(key);
  std::vector<double> items;
  std::istringstream in(value);
  std::string token;
  while (std::getline(in, token, ',')) {
    token = trim(token);
    if (token.empty()) fail(key, "empty list element");
    try {
      items.push_back(parse_number(token));
    } catch (const std::exception&) {
      fail(key, "not a number: `" + token + "`");
    }
  }
  if (items.empty()) fail(key, "empty list");
  return items;
}

std::vector<double> Config::list(const std::string& key,
                                 const std::vector<double>& fallback) const {
  return has(key) ? list(key) : fallback;
}

VehicleParams vehicle_from_config(const Config& cfg) {
  VehicleParams params;
  params.mass = cfg.number("mass", params.mass);
  params.yaw_inertia = cfg.number("yaw_inertia", params.yaw_inertia);
  params.dist_front = cfg.number("dist_front", params.dist_front);
  params.dist_rear = cfg.number("dist_rear", params.dist_rear);
  params.stiff_front = cfg.number("stiff_front", params.stiff_front);
  params.stiff_rear = cfg.number("stiff_rear", params.stiff_rear);
  params.validate();
  return params;
}

PacejkaCoeffs pacejka_from_config(const Config& cfg) {
  PacejkaCoeffs coeffs;
  coeffs.b = cfg.number("pacejka.b", coeffs.b);
  coeffs.c = cfg.number("pacejka.c", coeffs.c);
  coeffs.d_scale = cfg.number("pacejka.d_scale", coeffs.d_scale);
  coeffs.e = cfg.number("pacejka.e", coeffs.e);
  coeffs.mu = cfg.number("pacejka.mu", coeffs.mu);
  coeffs.validate();
  return coeffs;
}

MpcConfig mpc_from_config(const Config& cfg) {
  MpcConfig mpc;
  mpc.pred_horizon = cfg.integer("mpc.np", mpc.pred_horizon);
  mpc.ctrl_horizon = cfg.integer("mpc.nc", mpc.ctrl_horizon);
  mpc.weight_track = cfg.number("mpc.q_y", mpc.weight_track);
  mpc.weight_ctrl = cfg.number("mpc.r", mpc.weight_ctrl);
  mpc.laguerre_terms = cfg.integer("mpc.laguerre_n", mpc.laguerre_terms);
  mpc.laguerre_scale = cfg.number("mpc.laguerre_alpha", mpc.laguerre_scale);
  mpc.du_limit = cfg.number("mpc.du_max", mpc.du_limit);
  mpc.u_limit = cfg.number("mpc.u_max", mpc.u_limit);
  mpc.sample_time = cfg.number("mpc.ts", mpc.sample_time);
  if (cfg.has("mpc.y_max")) mpc.y_limit = cfg.number("mpc.y_max");
  mpc.constraint_window = cfg.integer("mpc.constraint_window", mpc.constraint_window);
  mpc.qp_max_iter = cfg.integer("mpc.qp_max_iter", mpc.qp_max_iter);
  mpc.qp_tol = cfg.number("mpc.qp_tol", mpc.qp_tol);
  mpc.validate();
  return mpc;
}

PsoHyper pso_from_config(const Config& cfg) {
  PsoHyper hyper;
  hyper.generations = cfg.integer("pso.generations", hyper.generations);
  hyper.population = cfg.integer("pso.population", hyper.population);
  hyper.w_max = cfg.number("pso.w_max", hyper.w_max);
  hyper.w_min = cfg.number("pso.w_min", hyper.w_min);
  hyper.w_damp = cfg.number("pso.w_damp", hyper.w_damp);
  hyper.c1_init = cfg.number("pso.c1", hyper.c1_init);
  hyper.c2_init = cfg.number("pso.c2", hyper.c2_init);
  hyper.lambda1 = cfg.number("pso.lambda1", hyper.lambda1);
  hyper.lambda2 = cfg.number("pso.lambda2", hyper.lambda2);
  hyper.variant = pso_variant_from_string(cfg.str("pso.variant", "improved"));
  hyper.seed = static_cast<std::uint64_t>(cfg.integer("pso.seed", 0));
  hyper.validate();
  return hyper;
}

double pp_lookahead_from_config(const Config& cfg) {
  const double lookahead = cfg.number("pp.lookahead", 6.0);
  if (!(lookahead > 0)) {
    throw std::runtime_error("pp.lookahead must be > 0");
  }
  return lookahead;
}

}  // namespace ampc
