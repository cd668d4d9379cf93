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

#pragma once

#include <map>
#include <string>
#include <vector>

#include "ampc/mpc.hpp"
#include "ampc/pso.hpp"
#include "ampc/tire.hpp"
#include "ampc/vehicle.hpp"

namespace ampc {

/// Flat `key = value` configuration. Dotted keys group sections
/// (e.g. mpc.np); values are numbers, comma-separated number lists, or bare
/// strings. `#` starts a comment.
class Config {
 public:
  static Config from_file(const std::string& path);
  static Config from_string(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& key) const;

  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  int integer(const std::string& key) const;
  int integer(const std::string& key, int fallback) const;
  std::string str(const std::string& key) const;
  std::string str(const std::string& key, const std::string& fallback) const;
  std::vector<double> list(const std::string& key) const;
  std::vector<double> list(const std::string& key, const std::vector<double>& fallback) const;

 private:
  std::string raw(const std::string& key) const;
  [[noreturn]] void fail(const std::string& key, const std::string& what) const;

  std::string origin_;
  std::map<std::string, std::string> values_;
  std::map<std::string, int> lines_;
};

VehicleParams vehicle_from_config(const Config& cfg);
PacejkaCoeffs pacejka_from_config(const Config& cfg);
MpcConfig mpc_from_config(const Config& cfg);
PsoHyper pso_from_config(const Config& cfg);
double pp_lookahead_from_config(const Config& cfg);

}  // namespace ampc
