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

#include <string>
#include <vector>

#include "ampc/lookup_table.hpp"
#include "ampc/mpc.hpp"
#include "ampc/scenario.hpp"
#include "ampc/tire.hpp"

namespace ampc {

enum class ControllerKind { ampc, mpc, pp };

ControllerKind controller_kind_from_string(const std::string& name);
std::string to_string(ControllerKind kind);

struct SimSetup {
  VehicleParams vehicle;
  PacejkaCoeffs pacejka;
  MpcConfig mpc;
  double pp_lookahead{6.0};
  int plant_substeps{10};  // plant integrates at sample_time / substeps
};

/// Closed-loop run recorded at the controller rate.
struct SimResult {
  std::vector<double> time;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> y_ref;
  std::vector<double> steer;
  std::vector<double> d_steer;
  std::vector<double> yaw_rate;
  std::vector<double> long_vel;
  std::vector<double> wind;
  std::vector<AdaptiveParams> active_params;
  std::vector<bool> param_switch;  // scheduler adopted a new entry this tick

  double mse{0};
  double max_abs_error{0};
  int constraint_violations{0};
  bool diverged{false};
};

/// Runs the scenario closed loop. The table is required for (and only used
/// by) the adaptive controller. Divergence is reported in the result, never
/// thrown.
SimResult run_scenario(const Scenario& scenario, ControllerKind kind,
                       const LookupTable* table, const SimSetup& setup);

double mse(const SimResult& result);

}  // namespace ampc
