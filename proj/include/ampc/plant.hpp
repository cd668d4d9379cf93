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

#include "ampc/tire.hpp"
#include "ampc/vehicle.hpp"

namespace ampc {

/// Simulation-plant state. Forward speed is prescribed by the scenario and
/// held constant within a step.
struct PlantState {
  double lat_vel{0};    // m/s, body frame
  double heading{0};    // rad
  double yaw_rate{0};   // rad/s
  double global_x{0};   // m
  double global_y{0};   // m
  double long_vel{kMinLongVel};  // m/s

  LateralState lateral() const { return {lat_vel, heading, yaw_rate, global_y}; }
};

// Any |state| beyond this is treated as numerical divergence.
inline constexpr double kDivergenceBound = 1e6;

bool plant_diverged(const PlantState& state);

/// One RK4 step of the nonlinear single-track plant: Pacejka axle forces,
/// exact-atan slip angles, full trigonometric frame transformation, plus an
/// external lateral force (wind) in the force balance.
PlantState plant_step(const PlantState& state, double steer, double wind_force,
                      const VehicleParams& params, const TireSet& tires,
                      double sample_time);

}  // namespace ampc
