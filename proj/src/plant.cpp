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

#include "ampc/plant.hpp"

#include <Eigen/Core>
#include <cmath>
#include <stdexcept>

namespace ampc {

namespace {

using Vec5 = Eigen::Matrix<double, 5, 1>;

// State layout: [lat_vel, heading, yaw_rate, global_y, global_x].
Vec5 derivative(const Vec5& s, double long_vel, double steer, double wind_force,
                const VehicleParams& params, const TireSet& tires) {
  const double vy = s[0];
  const double heading = s[1];
  const double r = s[2];

  const double slip_front = steer - std::atan((vy + params.dist_front * r) / long_vel);
  const double slip_rear = -std::atan((vy - params.dist_rear * r) / long_vel);
  const double force_front = pacejka_lateral_force(slip_front, tires.front);
  const double force_rear = pacejka_lateral_force(slip_rear, tires.rear);

  Vec5 d;
  d[0] = (force_front + force_rear + wind_force) / params.mass - long_vel * r;
  d[1] = r;
  d[2] = (params.dist_front * force_front - params.dist_rear * force_rear) /
         params.yaw_inertia;
  d[3] = long_vel * std::sin(heading) + vy * std::cos(heading);
  d[4] = long_vel * std::cos(heading) - vy * std::sin(heading);
  return d;
}

}  // namespace

bool plant_diverged(const PlantState& state) {
  const auto bad = [](double v) {
    return !std::isfinite(v) || std::abs(v) > kDivergenceBound;
  };
  return bad(state.lat_vel) || bad(state.heading) || bad(state.yaw_rate) ||
         bad(state.global_x) || bad(state.global_y) || bad(state.long_vel);
}

PlantState plant_step(const PlantState& state, double steer, double wind_force,
                      const VehicleParams& params, const TireSet& tires,
                      double sample_time) {
  if (!(sample_time > 0)) {
    throw std::invalid_argument("sample_time must be > 0");
  }
  if (!(std::abs(steer) <= M_PI / 2)) {
    throw std::invalid_argument("steer command outside +-pi/2");
  }
  // Singularity guard: the slip-angle expressions divide by forward speed.
  const double long_vel = std::max(state.long_vel, kMinLongVel);

  Vec5 s;
  s << state.lat_vel, state.heading, state.yaw_rate, state.global_y, state.global_x;

  const double h = sample_time;
  const Vec5 k1 = derivative(s, long_vel, steer, wind_force, params, tires);
  const Vec5 k2 = derivative(s + 0.5 * h * k1, long_vel, steer, wind_force, params, tires);
  const Vec5 k3 = derivative(s + 0.5 * h * k2, long_vel, steer, wind_force, params, tires);
  const Vec5 k4 = derivative(s + h * k3, long_vel, steer, wind_force, params, tires);
  s += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

  PlantState next = state;
  next.lat_vel = s[0];
  next.heading = s[1];
  next.yaw_rate = s[2];
  next.global_y = s[3];
  next.global_x = s[4];
  next.long_vel = long_vel;
  return next;
}

}  // namespace ampc
