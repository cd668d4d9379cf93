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

#include "ampc/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <stdexcept>

#include "ampc/pure_pursuit.hpp"

namespace ampc {

namespace {

constexpr double kConstraintSlack = 1e-9;

std::vector<Eigen::Vector2d> sample_reference_path(const Scenario& scenario) {
  // Long enough for the fastest profile breakpoint over the whole run.
  double v_max = kMinLongVel;
  for (double v : scenario.speed.values) v_max = std::max(v_max, v);
  const double length = scenario.initial.global_x + v_max * scenario.duration + 50.0;

  std::vector<Eigen::Vector2d> path;
  const double step = 1.0;
  path.reserve(static_cast<std::size_t>(length / step) + 1);
  for (double x = 0.0; x <= length; x += step) {
    path.emplace_back(x, reference_at(scenario.reference, x));
  }
  return path;
}

}  // namespace

ControllerKind controller_kind_from_string(const std::string& name) {
  if (name == "ampc") return ControllerKind::ampc;
  if (name == "mpc") return ControllerKind::mpc;
  if (name == "pp") return ControllerKind::pp;
  throw std::invalid_argument("unknown controller kind: " + name);
}

std::string to_string(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::ampc: return "ampc";
    case ControllerKind::mpc: return "mpc";
    case ControllerKind::pp: return "pp";
  }
  return "unknown";
}

double mse(const SimResult& result) {
  if (result.y.empty()) {
    throw std::invalid_argument("mse of an empty result");
  }
  double sum = 0;
  for (std::size_t i = 0; i < result.y.size(); ++i) {
    const double err = result.y[i] - result.y_ref[i];
    sum += err * err;
  }
  return sum / static_cast<double>(result.y.size());
}

SimResult run_scenario(const Scenario& scenario, ControllerKind kind,
                       const LookupTable* table, const SimSetup& setup) {
  scenario.validate();
  setup.mpc.validate();
  if (kind == ControllerKind::ampc && table == nullptr) {
    throw std::invalid_argument("adaptive controller requires a lookup table");
  }
  if (setup.plant_substeps < 1) {
    throw std::invalid_argument("plant_substeps must be >= 1");
  }

  const TireSet tires = make_tires(setup.vehicle, setup.pacejka);
  const double ts = setup.mpc.sample_time;
  const double sub_ts = ts / setup.plant_substeps;
  const int ticks = static_cast<int>(std::llround(scenario.duration / ts));

  LaguerreMpc controller(setup.vehicle, setup.mpc);
  std::optional<ParameterScheduler> scheduler;
  if (kind == ControllerKind::ampc) {
    scheduler.emplace(*table);
  }
  std::vector<Eigen::Vector2d> path;
  if (kind == ControllerKind::pp) {
    path = sample_reference_path(scenario);
  }

  SimResult result;
  PlantState state = scenario.initial;
  state.long_vel = std::max(speed_profile(scenario, 0.0), kMinLongVel);
  double prev_steer = 0.0;

  for (int tick = 0; tick < ticks; ++tick) {
    const double t = tick * ts;
    const double vx = std::max(speed_profile(scenario, t), kMinLongVel);
    state.long_vel = vx;
    const double setpoint = reference_at(scenario.reference, state.global_x);

    bool switched = false;
    if (scheduler) {
      const double offset_key = std::abs(setpoint - state.global_y);
      const TableEntry& entry = scheduler->select(vx, offset_key);
      if (scheduler->switched()) {
        controller.set_params(entry.params);
        switched = true;
      }
    }

    double steer = 0.0;
    if (kind == ControllerKind::pp) {
      steer = pure_pursuit_step(state, path, setup.pp_lookahead,
                                setup.vehicle.wheelbase(), setup.mpc.u_limit);
    } else {
      steer = controller.control_step(state.lateral(), setpoint, vx);
    }

    const double wind_now = wind_profile(scenario, t);
    result.time.push_back(t);
    result.x.push_back(state.global_x);
    result.y.push_back(state.global_y);
    result.y_ref.push_back(setpoint);
    result.steer.push_back(steer);
    result.d_steer.push_back(steer - prev_steer);
    result.yaw_rate.push_back(state.yaw_rate);
    result.long_vel.push_back(vx);
    result.wind.push_back(wind_now);
    result.active_params.push_back(controller.config().adaptive());
    result.param_switch.push_back(switched);

    if (std::abs(steer) > setup.mpc.u_limit + kConstraintSlack ||
        std::abs(steer - prev_steer) > setup.mpc.du_limit + kConstraintSlack) {
      ++result.constraint_violations;
    }
    prev_steer = steer;

    for (int sub = 0; sub < setup.plant_substeps; ++sub) {
      const double t_sub = t + sub * sub_ts;
      state.long_vel = std::max(speed_profile(scenario, t_sub), kMinLongVel);
      state = plant_step(state, steer, wind_profile(scenario, t_sub), setup.vehicle,
                         tires, sub_ts);
      if (plant_diverged(state)) {
        result.diverged = true;
        break;
      }
    }
    if (result.diverged) break;
  }

  result.mse = result.y.empty() ? 0.0 : mse(result);
  result.max_abs_error = 0.0;
  for (std::size_t i = 0; i < result.y.size(); ++i) {
    result.max_abs_error = std::max(result.max_abs_error,
                                    std::abs(result.y[i] - result.y_ref[i]));
  }
  return result;
}

}  // namespace ampc
