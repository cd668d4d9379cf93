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

#include "ampc/tuning.hpp"

#include <algorithm>
#include <cmath>

namespace ampc {

TuneBounds TuneBounds::defaults() {
  TuneBounds b;
  b.bounds.lower.resize(6);
  b.bounds.upper.resize(6);
  //                np    nc    q_y    r      lag_n  lag_alpha
  b.bounds.lower << 8.0,  2.0,  0.5,   1e-3,  1.0,   0.0;
  b.bounds.upper << 60.0, 30.0, 200.0, 5.0,   10.0,  0.95;
  return b;
}

AdaptiveParams decode_candidate(const Eigen::VectorXd& x) {
  if (x.size() != 6) {
    throw std::invalid_argument("tuner decision vector must have 6 dimensions");
  }
  AdaptiveParams p;
  p.pred_horizon = std::max(1, static_cast<int>(std::lround(x[0])));
  p.ctrl_horizon = std::max(1, static_cast<int>(std::lround(x[1])));
  p.ctrl_horizon = std::min(p.ctrl_horizon, p.pred_horizon);
  p.weight_track = std::max(x[2], 1e-6);
  p.weight_ctrl = std::max(x[3], 1e-6);
  p.laguerre_terms = std::max(1, static_cast<int>(std::lround(x[4])));
  p.laguerre_terms = std::min(p.laguerre_terms, p.ctrl_horizon);
  p.laguerre_scale = std::clamp(x[5], 0.0, 0.99);
  return p;
}

Scenario tuning_scenario(double long_vel, double lateral_offset,
                         const StepManeuver& maneuver) {
  double offset = lateral_offset;
  if (std::abs(offset) < maneuver.min_offset) {
    offset = offset < 0 ? -maneuver.min_offset : maneuver.min_offset;
  }
  Scenario scenario;
  scenario.name = "tune_step";
  scenario.duration = maneuver.duration;
  scenario.reference.type =
      maneuver.ramp_length > 0 ? ReferenceType::ramp : ReferenceType::step;
  scenario.reference.offset = offset;
  scenario.reference.start = long_vel * maneuver.step_time;
  scenario.reference.ramp_length = maneuver.ramp_length;
  scenario.speed.times = {0.0};
  scenario.speed.values = {long_vel};
  return scenario;
}

double tuning_fitness(const AdaptiveParams& candidate, double long_vel,
                      double lateral_offset, const StepManeuver& maneuver,
                      const SimSetup& setup) {
  SimSetup trial = setup;
  try {
    trial.mpc.apply(candidate);
    const Scenario scenario = tuning_scenario(long_vel, lateral_offset, maneuver);
    const SimResult result = run_scenario(scenario, ControllerKind::mpc, nullptr, trial);
    if (result.diverged || !std::isfinite(result.mse)) {
      return kDivergencePenalty;
    }
    return result.mse;
  } catch (const std::exception&) {
    // invalid candidate or a numerically degenerate controller configuration
    // (e.g. a near-collinear basis making the QP factorization fail)
    return kDivergencePenalty;
  }
}

TuneResult tune_mpc(double long_vel, double lateral_offset, const TuneBounds& bounds,
                    const PsoHyper& hyper, const StepManeuver& maneuver,
                    const SimSetup& setup) {
  const auto objective = [&](const Eigen::VectorXd& x) {
    return tuning_fitness(decode_candidate(x), long_vel, lateral_offset, maneuver, setup);
  };

  const AdaptiveParams incumbent = setup.mpc.adaptive();
  Eigen::VectorXd guess(6);
  guess << incumbent.pred_horizon, incumbent.ctrl_horizon, incumbent.weight_track,
      incumbent.weight_ctrl, incumbent.laguerre_terms, incumbent.laguerre_scale;

  TuneResult result;
  result.swarm = pso_run(objective, bounds.bounds, hyper, guess);
  result.params = decode_candidate(result.swarm.best_position);
  result.fitness = result.swarm.best_fitness;
  return result;
}

}  // namespace ampc
