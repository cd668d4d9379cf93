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

#include "ampc/mpc.hpp"
#include "ampc/pso.hpp"
#include "ampc/simulate.hpp"

namespace ampc {

// Candidates that crash the plant score this instead of aborting the swarm.
inline constexpr double kDivergencePenalty = 1e9;

/// Decision-vector layout for the tuner: (np, nc, q_y, r, lag_n, lag_alpha).
struct TuneBounds {
  SearchBounds bounds;

  static TuneBounds defaults();
};

/// Step-to-offset maneuver the tuning fitness is measured on. The offset is
/// reached through a smoothstep ramp matching the lane-change geometry;
/// ramp_length 0 degenerates to a hard step.
struct StepManeuver {
  double duration{12.0};    // s
  double step_time{1.0};    // s until the reference starts moving
  double ramp_length{25.0}; // m over which the reference reaches the offset
  double min_offset{2.0};   // m, floor: near-zero keys tune on a maneuver large
                            // enough to rank tracking quality
};

struct TuneResult {
  AdaptiveParams params;
  double fitness{0};
  SwarmResult swarm;
};

/// Rounds the integer dimensions and repairs ordering so that
/// lag_n <= nc <= np and every field satisfies the controller invariants.
AdaptiveParams decode_candidate(const Eigen::VectorXd& x);

/// Builds the step maneuver scenario used to score candidates at an
/// operating point.
Scenario tuning_scenario(double long_vel, double lateral_offset,
                         const StepManeuver& maneuver);

/// Closed-loop MSE of one candidate at the operating point.
double tuning_fitness(const AdaptiveParams& candidate, double long_vel,
                      double lateral_offset, const StepManeuver& maneuver,
                      const SimSetup& setup);

/// PSO search over the controller parameters at one operating point. The
/// incumbent configuration seeds the swarm, so the result never scores worse
/// than the baseline.
TuneResult tune_mpc(double long_vel, double lateral_offset, const TuneBounds& bounds,
                    const PsoHyper& hyper, const StepManeuver& maneuver,
                    const SimSetup& setup);

}  // namespace ampc
