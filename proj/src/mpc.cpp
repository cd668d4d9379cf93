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

#include "ampc/mpc.hpp"

#include <algorithm>
#include <cmath>

namespace ampc {

LaguerreMpc::LaguerreMpc(const VehicleParams& params, const MpcConfig& cfg)
    : params_(params), cfg_(cfg) {
  params_.validate();
  cfg_.validate();
  basis_ = build_basis(cfg_.laguerre_scale, cfg_.laguerre_terms);
}

void LaguerreMpc::set_params(const AdaptiveParams& params) {
  cfg_.apply(params);
  basis_ = build_basis(cfg_.laguerre_scale, cfg_.laguerre_terms);
}

void LaguerreMpc::reset() {
  have_prev_ = false;
  prev_state_.setZero();
  prev_control_ = 0;
  diag_ = {};
}

double LaguerreMpc::control_step(const LateralState& measured, double setpoint,
                                 double long_vel) {
  diag_ = {};
  if (long_vel < kMinLongVel) {
    long_vel = kMinLongVel;
    diag_.low_speed_clamps = 1;
  }

  const DiscreteModel model =
      discretize(build_continuous_model(params_, long_vel), cfg_.sample_time);
  const AugmentedModel aug = augment(model);

  const Eigen::Vector4d state = measured.vec();
  Eigen::VectorXd aug_state(5);
  aug_state.head<4>() = have_prev_ ? (state - prev_state_).eval() : Eigen::Vector4d::Zero();
  aug_state[4] = measured.lat_pos;

  const PredictionMatrices pred =
      build_prediction(aug, cfg_.pred_horizon, cfg_.ctrl_horizon, setpoint);
  QpProblem qp = build_qp(pred, basis_, cfg_, aug_state, prev_control_);
  // Tiny diagonal lift: a long high-pole basis can make the reduced hessian
  // numerically semidefinite at speeds far from the tuning point.
  const int n_eta = static_cast<int>(qp.hessian.rows());
  qp.hessian.diagonal().array() += 1e-10 * std::max(1.0, qp.hessian.trace() / n_eta);
  const QpSolution sol = solve_hildreth(qp, cfg_.qp_max_iter, cfg_.qp_tol);

  double increment = basis_.initial_vec.dot(sol.primal);
  if (!std::isfinite(increment)) {
    increment = 0;
    diag_.fallback = true;
  }
  // Hard clip behind the QP: an unconverged dual iterate may sit slightly
  // outside the bounds.
  const double clipped_increment = std::clamp(increment, -cfg_.du_limit, cfg_.du_limit);
  const double command =
      std::clamp(prev_control_ + clipped_increment, -cfg_.u_limit, cfg_.u_limit);
  diag_.clipped = (clipped_increment != increment) ||
                  (command != prev_control_ + clipped_increment);
  diag_.increment = command - prev_control_;
  diag_.qp_iterations = sol.iterations;
  diag_.qp_converged = sol.converged;
  diag_.active_constraints = static_cast<int>(sol.active_set.size());

  prev_state_ = state;
  have_prev_ = true;
  prev_control_ = command;
  return command;
}

}  // namespace ampc
