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

#include <cmath>
#include <optional>
#include <stdexcept>

#include "ampc/laguerre.hpp"
#include "ampc/qp.hpp"
#include "ampc/vehicle.hpp"

namespace ampc {

/// The subset of controller parameters the offline tuner optimizes and the
/// lookup table schedules at runtime.
struct AdaptiveParams {
  int pred_horizon{45};
  int ctrl_horizon{15};
  double weight_track{10.0};
  double weight_ctrl{0.01};
  int laguerre_terms{5};
  double laguerre_scale{0.75};

  bool operator==(const AdaptiveParams&) const = default;
};

struct MpcConfig {
  int pred_horizon{45};          // N_p
  int ctrl_horizon{15};          // N_c
  double weight_track{10.0};     // Q_y per predicted output error
  double weight_ctrl{0.01};      // R per control increment
  int laguerre_terms{5};         // N
  double laguerre_scale{0.75};   // alpha
  double du_limit{M_PI / 12.0};  // rad, symmetric increment bound
  double u_limit{M_PI / 6.0};    // rad, symmetric command bound
  std::optional<double> y_limit{};  // m, symmetric output bound; off by default
  double sample_time{0.1};       // s
  int constraint_window{0};      // prediction steps carrying constraint rows; 0 = ctrl_horizon
  int qp_max_iter{kHildrethDefaultMaxIter};
  double qp_tol{kHildrethDefaultTol};

  int window() const {
    return constraint_window > 0 ? std::min(constraint_window, pred_horizon) : ctrl_horizon;
  }

  void validate() const {
    if (ctrl_horizon < 1 || ctrl_horizon > pred_horizon) {
      throw std::invalid_argument("require 1 <= ctrl_horizon <= pred_horizon");
    }
    if (laguerre_terms < 1 || laguerre_terms > ctrl_horizon) {
      throw std::invalid_argument("require 1 <= laguerre_terms <= ctrl_horizon");
    }
    if (!(laguerre_scale >= 0.0 && laguerre_scale < 1.0)) {
      throw std::invalid_argument("laguerre_scale must lie in [0, 1)");
    }
    if (!(weight_track > 0.0) || !(weight_ctrl > 0.0)) {
      throw std::invalid_argument("weights must be > 0");
    }
    if (!(du_limit > 0.0) || !(u_limit > 0.0) ||
        (y_limit.has_value() && !(*y_limit > 0.0))) {
      throw std::invalid_argument("limits must be > 0");
    }
    if (!(sample_time > 0.0)) {
      throw std::invalid_argument("sample_time must be > 0");
    }
  }

  AdaptiveParams adaptive() const {
    return {pred_horizon, ctrl_horizon, weight_track, weight_ctrl,
            laguerre_terms, laguerre_scale};
  }

  void apply(const AdaptiveParams& p) {
    pred_horizon = p.pred_horizon;
    ctrl_horizon = p.ctrl_horizon;
    weight_track = p.weight_track;
    weight_ctrl = p.weight_ctrl;
    laguerre_terms = p.laguerre_terms;
    laguerre_scale = p.laguerre_scale;
    validate();
  }
};

/// Integrator-embedded model: state [dx(k); y(k)], input du(k).
template <typename Scalar>
struct AugmentedModelT {
  Eigen::MatrixX<Scalar> a_aug;
  Eigen::VectorX<Scalar> b_aug;
  Eigen::RowVectorX<Scalar> c_aug;
};

using AugmentedModel = AugmentedModelT<double>;

template <typename Scalar>
AugmentedModelT<Scalar> augment(const Eigen::MatrixX<Scalar>& a_mat,
                                const Eigen::VectorX<Scalar>& b_vec,
                                const Eigen::RowVectorX<Scalar>& c_vec) {
  const Eigen::Index n = a_mat.rows();
  if (a_mat.cols() != n || b_vec.size() != n || c_vec.size() != n) {
    throw std::invalid_argument("augment: inconsistent model dimensions");
  }
  AugmentedModelT<Scalar> aug;
  aug.a_aug = Eigen::MatrixX<Scalar>::Zero(n + 1, n + 1);
  aug.a_aug.topLeftCorner(n, n) = a_mat;
  aug.a_aug.bottomLeftCorner(1, n) = c_vec * a_mat;
  aug.a_aug(n, n) = Scalar(1);
  aug.b_aug.resize(n + 1);
  aug.b_aug.head(n) = b_vec;
  aug.b_aug[n] = c_vec.dot(b_vec);
  aug.c_aug = Eigen::RowVectorX<Scalar>::Zero(n + 1);
  aug.c_aug[n] = Scalar(1);
  return aug;
}

template <typename Scalar>
AugmentedModelT<Scalar> augment(const DiscreteModelT<Scalar>& model) {
  return augment<Scalar>(model.a_mat, model.b_vec, model.c_vec);
}

/// Y = F x(k) + Phi dU over the prediction horizon, with the constant
/// setpoint replicated into ref_vec.
template <typename Scalar>
struct PredictionMatricesT {
  Eigen::MatrixX<Scalar> f_mat;    // pred_horizon x (n+1)
  Eigen::MatrixX<Scalar> phi_mat;  // pred_horizon x ctrl_horizon
  Eigen::VectorX<Scalar> ref_vec;  // pred_horizon
};

using PredictionMatrices = PredictionMatricesT<double>;

template <typename Scalar>
PredictionMatricesT<Scalar> build_prediction(const AugmentedModelT<Scalar>& aug,
                                             int pred_horizon, int ctrl_horizon,
                                             Scalar setpoint) {
  if (pred_horizon < 1 || ctrl_horizon < 1 || ctrl_horizon > pred_horizon) {
    throw std::invalid_argument("require 1 <= ctrl_horizon <= pred_horizon");
  }
  const Eigen::Index n = aug.a_aug.rows();

  PredictionMatricesT<Scalar> pred;
  pred.f_mat.resize(pred_horizon, n);
  Eigen::RowVectorX<Scalar> row = aug.c_aug;
  // Impulse-response column: C A^i B for i = 0 .. pred_horizon-1.
  Eigen::VectorX<Scalar> impulse(pred_horizon);
  Eigen::VectorX<Scalar> reach = aug.b_aug;
  for (int i = 0; i < pred_horizon; ++i) {
    row = row * aug.a_aug;               // C A^{i+1}
    pred.f_mat.row(i) = row;
    impulse[i] = aug.c_aug.dot(reach);   // C A^i B
    reach = aug.a_aug * reach;
  }

  pred.phi_mat = Eigen::MatrixX<Scalar>::Zero(pred_horizon, ctrl_horizon);
  for (int j = 0; j < ctrl_horizon; ++j) {
    for (int i = j; i < pred_horizon; ++i) {
      pred.phi_mat(i, j) = impulse[i - j];
    }
  }

  pred.ref_vec = Eigen::VectorX<Scalar>::Constant(pred_horizon, setpoint);
  return pred;
}

/// Laguerre-parameterized QP in the coefficient vector eta. With T_L the
/// stacked basis rows over the control horizon:
///   E = T_L^T (Phi^T Q Phi + R I) T_L,  K = -T_L^T Phi^T Q (ref - F x)
/// Constraint rows cover the configured window: increment bounds through
/// L(i)^T eta, command bounds through the running sum of increments on top of
/// prev_control, and optional output bounds through F, Phi and T_L.
template <typename Scalar>
QpProblemT<Scalar> build_qp(const PredictionMatricesT<Scalar>& pred,
                            const LaguerreBasisT<Scalar>& basis, const MpcConfig& cfg,
                            const Eigen::VectorX<Scalar>& aug_state, Scalar prev_control) {
  const int nc = cfg.ctrl_horizon;
  if (pred.phi_mat.cols() != nc || pred.f_mat.cols() != aug_state.size() ||
      pred.f_mat.rows() != pred.phi_mat.rows()) {
    throw std::invalid_argument("build_qp: inconsistent dimensions");
  }
  const Eigen::MatrixX<Scalar> t_lag = basis_sequence(basis, nc);
  const Eigen::MatrixX<Scalar> phi_lag = pred.phi_mat * t_lag;
  const Scalar q_y = Scalar(cfg.weight_track);
  const Scalar r_w = Scalar(cfg.weight_ctrl);

  QpProblemT<Scalar> qp;
  qp.hessian = q_y * (phi_lag.transpose() * phi_lag) + r_w * (t_lag.transpose() * t_lag);
  qp.hessian = (Scalar(0.5) * (qp.hessian + qp.hessian.transpose())).eval();
  const Eigen::VectorX<Scalar> error = pred.ref_vec - pred.f_mat * aug_state;
  qp.linear = -q_y * (phi_lag.transpose() * error);

  const int window = std::min(cfg.window(), nc);
  const int n_rows = 4 * window + (cfg.y_limit ? 2 * window : 0);
  qp.con_mat.resize(n_rows, basis.terms);
  qp.con_bound.resize(n_rows);

  Eigen::RowVectorX<Scalar> running_sum = Eigen::RowVectorX<Scalar>::Zero(basis.terms);
  for (int i = 0; i < window; ++i) {
    qp.con_mat.row(2 * i) = t_lag.row(i);
    qp.con_bound[2 * i] = Scalar(cfg.du_limit);
    qp.con_mat.row(2 * i + 1) = -t_lag.row(i);
    qp.con_bound[2 * i + 1] = Scalar(cfg.du_limit);

    running_sum += t_lag.row(i);
    qp.con_mat.row(2 * window + 2 * i) = running_sum;
    qp.con_bound[2 * window + 2 * i] = Scalar(cfg.u_limit) - prev_control;
    qp.con_mat.row(2 * window + 2 * i + 1) = -running_sum;
    qp.con_bound[2 * window + 2 * i + 1] = Scalar(cfg.u_limit) + prev_control;
  }
  if (cfg.y_limit) {
    const Scalar y_max = Scalar(*cfg.y_limit);
    const Eigen::VectorX<Scalar> free_resp = pred.f_mat * aug_state;
    for (int i = 0; i < window; ++i) {
      qp.con_mat.row(4 * window + 2 * i) = phi_lag.row(i);
      qp.con_bound[4 * window + 2 * i] = y_max - free_resp[i];
      qp.con_mat.row(4 * window + 2 * i + 1) = -phi_lag.row(i);
      qp.con_bound[4 * window + 2 * i + 1] = y_max + free_resp[i];
    }
  }
  return qp;
}

struct StepDiagnostics {
  double increment{0};  // applied control increment
  int qp_iterations{0};
  bool qp_converged{true};
  int active_constraints{0};
  bool clipped{false};       // final safety clip engaged
  bool fallback{false};      // non-finite QP result replaced by zero increment
  int low_speed_clamps{0};   // times long_vel was raised to the 0.1 m/s floor
};

/// Receding-horizon lateral controller. The prediction model is rebuilt from
/// the measured forward speed every step; state feedback uses the stored
/// previous measurement (no observer). A controller instance is
/// single-threaded; run one instance per concurrent evaluation.
class LaguerreMpc {
 public:
  LaguerreMpc(const VehicleParams& params, const MpcConfig& cfg);

  /// Returns the steering command for the current measurement and setpoint.
  double control_step(const LateralState& measured, double setpoint, double long_vel);

  /// Swaps in scheduled parameters, keeping controller memory.
  void set_params(const AdaptiveParams& params);

  const MpcConfig& config() const { return cfg_; }
  const StepDiagnostics& last_diagnostics() const { return diag_; }
  double prev_control() const { return prev_control_; }

  void reset();

 private:
  VehicleParams params_;
  MpcConfig cfg_;
  LaguerreBasis basis_;
  bool have_prev_{false};
  Eigen::Vector4d prev_state_{Eigen::Vector4d::Zero()};
  double prev_control_{0};
  StepDiagnostics diag_{};
};

}  // namespace ampc
