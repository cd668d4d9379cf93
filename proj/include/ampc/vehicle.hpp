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

#include <Eigen/Core>
#include <cmath>
#include <stdexcept>

namespace ampc {

// Below this forward speed the bicycle model is singular (1/long_vel terms).
inline constexpr double kMinLongVel = 0.1;

/// Physical constants of the single-track (bicycle) lateral model.
template <typename Scalar>
struct VehicleParamsT {
  Scalar mass{1575.0};          // kg
  Scalar yaw_inertia{2875.0};   // kg m^2
  Scalar dist_front{1.2};       // m, CG to front axle
  Scalar dist_rear{1.6};        // m, CG to rear axle
  Scalar stiff_front{19000.0};  // N/rad
  Scalar stiff_rear{33000.0};   // N/rad

  Scalar wheelbase() const { return dist_front + dist_rear; }

  void validate() const {
    if (!(mass > Scalar(0)) || !(yaw_inertia > Scalar(0)) ||
        !(dist_front > Scalar(0)) || !(dist_rear > Scalar(0)) ||
        !(stiff_front > Scalar(0)) || !(stiff_rear > Scalar(0))) {
      throw std::invalid_argument("vehicle parameters must be strictly positive");
    }
  }
};

using VehicleParams = VehicleParamsT<double>;

/// Lateral state [lat_vel, heading, yaw_rate, lat_pos].
template <typename Scalar>
struct LateralStateT {
  Scalar lat_vel{0};   // m/s, body-frame lateral velocity
  Scalar heading{0};   // rad
  Scalar yaw_rate{0};  // rad/s
  Scalar lat_pos{0};   // m

  Eigen::Vector4<Scalar> vec() const { return {lat_vel, heading, yaw_rate, lat_pos}; }

  static LateralStateT from_vec(const Eigen::Vector4<Scalar>& v) {
    return {v[0], v[1], v[2], v[3]};
  }
};

using LateralState = LateralStateT<double>;

template <typename Scalar>
struct ContinuousModelT {
  Eigen::Matrix4<Scalar> a_mat;
  Eigen::Vector4<Scalar> b_vec;
  Eigen::RowVector4<Scalar> c_vec;
  Scalar long_vel{0};  // forward speed the matrices were built for
};

using ContinuousModel = ContinuousModelT<double>;

template <typename Scalar>
struct DiscreteModelT {
  Eigen::Matrix4<Scalar> a_mat;
  Eigen::Vector4<Scalar> b_vec;
  Eigen::RowVector4<Scalar> c_vec;
  Scalar sample_time{0};
};

using DiscreteModel = DiscreteModelT<double>;

/// Continuous bicycle-model matrices for the given forward speed.
template <typename Scalar>
ContinuousModelT<Scalar> build_continuous_model(const VehicleParamsT<Scalar>& params,
                                                Scalar long_vel) {
  params.validate();
  if (!(long_vel >= Scalar(kMinLongVel))) {
    throw std::invalid_argument("long_vel must be >= 0.1 m/s");
  }

  const Scalar m = params.mass;
  const Scalar iz = params.yaw_inertia;
  const Scalar lf = params.dist_front;
  const Scalar lr = params.dist_rear;
  const Scalar cf = params.stiff_front;
  const Scalar cr = params.stiff_rear;
  const Scalar vx = long_vel;

  ContinuousModelT<Scalar> model;
  model.long_vel = vx;
  model.a_mat.setZero();
  model.a_mat(0, 0) = -Scalar(2) * (cf + cr) / (m * vx);
  model.a_mat(0, 2) = -vx - Scalar(2) * (cf * lf - cr * lr) / (m * vx);
  model.a_mat(1, 2) = Scalar(1);
  model.a_mat(2, 0) = -Scalar(2) * (cf * lf - cr * lr) / (iz * vx);
  model.a_mat(2, 2) = -Scalar(2) * (cf * lf * lf + cr * lr * lr) / (iz * vx);
  model.a_mat(3, 0) = Scalar(1);
  model.a_mat(3, 1) = vx;
  model.b_vec << Scalar(2) * cf / m, Scalar(0), Scalar(2) * cf * lf / iz, Scalar(0);
  model.c_vec << Scalar(0), Scalar(0), Scalar(0), Scalar(1);
  return model;
}

/// Forward-Euler discretization: A_k = I + T A_c, B = T B_c, C = C_c.
/// A zero-order-hold variant may be added behind the same contract if the
/// sample time ever grows past what Euler tolerates.
template <typename Scalar>
DiscreteModelT<Scalar> discretize(const ContinuousModelT<Scalar>& model, Scalar sample_time) {
  if (!(sample_time > Scalar(0))) {
    throw std::invalid_argument("sample_time must be > 0");
  }
  DiscreteModelT<Scalar> dm;
  dm.a_mat = Eigen::Matrix4<Scalar>::Identity() + sample_time * model.a_mat;
  dm.b_vec = sample_time * model.b_vec;
  dm.c_vec = model.c_vec;
  dm.sample_time = sample_time;
  return dm;
}

}  // namespace ampc
