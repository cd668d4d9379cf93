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
#include <stdexcept>

#include "ampc/vehicle.hpp"

namespace ampc {

inline constexpr double kGravity = 9.81;

/// Magic-formula shape coefficients as configured (peak scale applied to the
/// static axle load).
struct PacejkaCoeffs {
  double b{10.0};       // stiffness factor
  double c{1.9};        // shape factor
  double d_scale{1.0};  // extra scale on the load-derived peak
  double e{0.97};       // curvature factor
  double mu{0.9};       // friction coefficient

  void validate() const {
    if (!(b > 0) || !(c > 0) || !(d_scale > 0) || !(mu > 0)) {
      throw std::invalid_argument("pacejka b, c, d_scale and mu must be > 0");
    }
  }
};

/// One axle's force curve, peak already resolved from the static load.
template <typename Scalar>
struct AxleTireT {
  Scalar stiffness_b{0};
  Scalar shape_c{0};
  Scalar peak_d{0};  // N
  Scalar curvature_e{0};

  /// Small-slip slope dF/dalpha at alpha = 0.
  Scalar linear_stiffness() const { return stiffness_b * shape_c * peak_d; }
};

using AxleTire = AxleTireT<double>;

/// F = D sin(C atan(B a - E (B a - atan(B a)))), odd in the slip angle.
template <typename Scalar>
Scalar pacejka_lateral_force(Scalar slip_angle, const AxleTireT<Scalar>& tire) {
  const Scalar ba = tire.stiffness_b * slip_angle;
  return tire.peak_d *
         std::sin(tire.shape_c *
                  std::atan(ba - tire.curvature_e * (ba - std::atan(ba))));
}

template <typename Scalar>
struct TireSetT {
  AxleTireT<Scalar> front;
  AxleTireT<Scalar> rear;
};

using TireSet = TireSetT<double>;

/// Per-axle curves with peaks mu * static axle load (front carries the
/// rear-lever share of the weight and vice versa).
template <typename Scalar>
TireSetT<Scalar> make_tires(const VehicleParamsT<Scalar>& params, const PacejkaCoeffs& coeffs) {
  params.validate();
  coeffs.validate();
  const Scalar weight = params.mass * Scalar(kGravity);
  const Scalar wheelbase = params.wheelbase();

  TireSetT<Scalar> tires;
  tires.front = {Scalar(coeffs.b), Scalar(coeffs.c),
                 Scalar(coeffs.d_scale * coeffs.mu) * weight * params.dist_rear / wheelbase,
                 Scalar(coeffs.e)};
  tires.rear = {Scalar(coeffs.b), Scalar(coeffs.c),
                Scalar(coeffs.d_scale * coeffs.mu) * weight * params.dist_front / wheelbase,
                Scalar(coeffs.e)};
  return tires;
}

}  // namespace ampc
