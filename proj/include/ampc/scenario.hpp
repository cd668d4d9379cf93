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

#include "ampc/config.hpp"
#include "ampc/plant.hpp"

namespace ampc {

enum class ReferenceType {
  constant,            // y_ref = offset everywhere
  step,                // 0 until `start`, then offset
  ramp,                // smoothstep from 0 to offset over [start, start + ramp_length]
  double_lane_change,  // two opposing smoothstep ramps with a plateau
  sine_sum,            // amp1 sin(2 pi x / wl1) + amp2 sin(2 pi x / wl2)
};

/// Lateral reference as a function of longitudinal position.
struct Reference {
  ReferenceType type{ReferenceType::constant};
  double offset{0};         // m; lane offset, plateau height or step size
  double start{40.0};       // m, first ramp / step station
  double ramp_length{25.0}; // m
  double plateau{30.0};     // m
  double amp1{8.0}, wavelength1{200.0};
  double amp2{4.0}, wavelength2{90.0};
};

double reference_at(const Reference& ref, double x);

/// Smooth double-lane-change profile; C1 by construction.
double double_lane_change(double x, double start, double ramp_length, double plateau,
                          double offset);

/// Piecewise-linear profile over time, clamped to the end values.
struct Profile {
  std::vector<double> times;
  std::vector<double> values;
};

double profile_at(const Profile& profile, double t);

struct Scenario {
  std::string name;
  double duration{10.0};
  Reference reference;
  Profile speed;         // m/s
  Profile wind;          // N; empty profile means no wind
  PlantState initial{};

  void validate() const;
};

double speed_profile(const Scenario& scenario, double t);
double wind_profile(const Scenario& scenario, double t);

Scenario scenario_from_config(const Config& cfg);
Scenario load_scenario(const std::string& path);

}  // namespace ampc
