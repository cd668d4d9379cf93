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

#include "ampc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ampc {

namespace {

double smoothstep(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return t * t * (3.0 - 2.0 * t);
}

ReferenceType reference_type_from_string(const std::string& name) {
  if (name == "constant") return ReferenceType::constant;
  if (name == "step") return ReferenceType::step;
  if (name == "ramp") return ReferenceType::ramp;
  if (name == "dlc" || name == "double_lane_change") return ReferenceType::double_lane_change;
  if (name == "sine2" || name == "sine_sum") return ReferenceType::sine_sum;
  throw std::runtime_error("unknown reference type: " + name);
}

Profile profile_from_config(const Config& cfg, const std::string& time_key,
                            const std::string& value_key) {
  Profile profile;
  if (!cfg.has(time_key) && !cfg.has(value_key)) return profile;
  profile.times = cfg.list(time_key);
  profile.values = cfg.list(value_key);
  if (profile.times.size() != profile.values.size()) {
    throw std::runtime_error("profile lists `" + time_key + "` and `" + value_key +
                             "` differ in length");
  }
  if (!std::is_sorted(profile.times.begin(), profile.times.end())) {
    throw std::runtime_error("profile `" + time_key + "` must be non-decreasing");
  }
  return profile;
}

}  // namespace

double double_lane_change(double x, double start, double ramp_length, double plateau,
                          double offset) {
  const double up_end = start + ramp_length;
  const double down_start = up_end + plateau;
  const double down_end = down_start + ramp_length;
  if (x <= start) return 0.0;
  if (x < up_end) return offset * smoothstep((x - start) / ramp_length);
  if (x <= down_start) return offset;
  if (x < down_end) return offset * (1.0 - smoothstep((x - down_start) / ramp_length));
  return 0.0;
}

double reference_at(const Reference& ref, double x) {
  switch (ref.type) {
    case ReferenceType::constant:
      return ref.offset;
    case ReferenceType::step:
      return x >= ref.start ? ref.offset : 0.0;
    case ReferenceType::ramp:
      if (x <= ref.start) return 0.0;
      if (x >= ref.start + ref.ramp_length) return ref.offset;
      return ref.offset * smoothstep((x - ref.start) / ref.ramp_length);
    case ReferenceType::double_lane_change:
      return double_lane_change(x, ref.start, ref.ramp_length, ref.plateau, ref.offset);
    case ReferenceType::sine_sum:
      return ref.amp1 * std::sin(2.0 * M_PI * x / ref.wavelength1) +
             ref.amp2 * std::sin(2.0 * M_PI * x / ref.wavelength2);
  }
  return 0.0;
}

double profile_at(const Profile& profile, double t) {
  if (profile.times.empty()) return 0.0;
  if (t <= profile.times.front()) return profile.values.front();
  if (t >= profile.times.back()) return profile.values.back();
  const auto it = std::upper_bound(profile.times.begin(), profile.times.end(), t);
  const std::size_t hi = static_cast<std::size_t>(it - profile.times.begin());
  const std::size_t lo = hi - 1;
  const double span = profile.times[hi] - profile.times[lo];
  if (span <= 0) return profile.values[hi];
  const double ratio = (t - profile.times[lo]) / span;
  return profile.values[lo] + ratio * (profile.values[hi] - profile.values[lo]);
}

double speed_profile(const Scenario& scenario, double t) {
  if (scenario.speed.times.empty()) return kMinLongVel;
  return profile_at(scenario.speed, t);
}

double wind_profile(const Scenario& scenario, double t) {
  return profile_at(scenario.wind, t);
}

void Scenario::validate() const {
  if (!(duration > 0)) {
    throw std::runtime_error("scenario duration must be > 0");
  }
  if (speed.times.empty()) {
    throw std::runtime_error("scenario needs a speed profile");
  }
  // Piecewise linear, so the minimum sits on a breakpoint.
  for (double v : speed.values) {
    if (v < kMinLongVel) {
      throw std::runtime_error("speed profile dips below the 0.1 m/s floor");
    }
  }
}

Scenario scenario_from_config(const Config& cfg) {
  Scenario scenario;
  scenario.name = cfg.str("name", "unnamed");
  scenario.duration = cfg.number("duration");

  scenario.reference.type = reference_type_from_string(cfg.str("reference.type", "constant"));
  scenario.reference.offset = cfg.number("reference.offset", scenario.reference.offset);
  scenario.reference.start = cfg.number("reference.start", scenario.reference.start);
  scenario.reference.ramp_length =
      cfg.number("reference.ramp", scenario.reference.ramp_length);
  scenario.reference.plateau = cfg.number("reference.plateau", scenario.reference.plateau);
  scenario.reference.amp1 = cfg.number("reference.amp1", scenario.reference.amp1);
  scenario.reference.wavelength1 = cfg.number("reference.wl1", scenario.reference.wavelength1);
  scenario.reference.amp2 = cfg.number("reference.amp2", scenario.reference.amp2);
  scenario.reference.wavelength2 = cfg.number("reference.wl2", scenario.reference.wavelength2);

  scenario.speed = profile_from_config(cfg, "speed.t", "speed.v");
  if (scenario.speed.times.empty() && cfg.has("speed.constant")) {
    scenario.speed.times = {0.0};
    scenario.speed.values = {cfg.number("speed.constant")};
  }
  scenario.wind = profile_from_config(cfg, "wind.t", "wind.f");

  scenario.initial.lat_vel = cfg.number("initial.lat_vel", 0.0);
  scenario.initial.heading = cfg.number("initial.heading", 0.0);
  scenario.initial.yaw_rate = cfg.number("initial.yaw_rate", 0.0);
  scenario.initial.global_x = cfg.number("initial.x", 0.0);
  scenario.initial.global_y = cfg.number("initial.y", 0.0);

  scenario.validate();
  return scenario;
}

Scenario load_scenario(const std::string& path) {
  return scenario_from_config(Config::from_file(path));
}

}  // namespace ampc
