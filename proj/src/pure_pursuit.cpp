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

#include "ampc/pure_pursuit.hpp"

#include <algorithm>
#include <stdexcept>

namespace ampc {

double pure_pursuit_step(const PlantState& plant,
                         const std::vector<Eigen::Vector2d>& path, double lookahead,
                         double wheelbase, double steer_limit) {
  if (path.empty()) {
    throw std::invalid_argument("pure pursuit needs a non-empty path");
  }
  if (!(lookahead > 0)) {
    throw std::invalid_argument("lookahead must be > 0");
  }

  const Eigen::Vector2d pos(plant.global_x, plant.global_y);
  std::size_t nearest = 0;
  double best = (path[0] - pos).squaredNorm();
  for (std::size_t i = 1; i < path.size(); ++i) {
    const double d = (path[i] - pos).squaredNorm();
    if (d < best) {
      best = d;
      nearest = i;
    }
  }

  // First point at lookahead distance past the nearest one; fall back to the
  // path end when the horizon runs out.
  std::size_t target = path.size() - 1;
  for (std::size_t i = nearest; i < path.size(); ++i) {
    if ((path[i] - pos).norm() >= lookahead) {
      target = i;
      break;
    }
  }

  const Eigen::Vector2d to_target = path[target] - pos;
  const double bearing = std::atan2(to_target.y(), to_target.x()) - plant.heading;
  const double steer = std::atan(2.0 * wheelbase * std::sin(bearing) / lookahead);
  return std::clamp(steer, -steer_limit, steer_limit);
}

}  // namespace ampc
