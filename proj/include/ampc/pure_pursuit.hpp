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
#include <vector>

#include "ampc/plant.hpp"

namespace ampc {

/// Geometric steering law: delta = atan(2 w sin(alpha) / lookahead), where
/// alpha is the body-frame bearing of the first path point at least
/// `lookahead` away. The command is clipped to +-steer_limit.
double pure_pursuit_step(const PlantState& plant,
                         const std::vector<Eigen::Vector2d>& path, double lookahead,
                         double wheelbase, double steer_limit = M_PI / 6.0);

}  // namespace ampc
