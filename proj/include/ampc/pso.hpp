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
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ampc {

enum class PsoVariant {
  classic,         // constant inertia (w_max) and accelerations
  linear_inertia,  // inertia interpolates w_max -> w_min over the run
  damped,          // inertia multiplied by w_damp each generation
  improved,        // exponential inertia decay plus phased acceleration updates
};

PsoVariant pso_variant_from_string(const std::string& name);
std::string to_string(PsoVariant variant);

struct PsoHyper {
  int generations{15};
  int population{20};
  double w_max{0.99};
  double w_min{0.1};
  double w_damp{0.99};
  double c1_init{2.0};
  double c2_init{2.0};
  double lambda1{30.0};
  double lambda2{3.0};
  PsoVariant variant{PsoVariant::improved};
  std::uint64_t seed{0};

  void validate() const;
};

struct SwarmResult {
  Eigen::VectorXd best_position;
  double best_fitness{0};
  std::vector<double> fitness_history;  // global best after init and each generation
  std::vector<double> w_history;
  std::vector<double> c1_history;
  std::vector<double> c2_history;
  long evaluations{0};
};

/// Per-dimension search intervals.
struct SearchBounds {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
};

double inertia_linear(int generation, const PsoHyper& hyper);
double inertia_exponential(int generation, const PsoHyper& hyper);

/// Phased acceleration update: c1 grows early and shrinks late, c2 mirrors it
/// so the sum is preserved before clamping to [0.5, 4.0].
std::pair<double, double> update_accelerations(double c1, double c2, int generation,
                                               int max_generations);

double sphere(const Eigen::VectorXd& x);

using Objective = std::function<double(const Eigen::VectorXd&)>;

/// Runs the swarm for hyper.generations generations. Positions are clamped to
/// the bounds and velocities to 20% of each dimension's range. Fully
/// deterministic for a fixed seed; throws on a non-finite objective value.
/// When initial_guess is given it seeds particle 0 (clamped to the bounds).
SwarmResult pso_run(const Objective& objective, const SearchBounds& bounds,
                    const PsoHyper& hyper,
                    const std::optional<Eigen::VectorXd>& initial_guess = std::nullopt);

}  // namespace ampc
