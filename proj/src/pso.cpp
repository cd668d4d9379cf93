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

#include "ampc/pso.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace ampc {

namespace {

constexpr double kAccelMin = 0.5;
constexpr double kAccelMax = 4.0;
constexpr double kVelocityFraction = 0.2;

double check_finite(double fitness, int particle) {
  if (!std::isfinite(fitness)) {
    throw std::runtime_error("objective returned a non-finite value for particle " +
                             std::to_string(particle));
  }
  return fitness;
}

}  // namespace

PsoVariant pso_variant_from_string(const std::string& name) {
  if (name == "classic") return PsoVariant::classic;
  if (name == "linear" || name == "linear-inertia") return PsoVariant::linear_inertia;
  if (name == "damped") return PsoVariant::damped;
  if (name == "improved") return PsoVariant::improved;
  throw std::invalid_argument("unknown PSO variant: " + name);
}

std::string to_string(PsoVariant variant) {
  switch (variant) {
    case PsoVariant::classic: return "classic";
    case PsoVariant::linear_inertia: return "linear";
    case PsoVariant::damped: return "damped";
    case PsoVariant::improved: return "improved";
  }
  return "unknown";
}

void PsoHyper::validate() const {
  if (generations < 1) throw std::invalid_argument("generations must be >= 1");
  if (population < 2) throw std::invalid_argument("population must be >= 2");
  if (!(w_max > w_min) || !(w_min > 0)) {
    throw std::invalid_argument("require w_max > w_min > 0");
  }
  if (!(lambda2 > 0)) throw std::invalid_argument("lambda2 must be > 0");
}

double inertia_linear(int generation, const PsoHyper& hyper) {
  const double ratio = static_cast<double>(generation) / hyper.generations;
  return hyper.w_max - (hyper.w_max - hyper.w_min) * ratio;
}

double inertia_exponential(int generation, const PsoHyper& hyper) {
  const double ratio = static_cast<double>(generation) / hyper.generations;
  return hyper.w_min +
         std::exp(hyper.w_max - hyper.lambda1 * (hyper.w_max + hyper.w_min) * ratio) /
             hyper.lambda2;
}

std::pair<double, double> update_accelerations(double c1, double c2, int generation,
                                               int max_generations) {
  const double ratio = static_cast<double>(generation) / max_generations;
  // Half-open phase bands; the last band owns ratio == 1.
  double alpha = 0;
  if (ratio < 0.20) {
    alpha = 0.05;
  } else if (ratio < 0.35) {
    alpha = 0.02;
  } else if (ratio < 0.75) {
    alpha = -0.035;
  } else {
    alpha = -0.0015;
  }
  return {std::clamp(c1 + alpha, kAccelMin, kAccelMax),
          std::clamp(c2 - alpha, kAccelMin, kAccelMax)};
}

double sphere(const Eigen::VectorXd& x) { return x.squaredNorm(); }

SwarmResult pso_run(const Objective& objective, const SearchBounds& bounds,
                    const PsoHyper& hyper,
                    const std::optional<Eigen::VectorXd>& initial_guess) {
  hyper.validate();
  const Eigen::Index dims = bounds.lower.size();
  if (dims == 0 || bounds.upper.size() != dims) {
    throw std::invalid_argument("bounds must be non-empty and of equal size");
  }
  for (Eigen::Index j = 0; j < dims; ++j) {
    if (!(bounds.upper[j] > bounds.lower[j])) {
      throw std::invalid_argument("bounds must be non-degenerate");
    }
  }
  if (initial_guess && initial_guess->size() != dims) {
    throw std::invalid_argument("initial guess dimension mismatch");
  }

  std::mt19937_64 rng(hyper.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const Eigen::VectorXd range = bounds.upper - bounds.lower;
  const Eigen::VectorXd vel_limit = kVelocityFraction * range;

  const int pop = hyper.population;
  std::vector<Eigen::VectorXd> position(pop), velocity(pop), best_position(pop);
  std::vector<double> best_fitness(pop);

  SwarmResult result;
  result.evaluations = 0;

  for (int i = 0; i < pop; ++i) {
    position[i].resize(dims);
    for (Eigen::Index j = 0; j < dims; ++j) {
      position[i][j] = bounds.lower[j] + unit(rng) * range[j];
    }
    velocity[i] = Eigen::VectorXd::Zero(dims);
  }
  if (initial_guess) {
    position[0] = initial_guess->cwiseMax(bounds.lower).cwiseMin(bounds.upper);
  }

  int best_index = 0;
  for (int i = 0; i < pop; ++i) {
    best_fitness[i] = check_finite(objective(position[i]), i);
    ++result.evaluations;
    best_position[i] = position[i];
    if (best_fitness[i] < best_fitness[best_index]) best_index = i;
  }
  Eigen::VectorXd global_best = best_position[best_index];
  double global_fitness = best_fitness[best_index];

  double c1 = hyper.c1_init;
  double c2 = hyper.c2_init;
  double w = hyper.variant == PsoVariant::improved ? inertia_exponential(0, hyper)
                                                   : hyper.w_max;

  result.fitness_history.push_back(global_fitness);
  result.w_history.push_back(w);
  result.c1_history.push_back(c1);
  result.c2_history.push_back(c2);

  for (int g = 1; g <= hyper.generations; ++g) {
    switch (hyper.variant) {
      case PsoVariant::classic:
        w = hyper.w_max;
        break;
      case PsoVariant::linear_inertia:
        w = inertia_linear(g, hyper);
        break;
      case PsoVariant::damped:
        w *= hyper.w_damp;
        break;
      case PsoVariant::improved:
        w = inertia_exponential(g, hyper);
        std::tie(c1, c2) = update_accelerations(c1, c2, g, hyper.generations);
        break;
    }

    // Asynchronous sweep in particle-index order: each particle sees the
    // bests left by the particles before it, which propagates improvements
    // within the generation and is what lets the improved schedule keep
    // contracting once the inertia floor is reached.
    for (int i = 0; i < pop; ++i) {
      for (Eigen::Index j = 0; j < dims; ++j) {
        const double r1 = unit(rng);
        const double r2 = unit(rng);
        double v = w * velocity[i][j] + c1 * r1 * (best_position[i][j] - position[i][j]) +
                   c2 * r2 * (global_best[j] - position[i][j]);
        v = std::clamp(v, -vel_limit[j], vel_limit[j]);
        velocity[i][j] = v;
        position[i][j] = std::clamp(position[i][j] + v, bounds.lower[j], bounds.upper[j]);
      }
      const double fitness = check_finite(objective(position[i]), i);
      ++result.evaluations;
      if (fitness < best_fitness[i]) {
        best_fitness[i] = fitness;
        best_position[i] = position[i];
      }
      if (fitness < global_fitness) {
        global_fitness = fitness;
        global_best = position[i];
      }
    }

    result.fitness_history.push_back(global_fitness);
    result.w_history.push_back(w);
    result.c1_history.push_back(c1);
    result.c2_history.push_back(c2);
  }

  result.best_position = global_best;
  result.best_fitness = global_fitness;
  return result;
}

}  // namespace ampc
