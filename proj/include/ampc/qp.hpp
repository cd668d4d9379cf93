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

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <Eigen/LU>
#include <stdexcept>
#include <vector>

namespace ampc {

/// min 0.5 x^T E x + x^T K  s.t.  M x <= gamma, with E symmetric positive
/// definite. M may have zero rows (unconstrained problem).
template <typename Scalar>
struct QpProblemT {
  Eigen::MatrixX<Scalar> hessian;    // E, n x n
  Eigen::VectorX<Scalar> linear;     // K, n
  Eigen::MatrixX<Scalar> con_mat;    // M, m x n
  Eigen::VectorX<Scalar> con_bound;  // gamma, m
};

using QpProblem = QpProblemT<double>;

template <typename Scalar>
struct QpSolutionT {
  Eigen::VectorX<Scalar> primal;
  Eigen::VectorX<Scalar> dual;  // nonnegative multipliers, one per constraint row
  int iterations{0};            // dual sweeps performed
  bool converged{true};
  std::vector<int> active_set;  // rows with dual > 0
};

using QpSolution = QpSolutionT<double>;

inline constexpr int kHildrethDefaultMaxIter = 38;
inline constexpr double kHildrethDefaultTol = 1e-8;

namespace detail {

template <typename Scalar>
Eigen::LLT<Eigen::MatrixX<Scalar>> factorize_spd(const Eigen::MatrixX<Scalar>& hessian) {
  if (hessian.rows() != hessian.cols()) {
    throw std::invalid_argument("hessian must be square");
  }
  if ((hessian - hessian.transpose()).template lpNorm<Eigen::Infinity>() >= Scalar(1e-9)) {
    throw std::invalid_argument("hessian is not symmetric");
  }
  Eigen::LLT<Eigen::MatrixX<Scalar>> llt(hessian);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("hessian is not positive definite");
  }
  return llt;
}

template <typename Scalar>
std::vector<int> positive_duals(const Eigen::VectorX<Scalar>& dual) {
  std::vector<int> active;
  for (int i = 0; i < dual.size(); ++i) {
    if (dual[i] > Scalar(0)) active.push_back(i);
  }
  return active;
}

}  // namespace detail

/// Minimizer of the unconstrained cost, -E^{-1} K via Cholesky.
template <typename Scalar>
Eigen::VectorX<Scalar> unconstrained_minimum(const Eigen::MatrixX<Scalar>& hessian,
                                             const Eigen::VectorX<Scalar>& linear) {
  const auto llt = detail::factorize_spd<Scalar>(hessian);
  return llt.solve(-linear);
}

/// Lagrange closed form with every constraint treated as an equality:
/// lambda = -(M E^{-1} M^T)^{-1} (gamma + M E^{-1} K), x = -E^{-1}(M^T lambda + K).
template <typename Scalar>
QpSolutionT<Scalar> solve_equality(const QpProblemT<Scalar>& problem) {
  const auto llt = detail::factorize_spd<Scalar>(problem.hessian);
  const auto& m_mat = problem.con_mat;

  QpSolutionT<Scalar> sol;
  if (m_mat.rows() == 0) {
    sol.primal = llt.solve(-problem.linear);
    sol.dual.resize(0);
    return sol;
  }

  const Eigen::MatrixX<Scalar> einv_mt = llt.solve(m_mat.transpose());
  const Eigen::MatrixX<Scalar> gram = m_mat * einv_mt;
  Eigen::FullPivLU<Eigen::MatrixX<Scalar>> lu(gram);
  if (!lu.isInvertible()) {
    throw std::invalid_argument("equality constraint rows are linearly dependent");
  }
  sol.dual = -lu.solve(problem.con_bound + m_mat * llt.solve(problem.linear));
  sol.primal = -llt.solve(m_mat.transpose() * sol.dual + problem.linear);
  sol.active_set = detail::positive_duals(sol.dual);
  return sol;
}

/// Hildreth's element-wise dual ascent. Returns the unconstrained minimum
/// immediately when feasible; otherwise sweeps lambda_i <- max(0, w_i) until
/// the per-sweep dual change drops below tol or max_iter sweeps elapse, and
/// recovers x = -E^{-1}(K + M^T lambda). Degenerate active sets do not abort
/// the iteration; the best iterate is returned with converged = false when
/// the sweep budget runs out.
template <typename Scalar>
QpSolutionT<Scalar> solve_hildreth(const QpProblemT<Scalar>& problem,
                                   int max_iter = kHildrethDefaultMaxIter,
                                   Scalar tol = Scalar(kHildrethDefaultTol)) {
  const auto llt = detail::factorize_spd<Scalar>(problem.hessian);
  const auto& m_mat = problem.con_mat;
  const Eigen::Index m = m_mat.rows();

  QpSolutionT<Scalar> sol;
  sol.primal = llt.solve(-problem.linear);
  sol.dual = Eigen::VectorX<Scalar>::Zero(m);
  if (m == 0 || ((m_mat * sol.primal - problem.con_bound).maxCoeff() <= Scalar(0))) {
    return sol;
  }

  // Factorize once, reuse across sweeps: E is fixed for the whole solve.
  const Eigen::MatrixX<Scalar> einv_mt = llt.solve(m_mat.transpose());
  const Eigen::MatrixX<Scalar> gram = m_mat * einv_mt;          // P
  const Eigen::VectorX<Scalar> offset =
      problem.con_bound + m_mat * llt.solve(problem.linear);    // d

  Eigen::VectorX<Scalar>& lambda = sol.dual;
  Eigen::VectorX<Scalar> lambda_prev = lambda;
  sol.converged = false;
  while (sol.iterations < max_iter) {
    lambda_prev = lambda;
    for (Eigen::Index i = 0; i < m; ++i) {
      const Scalar diag = gram(i, i);
      if (!(diag > Scalar(0))) continue;  // zero constraint row
      const Scalar w = gram.row(i).dot(lambda) - diag * lambda[i] + offset[i];
      lambda[i] = std::max(Scalar(0), -w / diag);
    }
    ++sol.iterations;
    if ((lambda - lambda_prev).template lpNorm<Eigen::Infinity>() < tol) {
      sol.converged = true;
      break;
    }
  }

  sol.primal -= einv_mt * lambda;
  sol.active_set = detail::positive_duals(lambda);
  return sol;
}

}  // namespace ampc
