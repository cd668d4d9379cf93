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

/// Discrete Laguerre network with pole `scale` and `terms` functions.
///
/// The network is generated by the recursion L(k+1) = A_l * L(k) from the
/// initial vector L(0), where A_l is lower triangular with `scale` on the
/// diagonal. For scale == 0 the functions degenerate to unit pulses and the
/// basis matrix over `terms` samples is the identity.
template <typename Scalar>
struct LaguerreBasisT {
  Scalar scale{0};                        // pole, 0 <= scale < 1
  int terms{0};                           // number of functions N
  Scalar beta{0};                         // 1 - scale^2
  Eigen::MatrixX<Scalar> recursion_mat;   // N x N lower triangular
  Eigen::VectorX<Scalar> initial_vec;     // L(0)
};

using LaguerreBasis = LaguerreBasisT<double>;

template <typename Scalar>
LaguerreBasisT<Scalar> build_basis(Scalar scale, int terms) {
  if (!(scale >= Scalar(0) && scale < Scalar(1))) {
    throw std::invalid_argument("laguerre scale must lie in [0, 1)");
  }
  if (terms < 1) {
    throw std::invalid_argument("laguerre term count must be >= 1");
  }

  LaguerreBasisT<Scalar> basis;
  basis.scale = scale;
  basis.terms = terms;
  basis.beta = Scalar(1) - scale * scale;

  // Signed powers (-scale)^k accumulated by multiplication so the
  // scale == 0 pulse case stays exact.
  Eigen::VectorX<Scalar> signed_pow(terms);
  signed_pow[0] = Scalar(1);
  for (int k = 1; k < terms; ++k) {
    signed_pow[k] = signed_pow[k - 1] * (-scale);
  }

  basis.initial_vec = std::sqrt(basis.beta) * signed_pow;

  basis.recursion_mat = Eigen::MatrixX<Scalar>::Zero(terms, terms);
  for (int i = 0; i < terms; ++i) {
    basis.recursion_mat(i, i) = scale;
    for (int j = 0; j < i; ++j) {
      basis.recursion_mat(i, j) = signed_pow[i - j - 1] * basis.beta;
    }
  }
  return basis;
}

/// Stacks L(0)^T .. L(horizon-1)^T as the rows of a (horizon x N) matrix.
template <typename Scalar>
Eigen::MatrixX<Scalar> basis_sequence(const LaguerreBasisT<Scalar>& basis, int horizon) {
  if (horizon < 1) {
    throw std::invalid_argument("basis_sequence horizon must be >= 1");
  }
  Eigen::MatrixX<Scalar> seq(horizon, basis.terms);
  Eigen::VectorX<Scalar> l = basis.initial_vec;
  seq.row(0) = l.transpose();
  for (int i = 1; i < horizon; ++i) {
    l = basis.recursion_mat * l;
    seq.row(i) = l.transpose();
  }
  return seq;
}

/// Expands coefficients eta into the control-increment sequence
/// delta_u(i) = L(i)^T eta for i = 0 .. steps-1.
template <typename Scalar>
Eigen::VectorX<Scalar> expand_control(const Eigen::VectorX<Scalar>& eta,
                                      const LaguerreBasisT<Scalar>& basis, int steps) {
  if (eta.size() != basis.terms) {
    throw std::invalid_argument("coefficient vector length must equal basis terms");
  }
  return basis_sequence(basis, steps) * eta;
}

}  // namespace ampc
