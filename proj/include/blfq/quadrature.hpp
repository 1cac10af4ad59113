// Copyright 2026 The blfq-vqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "blfq/errors.hpp"

namespace blfq {

/// Nodes and weights of a fixed-order quadrature rule.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }

  template <typename F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

namespace detail {

// Golub-Welsch: eigenvalues of the symmetric Jacobi matrix are the nodes, the
// squared first eigenvector components times the total mass are the weights.
inline QuadratureRule golub_welsch(const Eigen::VectorXd& diagonal,
                                   const Eigen::VectorXd& off_diagonal,
                                   double total_mass) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diagonal, off_diagonal, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Golub-Welsch eigen-decomposition failed");
  }
  QuadratureRule rule;
  const auto n = static_cast<std::size_t>(diagonal.size());
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    rule.nodes[i] = solver.eigenvalues()(k);
    const double v0 = solver.eigenvectors()(0, k);
    rule.weights[i] = total_mass * v0 * v0;
  }
  return rule;
}

}  // namespace detail

/// Gauss-Legendre rule on (0, 1).
///
/// Nodes come from Golub-Welsch and are then polished with Newton steps on
/// the Legendre recurrence; weights use the closed form 2/((1-t^2) P_n'(t)^2)
/// so they are accurate to rounding even at n = 128.
inline QuadratureRule gauss_legendre_unit(std::size_t order) {
  if (order == 0) throw DomainError("quadrature order must be positive");
  const auto n = static_cast<Eigen::Index>(order);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd off(n > 1 ? n - 1 : 0);
  for (Eigen::Index k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    off(k - 1) = kk / std::sqrt(4.0 * kk * kk - 1.0);
  }
  QuadratureRule rule = detail::golub_welsch(diag, off, 2.0);
  for (std::size_t i = 0; i < order; ++i) {
    double t = rule.nodes[i];
    double dp = 1.0;
    for (int iter = 0; iter < 3; ++iter) {
      double p0 = 1.0;
      double p1 = t;
      for (std::size_t k = 2; k <= order; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * t * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(order) * (t * p1 - p0) / (t * t - 1.0);
      t -= p1 / dp;
    }
    rule.nodes[i] = 0.5 * (t + 1.0);
    rule.weights[i] = 1.0 / ((1.0 - t * t) * dp * dp);
  }
  return rule;
}

/// Shared 128-node rule used for every longitudinal integral.
inline const QuadratureRule& gauss_legendre_128() {
  static const QuadratureRule rule = gauss_legendre_unit(128);
  return rule;
}

/// Gauss-Hermite rule for weight exp(-t^2) on the real line.
inline QuadratureRule gauss_hermite(std::size_t order) {
  if (order == 0) throw DomainError("quadrature order must be positive");
  const auto n = static_cast<Eigen::Index>(order);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd off(n > 1 ? n - 1 : 0);
  for (Eigen::Index k = 1; k < n; ++k) off(k - 1) = std::sqrt(static_cast<double>(k) / 2.0);
  return detail::golub_welsch(diag, off, std::sqrt(std::numbers::pi));
}

}  // namespace blfq
