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

#include <string>
#include <utility>

#include <Eigen/Dense>

#include "blfq/errors.hpp"

namespace blfq {

/// Dense real-symmetric matrix together with its unit label.
struct HermitianObservable {
  Eigen::MatrixXd matrix;
  std::string units;

  HermitianObservable() = default;
  HermitianObservable(Eigen::MatrixXd m, std::string u) : matrix(std::move(m)), units(std::move(u)) {}

  Eigen::Index dimension() const { return matrix.rows(); }

  /// Largest |M_ij - M_ji| relative to the largest entry.
  double asymmetry() const {
    const double scale = matrix.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0.0;
    return (matrix - matrix.transpose()).cwiseAbs().maxCoeff() / scale;
  }

  void require_symmetric(double tol = 1e-9) const {
    if (matrix.rows() != matrix.cols()) throw DimensionError("observable matrix must be square");
    if (asymmetry() > tol) throw DomainError("observable matrix is not symmetric");
  }

  /// <psi|M|psi> for a real normalized coefficient vector.
  double expectation(const Eigen::VectorXd& psi) const {
    if (psi.size() != matrix.rows()) throw DimensionError("state and observable dimensions differ");
    return psi.dot(matrix * psi);
  }
};

}  // namespace blfq
