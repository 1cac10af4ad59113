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
#include <numbers>

#include <Eigen/Dense>

#include "blfq/basis.hpp"
#include "blfq/errors.hpp"
#include "blfq/observable.hpp"

namespace blfq::hamiltonian {

using basis::BasisCutoffs;
using basis::LongitudinalExponents;
using basis::ModelParameters;

inline void require_default_block(const BasisCutoffs& cutoffs, int jz) {
  cutoffs.validate();
  if (!cutoffs.is_default() || jz != 0) {
    throw UnsupportedError(
        "Hamiltonian matrix elements are available only for J_z = 0, N_max = 0, M_max = 2, "
        "L_max = 0");
  }
}

/// Kinetic plus confining part: (m + mbar)^2 + (2(2n + |m|) + 3) kappa^2 on
/// the diagonal.
inline HermitianObservable build_h0_diagonal(const ModelParameters& params,
                                             const BasisCutoffs& cutoffs = {}, int jz = 0) {
  require_default_block(cutoffs, jz);
  params.validate();
  const auto states = basis::enumerate_block(jz, cutoffs);
  const double total = params.quark_mass + params.antiquark_mass;
  const double kappa2 = params.confinement_strength * params.confinement_strength;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(states.size()),
                                            static_cast<Eigen::Index>(states.size()));
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& s = states[i];
    const double excitation = 2.0 * (2 * s.n + std::abs(s.m)) + 3.0;
    h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = total * total + excitation * kappa2;
  }
  return {h, "MeV^2"};
}

/// NJL contact interaction in the J_z = 0 block, proportional to G_pi.
inline HermitianObservable build_njl_matrix(const ModelParameters& params,
                                            const LongitudinalExponents& ex,
                                            const BasisCutoffs& cutoffs = {}, int jz = 0) {
  require_default_block(cutoffs, jz);
  params.validate();
  const double m = params.quark_mass;
  const double mb = params.antiquark_mass;
  const double g = params.njl_coupling;
  const double b = params.b();
  const double pi = std::numbers::pi;
  auto L = [&](double a, double c) { return basis::longitudinal_integral(0, a, c, ex.alpha, ex.beta); };

  const double l00 = L(0, 0), l01 = L(0, 1), l10 = L(1, 0);
  const double lpm = L(0.5, -0.5), lmp = L(-0.5, 0.5), lpp = L(0.5, 0.5), lmm = L(-0.5, -0.5);
  const double lm3 = L(-0.5, 1.5);

  const double diag_m1 = -8.0 * g * std::pow(b, 4) / pi * l00 * l00;

  const double h12 = 4.0 * g * std::pow(b, 3) / pi * (m * (l01 * lpm + l00 * lpm) + mb * l00 * lmp);
  const double h13 =
      -2.0 * g * std::pow(b, 3) / pi * l00 * (mb * (2.0 * lmp + lm3 + lpp) + 2.0 * m * lpm);
  const double h14 = -4.0 * g * std::pow(b, 4) / pi *
                     (l01 * l10 + l10 * l01 + l01 * l00 + l00 * l01 - 2.0 * l01 * l01 + 2.0 * l00 * l00);

  const double cross = lpp * lmm + lmp * lpm + lpm * lmp + lmm * lpp + lm3 * lmm - 2.0 * lmp * lmp +
                       lmm * lm3;
  const double mixed = (mb * lmp + m * lpm) * (mb * lmp + m * lpm);
  const double h22 = -g * b * b / pi * mb * m * cross - 2.0 * g * b * b / pi * mixed;
  const double h23 = 2.0 * g * b * b / pi * mixed;
  const double h24 = 2.0 * g * std::pow(b, 3) / pi * mb * ((lm3 + 2.0 * lmp) * l00 - lmp * l01) +
                     2.0 * g * std::pow(b, 3) / pi * m * ((lpp + 2.0 * lpm) * l00 + lpm * l01);
  const double h34 = -4.0 * g * std::pow(b, 3) / pi * (m * (lpm * l01 + lpm * l00) + mb * lmp * l00);

  Eigen::Matrix4d h;
  h << diag_m1, h12, h13, h14,
       h12, h22, h23, h24,
       h13, h23, h22, h34,
       h14, h24, h34, diag_m1;
  return {Eigen::MatrixXd(h), "MeV^2"};
}

inline HermitianObservable build_effective_hamiltonian(const ModelParameters& params,
                                                       const BasisCutoffs& cutoffs = {}, int jz = 0) {
  const auto h0 = build_h0_diagonal(params, cutoffs, jz);
  const auto njl = build_njl_matrix(params, basis::compute_exponents(params), cutoffs, jz);
  return {h0.matrix + njl.matrix, "MeV^2"};
}

struct Eigensolution {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // columns
};

/// Fixes the sign of v so that its largest-magnitude component is positive.
/// Ties within 1e-9 are broken by the highest index.
inline void canonicalize_sign(Eigen::Ref<Eigen::VectorXd> v) {
  const double peak = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = v.size() - 1; i >= 0; --i) {
    if (std::abs(v(i)) >= peak - 1e-9) {
      if (v(i) < 0.0) v = -v;
      return;
    }
  }
}

inline Eigensolution diagonalize(const HermitianObservable& h) {
  h.require_symmetric();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.matrix);
  if (solver.info() != Eigen::Success) throw NumericalError("eigen-decomposition did not converge");
  Eigensolution out{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index k = 0; k < out.eigenvectors.cols(); ++k) canonicalize_sign(out.eigenvectors.col(k));
  return out;
}

}  // namespace blfq::hamiltonian
