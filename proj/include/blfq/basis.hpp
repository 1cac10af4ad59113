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

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <boost/math/special_functions/jacobi.hpp>

#include "blfq/errors.hpp"

namespace blfq::basis {

/// Physical constants of the BLFQ-NJL model. Masses and scales in MeV, the NJL
/// coupling in MeV^-2. Defaults are the pion fit.
struct ModelParameters {
  double quark_mass = 337.01;
  double antiquark_mass = 337.01;
  double confinement_strength = 227.0;
  /// Harmonic-oscillator scale; unset means "equal to confinement_strength".
  std::optional<double> basis_scale;
  double njl_coupling = 250.785e-6;
  int color_number = 3;

  double b() const { return basis_scale.value_or(confinement_strength); }

  void validate() const {
    if (!(quark_mass > 0.0)) throw DomainError("quark mass must be positive");
    if (!(antiquark_mass > 0.0)) throw DomainError("antiquark mass must be positive");
    if (!(confinement_strength > 0.0)) throw DomainError("confinement strength must be positive");
    if (!(b() > 0.0)) throw DomainError("basis scale must be positive");
    if (!std::isfinite(njl_coupling)) throw DomainError("NJL coupling must be finite");
    if (color_number != 3) throw DomainError("only N_c = 3 is supported");
  }
};

struct BasisCutoffs {
  int n_max = 0;
  int m_max = 2;
  int l_max = 0;

  void validate() const {
    if (n_max < 0 || m_max < 0 || l_max < 0) throw DomainError("cutoffs must be nonnegative");
  }
  bool is_default() const { return n_max == 0 && m_max == 2 && l_max == 0; }
};

struct LongitudinalExponents {
  double alpha = 0.0;
  double beta = 0.0;
};

inline LongitudinalExponents compute_exponents(const ModelParameters& p) {
  p.validate();
  const double kappa2 = p.confinement_strength * p.confinement_strength;
  const double total = p.quark_mass + p.antiquark_mass;
  return {2.0 * p.antiquark_mass * total / kappa2, 2.0 * p.quark_mass * total / kappa2};
}

namespace detail {

inline void require_positive_gamma_arg(double z, const char* what) {
  if (!(z > 0.0)) {
    throw DomainError(std::string("longitudinal integral: nonpositive Gamma argument in ") + what);
  }
}

}  // namespace detail

/// L_l(a, b; alpha, beta) = integral over (0,1) of x^b (1-x)^a chi_l(x) dx / (4 pi).
///
/// Evaluated from the closed-form coefficient C_{0,0} and the row/column
/// recurrences for C_{l,m}; row l is summed.
inline double longitudinal_integral(int l, double a, double b_exp, double alpha, double beta) {
  if (l < 0) throw DomainError("longitudinal integral: l must be nonnegative");
  const double ha = 0.5 * alpha + a;
  const double hb = 0.5 * beta + b_exp;
  detail::require_positive_gamma_arg(alpha + 1.0, "alpha + 1");
  detail::require_positive_gamma_arg(beta + 1.0, "beta + 1");
  detail::require_positive_gamma_arg(ha + 1.0, "alpha/2 + a + 1");
  detail::require_positive_gamma_arg(hb + 1.0, "beta/2 + b + 1");

  double row0 = std::exp(0.5 * (std::lgamma(alpha + beta + 1.0) - std::lgamma(alpha + 1.0) -
                                std::lgamma(beta + 1.0)) +
                         std::lgamma(hb + 1.0) + std::lgamma(ha + 1.0) - std::lgamma(hb + ha + 2.0));
  for (int k = 1; k <= l; ++k) {
    const double kk = k;
    row0 *= -std::sqrt((kk + beta) * (kk + alpha + beta) / (kk * (kk + alpha))) * (ha + kk) /
            (hb + ha + kk + 1.0);
  }
  const double ll = l;
  double c = row0;
  double sum = c;
  for (int m = 1; m <= l; ++m) {
    const double mm = m;
    c *= -(ll + alpha - mm + 1.0) * (ll - mm + 1.0) / (mm * (beta + mm) * (ha + ll - mm + 1.0)) *
         (hb + mm);
    sum += c;
  }
  return std::sqrt((2.0 * ll + alpha + beta + 1.0) / (4.0 * std::numbers::pi)) * sum;
}

/// Longitudinal basis function chi_l(x; alpha, beta), normalized so that
/// the integral of chi_l chi_l' / (4 pi) over (0,1) is delta_{l l'}.
inline double chi(double x, int l, double alpha, double beta) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("chi: x must lie in (0, 1)");
  if (l < 0) throw DomainError("chi: l must be nonnegative");
  const double ll = l;
  const double log_norm =
      0.5 * (std::log(4.0 * std::numbers::pi * (2.0 * ll + alpha + beta + 1.0)) +
             std::lgamma(ll + 1.0) + std::lgamma(ll + alpha + beta + 1.0) -
             std::lgamma(ll + alpha + 1.0) - std::lgamma(ll + beta + 1.0)) +
      0.5 * beta * std::log(x) + 0.5 * alpha * std::log1p(-x);
  return std::exp(log_norm) * boost::math::jacobi(static_cast<unsigned>(l), alpha, beta, 2.0 * x - 1.0);
}

/// Radial part of the momentum-space 2D oscillator function, i.e. phi_{nm}
/// without the e^{i m phi} factor. Depends only on |q|.
inline double ho_momentum_radial(int n, int m, double q, double b) {
  const unsigned am = static_cast<unsigned>(std::abs(m));
  const double t = q * q / (b * b);
  const double norm = std::sqrt(4.0 * std::numbers::pi *
                                std::exp(std::lgamma(n + 1.0) - std::lgamma(n + am + 1.0))) / b;
  const double power = am == 0 ? 1.0 : std::pow(q / b, static_cast<double>(am));
  return norm * power * std::exp(-0.5 * t) * std::assoc_laguerre(static_cast<unsigned>(n), am, t);
}

/// Momentum-space 2D harmonic-oscillator function phi_{nm}(q; b).
/// At q = 0 the azimuth is taken as 0.
inline std::complex<double> ho_momentum(int n, int m, double qx, double qy, double b) {
  if (n < 0) throw DomainError("ho_momentum: n must be nonnegative");
  if (!(b > 0.0)) throw DomainError("ho_momentum: b must be positive");
  const double q = std::hypot(qx, qy);
  const double phi = q > 0.0 ? std::atan2(qy, qx) : 0.0;
  return ho_momentum_radial(n, m, q, b) * std::polar(1.0, m * phi);
}

/// Coordinate-space 2D harmonic-oscillator function, including the phase
/// e^{i (n + |m|/2) pi}.
inline std::complex<double> ho_coordinate(int n, int m, double rx, double ry, double b) {
  if (n < 0) throw DomainError("ho_coordinate: n must be nonnegative");
  if (!(b > 0.0)) throw DomainError("ho_coordinate: b must be positive");
  const unsigned am = static_cast<unsigned>(std::abs(m));
  const double r = std::hypot(rx, ry);
  const double phi = r > 0.0 ? std::atan2(ry, rx) : 0.0;
  const double t = b * b * r * r;
  const double norm =
      b * std::sqrt(std::exp(std::lgamma(n + 1.0) - std::lgamma(n + am + 1.0)) / std::numbers::pi);
  const double power = am == 0 ? 1.0 : std::pow(b * r, static_cast<double>(am));
  const double radial =
      norm * power * std::exp(-0.5 * t) * std::assoc_laguerre(static_cast<unsigned>(n), am, t);
  return radial * std::polar(1.0, m * phi + (n + 0.5 * am) * std::numbers::pi);
}

/// One basis state of a fixed-J_z block. Spins are stored as +1/-1.
struct BasisState {
  int n = 0;
  int m = 0;
  int l = 0;
  int s1 = 1;
  int s2 = 1;
  int theta = 1;  // 1-based, as in the block table
  int jz = 0;

  bool operator==(const BasisState&) const = default;
};

struct SpinOrbit {
  int m;
  int s1;
  int s2;
};

/// (m, s1, s2) for each theta of the J_z block, for M_max = 2.
inline std::vector<SpinOrbit> theta_table(int jz) {
  switch (jz) {
    case -3: return {{-2, -1, -1}};
    case -2: return {{-2, 1, -1}, {-2, -1, 1}, {-1, -1, -1}};
    case -1: return {{-2, 1, 1}, {-1, 1, -1}, {-1, -1, 1}, {0, -1, -1}};
    case 0: return {{-1, 1, 1}, {0, 1, -1}, {0, -1, 1}, {1, -1, -1}};
    case 1: return {{0, 1, 1}, {1, 1, -1}, {1, -1, 1}, {2, -1, -1}};
    case 2: return {{1, 1, 1}, {2, 1, -1}, {2, -1, 1}};
    case 3: return {{2, 1, 1}};
    default: throw DomainError("J_z must satisfy |J_z| <= 3 for M_max = 2");
  }
}

/// Zero-based position of (n, l, theta) inside its block.
inline std::size_t block_index(int n, int l, int theta, int l_max, int d_theta) {
  return static_cast<std::size_t>((n * (l_max + 1) + l) * d_theta + theta - 1);
}

inline std::vector<BasisState> enumerate_block(int jz, const BasisCutoffs& cutoffs) {
  cutoffs.validate();
  if (cutoffs.m_max != 2) throw UnsupportedError("block tables exist only for M_max = 2");
  const auto table = theta_table(jz);
  const int d_theta = static_cast<int>(table.size());
  std::vector<BasisState> states(table.size() * (cutoffs.n_max + 1) * (cutoffs.l_max + 1));
  for (int n = 0; n <= cutoffs.n_max; ++n) {
    for (int l = 0; l <= cutoffs.l_max; ++l) {
      for (int t = 1; t <= d_theta; ++t) {
        const auto& so = table[static_cast<std::size_t>(t - 1)];
        states[block_index(n, l, t, cutoffs.l_max, d_theta)] =
            BasisState{n, so.m, l, so.s1, so.s2, t, jz};
      }
    }
  }
  return states;
}

struct BlockDimensions {
  std::size_t n_h = 0;
  /// Block sizes for J_z = -3 ... 3 (index jz + 3).
  std::array<std::size_t, 7> n_h0{};
};

inline BlockDimensions block_dimensions(const BasisCutoffs& cutoffs) {
  cutoffs.validate();
  const std::size_t radial = static_cast<std::size_t>(cutoffs.n_max + 1) *
                             static_cast<std::size_t>(cutoffs.l_max + 1);
  BlockDimensions dims;
  dims.n_h = 4 * radial * static_cast<std::size_t>(2 * cutoffs.m_max + 1);
  if (cutoffs.m_max == 2) {
    for (int jz = -3; jz <= 3; ++jz) {
      dims.n_h0[static_cast<std::size_t>(jz + 3)] = theta_table(jz).size() * radial;
    }
  }
  return dims;
}

}  // namespace blfq::basis
