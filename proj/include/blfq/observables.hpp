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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "blfq/basis.hpp"
#include "blfq/errors.hpp"
#include "blfq/observable.hpp"
#include "blfq/pauli.hpp"
#include "blfq/quadrature.hpp"
#include "blfq/simulator.hpp"
#include "blfq/talmi_moshinsky.hpp"
#include "blfq/vqe.hpp"

namespace blfq::observables {

using basis::BasisCutoffs;
using basis::BasisState;
using basis::LongitudinalExponents;
using basis::ModelParameters;

/// hbar c in MeV fm.
inline constexpr double kHbarC = 197.327;

/// Everything an observable needs to know about the basis.
struct Context {
  ModelParameters params;
  LongitudinalExponents exponents;
  BasisCutoffs cutoffs;
  int jz = 0;
  std::vector<BasisState> states;

  static Context make(const ModelParameters& p, const BasisCutoffs& c = {}, int jz = 0) {
    return {p, basis::compute_exponents(p), c, jz, basis::enumerate_block(jz, c)};
  }

  Eigen::Index dimension() const { return static_cast<Eigen::Index>(states.size()); }

  void check(const Eigen::VectorXd& psi) const {
    if (psi.size() != dimension()) throw DimensionError("wave function size differs from the block size");
  }
};

// ---------------------------------------------------------------- decay ----

/// 2 sqrt(N_c) b / sqrt(pi) * sqrt(2) * L_0(1/2, 1/2), in MeV.
inline double decay_prefactor(const Context& ctx) {
  return 2.0 * std::sqrt(static_cast<double>(ctx.params.color_number)) * ctx.params.b() /
         std::sqrt(std::numbers::pi) * std::numbers::sqrt2 *
         basis::longitudinal_integral(0, 0.5, 0.5, ctx.exponents.alpha, ctx.exponents.beta);
}

/// Reference vector v with f_P = prefactor * |<v|psi>| in the default block.
inline Eigen::Vector4d decay_reference_vector() {
  const double r = 1.0 / std::numbers::sqrt2;
  return {0.0, r, -r, 0.0};
}

/// |f_P| in MeV from the explicit basis sum over m = 0, antialigned spins.
inline double decay_constant(const Eigen::VectorXd& psi, const Context& ctx) {
  ctx.check(psi);
  double sum = 0.0;
  for (std::size_t i = 0; i < ctx.states.size(); ++i) {
    const auto& s = ctx.states[i];
    if (s.m != 0 || s.s1 == s.s2) continue;
    const double sign = (s.n % 2 ? -1.0 : 1.0) * (s.s1 > 0 ? 1.0 : -1.0);
    sum += sign * basis::longitudinal_integral(s.l, 0.5, 0.5, ctx.exponents.alpha, ctx.exponents.beta) *
           psi(static_cast<Eigen::Index>(i));
  }
  return std::abs(2.0 * std::sqrt(static_cast<double>(ctx.params.color_number)) * ctx.params.b() /
                  std::sqrt(std::numbers::pi) * sum);
}

/// Encodes a block-basis observable on qubits.
inline pauli::PauliSum encode(const HermitianObservable& obs, vqe::Encoding e) {
  switch (e) {
    case vqe::Encoding::Direct: return pauli::embed_direct(obs);
    case vqe::Encoding::Compact: return pauli::embed_compact(obs);
    case vqe::Encoding::BravyiKitaev: return pauli::jw_to_bk_pauli(pauli::embed_direct(obs));
  }
  throw UnsupportedError("unknown encoding");
}

/// |v><v| as a Pauli sum.
inline pauli::PauliSum decay_projector(vqe::Encoding e) {
  const Eigen::Vector4d v = decay_reference_vector();
  return encode({v * v.transpose(), ""}, e);
}

// ---------------------------------------------------------- mass radius ----

/// (3 / 2b^2) I_m in MeV^-2.
inline HermitianObservable mass_radius_matrix(const Context& ctx) {
  const auto& st = ctx.states;
  const Eigen::Index d = ctx.dimension();
  Eigen::MatrixXd im = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const auto& a = st[static_cast<std::size_t>(i)];
      const auto& b = st[static_cast<std::size_t>(j)];
      if (a.m != b.m || a.l != b.l || a.s1 != b.s1 || a.s2 != b.s2) continue;
      const double am = std::abs(b.m);
      const double n = b.n;
      if (a.n == b.n) im(i, j) = 2.0 * n + am + 1.0;
      if (a.n == b.n - 1) im(i, j) = std::sqrt(n * (n + am));
      if (a.n == b.n + 1) im(i, j) = std::sqrt((n + 1.0) * (n + am + 1.0));
    }
  }
  const double b = ctx.params.b();
  return {1.5 / (b * b) * im, "MeV^-2"};
}

inline HermitianObservable to_fm2(const HermitianObservable& mev) { return {mev.matrix * kHbarC * kHbarC, "fm^2"}; }

struct MassRadius {
  double r2_fm2;
  double r_fm;
};

inline MassRadius mass_radius(const Eigen::VectorXd& psi, const Context& ctx) {
  ctx.check(psi);
  const double r2 = to_fm2(mass_radius_matrix(ctx)).expectation(psi);
  return {r2, std::sqrt(r2)};
}

// ------------------------------------------------------------------ PDF ----

struct PdfDensity {
  Eigen::MatrixXd rho;  // indexed by l', l
  std::vector<double> x;
  std::vector<double> f;
};

inline Eigen::MatrixXd longitudinal_density(const Eigen::VectorXd& psi, const Context& ctx) {
  ctx.check(psi);
  const int nl = ctx.cutoffs.l_max + 1;
  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(nl, nl);
  for (std::size_t i = 0; i < ctx.states.size(); ++i) {
    for (std::size_t j = 0; j < ctx.states.size(); ++j) {
      const auto& a = ctx.states[i];
      const auto& b = ctx.states[j];
      if (a.n != b.n || a.m != b.m || a.s1 != b.s1 || a.s2 != b.s2) continue;
      rho(a.l, b.l) += psi(static_cast<Eigen::Index>(i)) * psi(static_cast<Eigen::Index>(j));
    }
  }
  return rho;
}

inline double pdf_value(const Eigen::MatrixXd& rho, double x, const LongitudinalExponents& ex) {
  double f = 0.0;
  for (Eigen::Index a = 0; a < rho.rows(); ++a) {
    for (Eigen::Index b = 0; b < rho.cols(); ++b) {
      if (rho(a, b) == 0.0) continue;
      f += rho(a, b) * basis::chi(x, static_cast<int>(a), ex.alpha, ex.beta) *
           basis::chi(x, static_cast<int>(b), ex.alpha, ex.beta);
    }
  }
  return f / (4.0 * std::numbers::pi);
}

/// Antiquark distribution f(1 - x).
inline double antiquark_pdf_value(const Eigen::MatrixXd& rho, double x, const LongitudinalExponents& ex) {
  return pdf_value(rho, 1.0 - x, ex);
}

/// Uniform interior grid x_k = k / (points + 1).
inline std::vector<double> default_x_grid(int points = 99) {
  std::vector<double> g;
  for (int k = 1; k <= points; ++k) g.push_back(static_cast<double>(k) / (points + 1));
  return g;
}

inline PdfDensity pdf(const Eigen::VectorXd& psi, const Context& ctx, const std::vector<double>& x_grid) {
  PdfDensity out{longitudinal_density(psi, ctx), x_grid, {}};
  for (double x : x_grid) out.f.push_back(pdf_value(out.rho, x, ctx.exponents));
  return out;
}

/// Integral of f over (0, 1) by 128-point Gauss-Legendre.
inline double pdf_norm(const Eigen::MatrixXd& rho, const LongitudinalExponents& ex) {
  return gauss_legendre_128().integrate([&](double x) { return pdf_value(rho, x, ex); });
}

// ---------------------------------------------------------- form factor ----

struct Charges {
  double quark = 2.0 / 3.0;
  double antiquark = -1.0 / 3.0;
};

/// Matrix of C-tilde(Q^2) over the block, via the Talmi-Moshinsky expansion.
inline HermitianObservable form_factor_matrix(double q2, const Context& ctx, const Charges& e = {}) {
  if (!(q2 >= 0.0)) throw DomainError("Q^2 must be nonnegative");
  const auto& st = ctx.states;
  const Eigen::Index d = ctx.dimension();
  const double b2 = ctx.params.b() * ctx.params.b();
  const auto& gl = gauss_legendre_128();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i; j < d; ++j) {
      const auto& a = st[static_cast<std::size_t>(i)];
      const auto& b = st[static_cast<std::size_t>(j)];
      if (a.m != b.m || a.s1 != b.s1 || a.s2 != b.s2) continue;
      double total = 0.0;
      for (const auto& t : tm::tm_expansion(a.n, -a.m, b.n, b.m)) {
        if (t.big_m != 0 || t.mb != 0 || t.coefficient == 0.0) continue;
        const double sign = t.big_n % 2 ? -1.0 : 1.0;
        const unsigned nb = static_cast<unsigned>(t.nb);
        const double integral = gl.integrate([&](double x) {
          const double yq = (1.0 - x) * q2 / (2.0 * x * b2);
          const double yqb = x * q2 / (2.0 * (1.0 - x) * b2);
          const double g = e.quark * std::exp(-0.5 * yq) * std::laguerre(nb, yq) -
                           e.antiquark * std::exp(-0.5 * yqb) * std::laguerre(nb, yqb);
          return basis::chi(x, a.l, ctx.exponents.alpha, ctx.exponents.beta) *
                 basis::chi(x, b.l, ctx.exponents.alpha, ctx.exponents.beta) * g / (4.0 * std::numbers::pi);
        });
        total += t.coefficient * sign * integral;
      }
      c(i, j) = total;
      c(j, i) = total;
    }
  }
  if (!c.allFinite()) throw NumericalError("form factor quadrature produced a non-finite value");
  return {c, "dimensionless"};
}

struct FormFactorPoint {
  double q2;
  double value;
};

using FormFactorCurve = std::vector<FormFactorPoint>;

/// Step used for the slope at the origin.
inline double slope_step(const ModelParameters& p) { return p.b() * p.b() / 100.0; }

/// 0, h/2, h, then 1..points b^2 in steps of b^2 (points = 100 reaches 100 b^2).
inline std::vector<double> default_q2_grid(const ModelParameters& p, int points = 100) {
  const double b2 = p.b() * p.b();
  const double h = slope_step(p);
  std::vector<double> g{0.0, 0.5 * h, h};
  for (int k = 1; k <= points; ++k) g.push_back(k * b2);
  return g;
}

inline FormFactorCurve elastic_form_factor(const Eigen::VectorXd& psi, const Context& ctx,
                                           const std::vector<double>& q2_grid, const Charges& e = {}) {
  ctx.check(psi);
  FormFactorCurve out;
  for (double q2 : q2_grid) out.push_back({q2, form_factor_matrix(q2, ctx, e).expectation(psi)});
  return out;
}

/// sqrt(-6 F'(0)) in MeV^-1. The slope comes from Richardson extrapolation of
/// the forward differences at the two smallest positive Q^2 of the curve.
inline double charge_radius(const FormFactorCurve& curve) {
  std::optional<double> f0;
  std::vector<FormFactorPoint> pos;
  for (const auto& p : curve) {
    if (p.q2 == 0.0) f0 = p.value;
    if (p.q2 > 0.0) pos.push_back(p);
  }
  if (!f0 || pos.size() < 2) throw DomainError("charge radius needs F(0) and two points near the origin");
  std::sort(pos.begin(), pos.end(), [](const auto& a, const auto& b) { return a.q2 < b.q2; });
  const auto& s = pos[0];
  const auto& l = pos[1];
  const double ds = (s.value - *f0) / s.q2;
  const double dl = (l.value - *f0) / l.q2;
  const double slope = (l.q2 * ds - s.q2 * dl) / (l.q2 - s.q2);
  return std::sqrt(std::max(0.0, -6.0 * slope));
}

// ------------------------------------------------------ qubit estimates ----

struct Measured {
  double value = 0.0;
  double std_error = 0.0;
};

/// <obs> on the ansatz state, either exactly or from Pauli-term sampling.
inline Measured measure(const HermitianObservable& obs, const sim::Statevector& state, vqe::Encoding e,
                        const std::optional<sim::SamplingOptions>& sampling) {
  const auto sum = encode(obs, e);
  if (!sampling) return {sim::expectation_exact(state, sum), 0.0};
  const auto est = sim::expectation_sampled(state, sum, *sampling);
  return {est.value, est.std_error};
}

}  // namespace blfq::observables
