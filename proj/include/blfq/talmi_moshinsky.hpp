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
#include <complex>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>
#include <vector>

#include "blfq/basis.hpp"
#include "blfq/errors.hpp"
#include "blfq/quadrature.hpp"

namespace blfq::tm {

/// Largest radial and magnetic quantum numbers accepted as TM input.
inline constexpr int kMaxRadial = 2;
inline constexpr int kMaxMagnetic = 2;

inline int oscillator_energy(int n, int m) { return 2 * n + std::abs(m); }

inline bool conserves(int n1, int m1, int n2, int m2, int big_n, int big_m, int nb, int mb) {
  return big_m + mb == m1 + m2 &&
         oscillator_energy(big_n, big_m) + oscillator_energy(nb, mb) == oscillator_energy(n1, m1) + oscillator_energy(n2, m2);
}

namespace detail {

inline void check_scope(int n1, int m1, int n2, int m2) {
  if (n1 < 0 || n2 < 0 || n1 > kMaxRadial || n2 > kMaxRadial || std::abs(m1) > kMaxMagnetic ||
      std::abs(m2) > kMaxMagnetic) {
    throw UnsupportedError("Talmi-Moshinsky coefficients are tabulated for n <= 2, |m| <= 2");
  }
}

// Projection by 4D Gauss-Hermite quadrature. With b = 1 the product of the
// four oscillator functions carries exactly exp(-|q1|^2 - |q2|^2), so the
// rule integrates the remaining polynomial exactly.
inline double project(int n1, int m1, int n2, int m2, int big_n, int big_m, int nb, int mb) {
  static const QuadratureRule gh = gauss_hermite(12);
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  std::complex<double> acc = 0.0;
  for (std::size_t a = 0; a < gh.size(); ++a) {
    for (std::size_t b = 0; b < gh.size(); ++b) {
      const double q1x = gh.nodes[a], q1y = gh.nodes[b];
      const auto f1 = basis::ho_momentum(n1, m1, q1x, q1y, 1.0);
      const double w1 = gh.weights[a] * gh.weights[b] * std::exp(q1x * q1x + q1y * q1y);
      for (std::size_t c = 0; c < gh.size(); ++c) {
        for (std::size_t d = 0; d < gh.size(); ++d) {
          const double q2x = gh.nodes[c], q2y = gh.nodes[d];
          const double w = w1 * gh.weights[c] * gh.weights[d] * std::exp(q2x * q2x + q2y * q2y);
          const auto f2 = basis::ho_momentum(n2, m2, q2x, q2y, 1.0);
          const auto big = basis::ho_momentum(big_n, big_m, (q1x + q2x) * inv_sqrt2, (q1y + q2y) * inv_sqrt2, 1.0);
          const auto rel = basis::ho_momentum(nb, mb, (q1x - q2x) * inv_sqrt2, (q1y - q2y) * inv_sqrt2, 1.0);
          acc += w * std::conj(big * rel) * f1 * f2;
        }
      }
    }
  }
  const double norm = 1.0 / std::pow(2.0 * std::numbers::pi, 4);
  acc *= norm;
  if (std::abs(acc.imag()) > 1e-10) throw NumericalError("Talmi-Moshinsky projection has an imaginary part");
  return acc.real();
}

}  // namespace detail

/// Coefficient C in phi_{n1 m1}(q1) phi_{n2 m2}(q2) = sum C phi_{N M}(P) phi_{nb mb}(p),
/// with P = (q1 + q2)/sqrt2 and p = (q1 - q2)/sqrt2. Coefficients violating
/// conservation of M + mb or of the oscillator energy are exactly zero.
inline double tm_coefficient(int n1, int m1, int n2, int m2, int big_n, int big_m, int nb, int mb) {
  detail::check_scope(n1, m1, n2, m2);
  if (big_n < 0 || nb < 0) throw DomainError("radial quantum numbers must be nonnegative");
  if (!conserves(n1, m1, n2, m2, big_n, big_m, nb, mb)) return 0.0;
  static std::mutex mu;
  static std::map<std::tuple<int, int, int, int, int, int, int, int>, double> cache;
  const auto key = std::make_tuple(n1, m1, n2, m2, big_n, big_m, nb, mb);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  double c = detail::project(n1, m1, n2, m2, big_n, big_m, nb, mb);
  if (std::abs(c) < 1e-13) c = 0.0;
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, c);
  return c;
}

struct TmEntry {
  int big_n;
  int big_m;
  int nb;
  int mb;
  double coefficient;
};

/// Every target state allowed by the selection rules, with its coefficient.
inline std::vector<TmEntry> tm_expansion(int n1, int m1, int n2, int m2) {
  detail::check_scope(n1, m1, n2, m2);
  const int energy = oscillator_energy(n1, m1) + oscillator_energy(n2, m2);
  std::vector<TmEntry> out;
  for (int big_m = -energy; big_m <= energy; ++big_m) {
    const int mb = m1 + m2 - big_m;
    for (int big_n = 0; 2 * big_n + std::abs(big_m) <= energy; ++big_n) {
      const int rest = energy - oscillator_energy(big_n, big_m) - std::abs(mb);
      if (rest < 0 || rest % 2 != 0) continue;
      const int nb = rest / 2;
      out.push_back({big_n, big_m, nb, mb, tm_coefficient(n1, m1, n2, m2, big_n, big_m, nb, mb)});
    }
  }
  return out;
}

}  // namespace blfq::tm
