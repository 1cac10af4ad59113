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


// Reference numbers for the Table I pion parameters, rounded as published.

#pragma once

#include <map>
#include <string>

#include <Eigen/Dense>

namespace fixture {

/// Effective Hamiltonian in the J_z = 0 block, MeV^2.
inline Eigen::Matrix4d reference_hamiltonian() {
  Eigen::Matrix4d h;
  h << 640323, 139872, -139872, -107450,
       139872, 346707, 174794, 139872,
       -139872, 174794, 346707, -139872,
       -107450, 139872, -139872, 640323;
  return h;
}

inline constexpr double kTrace = 1974060.0;
inline constexpr double kPionMass2 = 139.6 * 139.6;  // 19488 MeV^2
inline constexpr double kDecayPrefactor = 61.6;      // MeV
inline constexpr double kChargeRadius = 6.31e-3;     // MeV^-1
inline constexpr double kMassRadiusLarge = 2.267;    // fm^2
inline constexpr double kMassRadiusSmall = 1.134;    // fm^2

/// Two-qubit (binary) encoding of the reference Hamiltonian, MeV^2.
inline std::map<std::string, double> compact_terms() {
  return {{"II", 493515}, {"XX", 33671}, {"YY", 141122}, {"ZZ", 146807}, {"ZX", 139872}, {"XZ", -139872}};
}

/// Four-qubit Jordan-Wigner encoding of the reference Hamiltonian, MeV^2.
inline std::map<std::string, double> direct_terms() {
  return {{"IIII", 987031},   {"IIIZ", -320161}, {"ZIII", -320161}, {"IZII", -173353},
          {"IIZI", -173353}, {"IXXI", 87397},     {"IYYI", 87397},     {"XZZX", -53725},
          {"YZZY", -53725},    {"IIXX", 69936},     {"IIYY", 69936},     {"XZXI", 69936},
          {"YZYI", 69936},     {"IXZX", -69936},    {"IYZY", -69936},    {"XXII", -69936},
          {"YYII", -69936}};
}

/// Valence PDF shape f(x) = (2986 x^4.4 (1-x)^4.4)^2.
inline double reference_pdf(double x) {
  const double g = 2986.0 * std::pow(x, 4.4) * std::pow(1.0 - x, 4.4);
  return g * g;
}

}  // namespace fixture
