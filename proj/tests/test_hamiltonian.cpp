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


#include "blfq/hamiltonian.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace blfq;
using namespace blfq::hamiltonian;

namespace {

Eigen::Matrix4d pion_h() { return Eigen::Matrix4d(build_effective_hamiltonian(ModelParameters{}).matrix); }

Eigen::Matrix4d mirror() {
  Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
  s(0, 3) = 1;
  s(1, 2) = -1;
  s(2, 1) = -1;
  s(3, 0) = 1;
  return s;
}

}  // namespace

TEST(h0, diagonal_values) {
  const auto h0 = build_h0_diagonal(ModelParameters{});
  const double tot = 674.02 * 674.02;
  EXPECT_NEAR(h0.matrix(0, 0), tot + 5.0 * 227.0 * 227.0, 1e-6);
  EXPECT_NEAR(h0.matrix(1, 1), tot + 3.0 * 227.0 * 227.0, 1e-6);
  EXPECT_NEAR(h0.matrix(0, 0), 711947.96, 1e-3);
  EXPECT_NEAR(h0.matrix(2, 2), 608889.96, 1e-3);
  EXPECT_DOUBLE_EQ(h0.matrix(3, 3), h0.matrix(0, 0));
  EXPECT_EQ((h0.matrix - Eigen::MatrixXd(h0.matrix.diagonal().asDiagonal())).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(h0.units, "MeV^2");
}

TEST(njl, vanishes_without_coupling) {
  ModelParameters p;
  p.njl_coupling = 0.0;
  const auto njl = build_njl_matrix(p, basis::compute_exponents(p));
  EXPECT_EQ(njl.matrix.cwiseAbs().maxCoeff(), 0.0);
  const auto h = build_effective_hamiltonian(p);
  EXPECT_EQ((h.matrix - build_h0_diagonal(p).matrix).cwiseAbs().maxCoeff(), 0.0);
}

TEST(njl, linear_in_coupling) {
  ModelParameters p;
  const auto ex = basis::compute_exponents(p);
  const auto a = build_njl_matrix(p, ex).matrix;
  p.njl_coupling *= 3.0;
  const auto b = build_njl_matrix(p, ex).matrix;
  EXPECT_LT((b - 3.0 * a).cwiseAbs().maxCoeff(), 1e-9 * b.cwiseAbs().maxCoeff());
}

TEST(njl, corner_entry_from_longitudinal_oracle) {
  const ModelParameters p;
  const auto ex = basis::compute_exponents(p);
  const double l00 = oracle::longitudinal(0, 0, 0, ex.alpha, ex.beta);
  const double expected = -8.0 * p.njl_coupling * std::pow(p.b(), 4) / std::numbers::pi * l00 * l00;
  const auto njl = build_njl_matrix(p, ex).matrix;
  EXPECT_NEAR(njl(0, 0), expected, 1e-9 * std::abs(expected));
  EXPECT_NEAR(njl(3, 3), expected, 1e-9 * std::abs(expected));
}

TEST(effective_hamiltonian, matches_reference_entrywise) {
  const auto h = pion_h();
  const auto ref = fixture::reference_hamiltonian();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(h(i, j), ref(i, j), 2e-4 * std::abs(ref(i, j))) << i << "," << j;
  EXPECT_NEAR(h.trace(), fixture::kTrace, 1e-4 * fixture::kTrace);
}

TEST(effective_hamiltonian, symmetric_and_mirror_invariant) {
  const auto h = pion_h();
  EXPECT_LT((h - h.transpose()).cwiseAbs().maxCoeff(), 1e-9);
  const auto s = mirror();
  EXPECT_LT((s * h * s - h).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(effective_hamiltonian, rejects_unsupported_blocks) {
  EXPECT_THROW(build_effective_hamiltonian(ModelParameters{}, basis::BasisCutoffs{1, 2, 0}), UnsupportedError);
  EXPECT_THROW(build_effective_hamiltonian(ModelParameters{}, {}, 1), UnsupportedError);
  ModelParameters bad;
  bad.quark_mass = 0.0;
  EXPECT_THROW(build_effective_hamiltonian(bad), DomainError);
}

TEST(diagonalize, spectrum_matches_mirror_oracle) {
  const auto h = pion_h();
  const auto sol = diagonalize({Eigen::MatrixXd(h), "MeV^2"});
  const auto ref = oracle::mirror_block_spectrum(h);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(sol.eigenvalues(k), ref[k], 1e-9 * std::abs(ref[3]));
  EXPECT_NEAR(sol.eigenvalues(0), fixture::kPionMass2, 1e-3 * fixture::kPionMass2);
}

TEST(diagonalize, reference_matrix_second_level) {
  const auto ref = oracle::mirror_block_spectrum(fixture::reference_hamiltonian());
  EXPECT_NEAR(ref[1], 521501.0, 1.0);
  const auto sol = diagonalize({Eigen::MatrixXd(pion_h()), "MeV^2"});
  EXPECT_NEAR(sol.eigenvalues(1), ref[1], 1e-3 * ref[1]);
}

TEST(diagonalize, ground_state_shape) {
  const auto sol = diagonalize(build_effective_hamiltonian(ModelParameters{}));
  const Eigen::VectorXd v = sol.eigenvectors.col(0);
  EXPECT_NEAR(v(0), 0.34, 0.005);
  EXPECT_NEAR(v(1), -0.62, 0.005);
  EXPECT_NEAR(v(2), 0.62, 0.005);
  EXPECT_NEAR(v(3), 0.34, 0.005);
  EXPECT_NEAR(v.norm(), 1.0, 1e-12);
  // The ground state lies in the mirror-even sector.
  EXPECT_LT((mirror() * Eigen::Vector4d(v) - Eigen::Vector4d(v)).norm(), 1e-10);
}

TEST(diagonalize, eigen_pairs_are_consistent) {
  const auto h = build_effective_hamiltonian(ModelParameters{});
  const auto sol = diagonalize(h);
  for (int k = 0; k < 4; ++k) {
    const Eigen::VectorXd v = sol.eigenvectors.col(k);
    EXPECT_LT((h.matrix * v - sol.eigenvalues(k) * v).norm(), 1e-9 * sol.eigenvalues(3));
    EXPECT_NEAR(h.expectation(v), sol.eigenvalues(k), 1e-9 * sol.eigenvalues(3));
  }
  EXPECT_LT((sol.eigenvectors.transpose() * sol.eigenvectors - Eigen::MatrixXd::Identity(4, 4)).norm(), 1e-12);
}

TEST(diagonalize, basis_reordering_leaves_spectrum_unchanged) {
  const auto h = build_effective_hamiltonian(ModelParameters{});
  const auto base = diagonalize(h).eigenvalues;
  std::array<int, 4> perm{0, 1, 2, 3};
  do {
    Eigen::PermutationMatrix<Eigen::Dynamic> p(4);
    for (int i = 0; i < 4; ++i) p.indices()(i) = perm[i];
    const Eigen::MatrixXd ph = p * h.matrix * p.transpose();
    const auto e = diagonalize({ph, "MeV^2"}).eigenvalues;
    EXPECT_LT((e - base).cwiseAbs().maxCoeff(), 1e-8);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST(diagonalize, free_spectrum_without_coupling) {
  ModelParameters p;
  p.njl_coupling = 0.0;
  const auto e = diagonalize(build_effective_hamiltonian(p)).eigenvalues;
  EXPECT_NEAR(e(0), 608889.96, 1e-3);
  EXPECT_NEAR(e(1), 608889.96, 1e-3);
  EXPECT_NEAR(e(2), 711947.96, 1e-3);
  EXPECT_NEAR(e(3), 711947.96, 1e-3);
}

TEST(diagonalize, rejects_asymmetric_input) {
  Eigen::MatrixXd m(2, 2);
  m << 1, 2, 3, 4;
  EXPECT_THROW(diagonalize({m, ""}), DomainError);
  EXPECT_THROW(diagonalize({Eigen::MatrixXd(2, 3), ""}), DimensionError);
}

TEST(canonicalize_sign, largest_component_positive_ties_to_last) {
  Eigen::VectorXd v(3);
  v << 0.1, -0.9, 0.2;
  canonicalize_sign(v);
  EXPECT_GT(v(1), 0.0);
  Eigen::VectorXd w(4);
  w << 0.5, -0.5, 0.5, -0.5;
  canonicalize_sign(w);
  EXPECT_GT(w(3), 0.0);
}
