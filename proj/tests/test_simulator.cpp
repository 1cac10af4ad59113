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


#include "blfq/simulator.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "blfq/hamiltonian.hpp"
#include "blfq/pauli.hpp"
#include "oracles.hpp"

using namespace blfq;
using namespace blfq::sim;
using cplx = std::complex<double>;

namespace {

Eigen::MatrixXcd circuit_matrix(const Circuit& c) {
  const Eigen::Index dim = Eigen::Index{1} << c.num_qubits();
  Eigen::MatrixXcd u(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    u.col(j) = run_circuit(c, Statevector::basis_state(c.num_qubits(), static_cast<std::uint64_t>(j))).amplitudes();
  }
  return u;
}

Eigen::Vector4d random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Vector4d v(g(rng), g(rng), g(rng), g(rng));
  return v.normalized();
}

const HermitianObservable& pion_h() {
  static const auto h = hamiltonian::build_effective_hamiltonian(basis::ModelParameters{});
  return h;
}

Eigen::Matrix2cd ry(double t) {
  Eigen::Matrix2cd m;
  m << std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2);
  return m;
}

}  // namespace

TEST(statevector, starts_in_zero_state) {
  const Statevector sv(3);
  EXPECT_EQ(sv.dimension(), 8);
  EXPECT_EQ(sv[0], cplx(1.0));
  EXPECT_DOUBLE_EQ(sv.norm(), 1.0);
  EXPECT_EQ(Statevector::basis_state(3, 5)[5], cplx(1.0));
  EXPECT_THROW(Statevector::basis_state(2, 4), DimensionError);
}

TEST(gates, single_qubit_matrices_follow_label_order) {
  Circuit c(2);
  c.h(1);
  const Eigen::MatrixXcd expected = oracle::kron(oracle::pauli_matrix('X') + oracle::pauli_matrix('Z'),
                                                 Eigen::MatrixXcd::Identity(2, 2)) /
                                    std::numbers::sqrt2;
  EXPECT_LT((circuit_matrix(c) - expected).cwiseAbs().maxCoeff(), 1e-15);

  Circuit s(1);
  s.sdg(0);
  Eigen::Matrix2cd sdg;
  sdg << 1, 0, 0, cplx(0, -1);
  EXPECT_LT((circuit_matrix(s) - sdg).cwiseAbs().maxCoeff(), 1e-15);

  Circuit r(2);
  r.ry(0, 0.7);
  EXPECT_LT((circuit_matrix(r) - oracle::kron(Eigen::MatrixXcd::Identity(2, 2), ry(0.7))).cwiseAbs().maxCoeff(), 1e-15);

  Circuit x(2);
  x.x(0);
  EXPECT_EQ(run_circuit(x)[1], cplx(1.0));
}

TEST(gates, controlled_gates_truth_tables) {
  Circuit c(2);
  c.cnot(1, 0);
  for (std::uint64_t j = 0; j < 4; ++j) {
    const auto out = run_circuit(c, Statevector::basis_state(2, j));
    const std::uint64_t expected = (j & 2U) ? j ^ 1U : j;
    EXPECT_EQ(out[static_cast<Eigen::Index>(expected)], cplx(1.0));
  }
  Circuit m(3);
  m.mcx({0, 1}, 2);
  for (std::uint64_t j = 0; j < 8; ++j) {
    const auto out = run_circuit(m, Statevector::basis_state(3, j));
    const std::uint64_t expected = (j & 3U) == 3U ? j ^ 4U : j;
    EXPECT_EQ(out[static_cast<Eigen::Index>(expected)], cplx(1.0));
  }
  Circuit cr(2);
  cr.cry(0, 1, 1.1);
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
  expected(0, 0) = expected(2, 2) = 1.0;
  const auto r = ry(1.1);
  expected(1, 1) = r(0, 0);
  expected(1, 3) = r(0, 1);
  expected(3, 1) = r(1, 0);
  expected(3, 3) = r(1, 1);
  EXPECT_LT((circuit_matrix(cr) - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(gates, pauli_exponential) {
  for (const std::string label : {"XY", "ZZ", "YI", "IX"}) {
    Circuit c(2);
    c.pauli_exp(label, 0.37);
    const Eigen::MatrixXcd p = oracle::label_matrix(label);
    const Eigen::MatrixXcd expected = std::cos(0.37) * Eigen::MatrixXcd::Identity(4, 4) + cplx(0, std::sin(0.37)) * p;
    EXPECT_LT((circuit_matrix(c) - expected).cwiseAbs().maxCoeff(), 1e-15) << label;
  }
}

TEST(gates, unitary_qubit_order_is_least_significant_first) {
  Eigen::MatrixXcd u = oracle::kron(oracle::pauli_matrix('X'), ry(0.4));
  Circuit a(2);
  a.unitary({0, 1}, u);
  EXPECT_LT((circuit_matrix(a) - u).cwiseAbs().maxCoeff(), 1e-15);
  Circuit b(2);
  b.unitary({1, 0}, u);
  EXPECT_LT((circuit_matrix(b) - oracle::kron(ry(0.4), oracle::pauli_matrix('X'))).cwiseAbs().maxCoeff(), 1e-15);
  Circuit c(3);
  c.unitary({2, 0}, u);
  const Eigen::MatrixXcd e = oracle::kron(oracle::kron(ry(0.4), Eigen::MatrixXcd::Identity(2, 2)), oracle::pauli_matrix('X'));
  EXPECT_LT((circuit_matrix(c) - e).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(gates, validation) {
  Circuit c(2);
  EXPECT_THROW(c.x(2), DimensionError);
  EXPECT_THROW(c.cnot(1, 1), DimensionError);
  EXPECT_THROW(c.pauli_exp("XYZ", 0.1), DimensionError);
  EXPECT_THROW(c.unitary({0}, Eigen::MatrixXcd::Identity(4, 4)), DimensionError);
  EXPECT_THROW(Circuit(0), DimensionError);
  Circuit bad(1);
  bad.unitary({0}, 2.0 * Eigen::MatrixXcd::Identity(2, 2));
  EXPECT_THROW(run_circuit(bad), NumericalError);
  EXPECT_THROW(run_circuit(c, Statevector(3)), DimensionError);
}

TEST(direct_ansatz, stays_in_single_occupation_sector) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int k = 0; k < 50; ++k) {
    const double t1 = u(rng), t2 = u(rng), t3 = u(rng);
    const auto sv = run_circuit(direct_ansatz(t1, t2, t3));
    for (Eigen::Index j = 0; j < 16; ++j) {
      if (std::popcount(static_cast<unsigned>(j)) != 1) {
        EXPECT_LT(std::abs(sv[j]), 1e-14);
      }
      EXPECT_LT(std::abs(sv[j].imag()), 1e-14);
    }
    const double c1 = std::cos(t1 / 2), s1 = std::sin(t1 / 2), c2 = std::cos(t2 / 2), s2 = std::sin(t2 / 2),
                 c3 = std::cos(t3 / 2), s3 = std::sin(t3 / 2);
    const Eigen::Vector4d expected(s1 * s3, s1 * c3, c1 * c2, c1 * s2);
    EXPECT_LT((direct_mode_amplitudes(sv) - expected).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(ansatz, angle_inverses_reproduce_targets) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 100; ++k) {
    const Eigen::Vector4d psi = random_unit(rng);
    const auto d = direct_angles_for(psi);
    EXPECT_LT((direct_mode_amplitudes(run_circuit(direct_ansatz(d[0], d[1], d[2]))) - psi).cwiseAbs().maxCoeff(), 1e-12);
    const auto c = compact_angles_for(psi);
    const auto sv = run_circuit(compact_ansatz(c[0], c[1], c[2]));
    EXPECT_LT((sv.amplitudes() - psi.cast<cplx>()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(ansatz, direct_state_embedding_round_trip) {
  const Eigen::Vector4d v(0.1, -0.7, 0.7, 0.1);
  const Statevector sv(4, direct_state_from_modes(v.normalized()));
  EXPECT_LT((direct_mode_amplitudes(sv) - v.normalized()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(bk_circuit, maps_occupations_through_encoder) {
  const auto c = jw_to_bk_circuit(4);
  const auto p = pauli::bk_encoder(4);
  for (std::uint64_t f = 0; f < 16; ++f) {
    std::uint64_t b = 0;
    for (int i = 0; i < 4; ++i) {
      int bit = 0;
      for (int j = 0; j < 4; ++j) bit ^= p[i][j] & static_cast<int>((f >> j) & 1U);
      b |= std::uint64_t(bit) << i;
    }
    EXPECT_EQ(run_circuit(c, Statevector::basis_state(4, f))[static_cast<Eigen::Index>(b)], cplx(1.0));
  }
  EXPECT_THROW(jw_to_bk_circuit(8), UnsupportedError);
}

TEST(expectation_exact, matches_dense_matrix) {
  const auto s = pauli::embed_direct(pion_h());
  const auto m = pauli::to_complex_matrix(s);
  std::mt19937_64 rng(2);
  for (int k = 0; k < 10; ++k) {
    const auto psi = random_unit(rng);
    const auto sv = run_circuit(direct_ansatz(psi(0), psi(1), psi(2)));
    const cplx ref = sv.amplitudes().dot(m * sv.amplitudes());
    EXPECT_NEAR(expectation_exact(sv, s), ref.real(), 1e-8);
  }
  EXPECT_THROW(expectation_exact(Statevector(2), s), DimensionError);
}

TEST(expectation_exact, bk_and_jw_agree) {
  const auto jw = pauli::embed_direct(pion_h());
  const auto bk = pauli::jw_to_bk_pauli(jw);
  Circuit c = direct_ansatz(0.3, 1.9, -2.2);
  const double e_jw = expectation_exact(run_circuit(c), jw);
  c.append(jw_to_bk_circuit(4));
  EXPECT_NEAR(expectation_exact(run_circuit(c), bk), e_jw, 1e-8);
}

TEST(expectation_exact, ground_state_energy) {
  const auto sol = hamiltonian::diagonalize(pion_h());
  const Eigen::Vector4d g = sol.eigenvectors.col(0);
  const auto a = compact_angles_for(g);
  EXPECT_NEAR(expectation_exact(run_circuit(compact_ansatz(a[0], a[1], a[2])), pauli::embed_compact(pion_h())),
              sol.eigenvalues(0), 1e-7);
  const auto d = direct_angles_for(g);
  EXPECT_NEAR(expectation_exact(run_circuit(direct_ansatz(d[0], d[1], d[2])), pauli::embed_direct(pion_h())),
              sol.eigenvalues(0), 1e-7);
}

TEST(sampling, counts_are_multinomial_and_seeded) {
  Eigen::VectorXd p(4);
  p << 0.1, 0.2, 0.3, 0.4;
  const auto a = sample_counts(p, 100000, 42, 2);
  const auto b = sample_counts(p, 100000, 42, 2);
  const auto c = sample_counts(p, 100000, 43, 2);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_NE(a.counts, c.counts);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    total += a.counts[i];
    const double sd = std::sqrt(100000 * p(i) * (1 - p(i)));
    EXPECT_NEAR(static_cast<double>(a.counts[i]), 100000 * p(i), 5 * sd);
  }
  EXPECT_EQ(total, 100000u);
  EXPECT_EQ(a.by_bitstring().at("11"), a.counts[3]);
  EXPECT_THROW(sample_counts(p, 0, 1, 2), DomainError);
}

TEST(sampling, term_seeds_differ_by_label) {
  EXPECT_NE(term_seed(1, "XX"), term_seed(1, "YY"));
  EXPECT_NE(term_seed(1, "XX"), term_seed(2, "XX"));
  EXPECT_EQ(term_seed(7, "ZZ"), term_seed(7, "ZZ"));
}

TEST(sampling, large_shot_estimate_within_three_sigma) {
  const auto s = pauli::embed_compact(pion_h());
  const auto sv = run_circuit(compact_ansatz(0.4, 1.2, -0.3));
  const double exact = expectation_exact(sv, s);
  SamplingOptions o;
  o.shots_per_term = 1000000;
  o.seed = 99;
  const auto est = expectation_sampled(sv, s, o);
  EXPECT_GT(est.std_error, 0.0);
  EXPECT_NEAR(est.value, exact, 3.0 * est.std_error);
}

TEST(sampling, estimator_is_unbiased) {
  const auto s = pauli::embed_direct(pion_h());
  const auto sv = run_circuit(direct_ansatz(0.4, 1.2, -0.3));
  const double exact = expectation_exact(sv, s);
  const int trials = 200;
  double sum = 0.0, se = 0.0;
  for (int t = 0; t < trials; ++t) {
    SamplingOptions o;
    o.shots_per_term = 1024;
    o.seed = static_cast<std::uint64_t>(1000 + t);
    const auto e = expectation_sampled(sv, s, o);
    sum += e.value;
    se += e.std_error;
  }
  EXPECT_NEAR(sum / trials, exact, 4.0 * (se / trials) / std::sqrt(double(trials)));
}

TEST(sampling, measurement_basis_diagonalizes_term) {
  const auto sv = run_circuit(compact_ansatz(0.9, -0.4, 2.0));
  for (const std::string label : {"XX", "XY", "YZ", "ZY", "YY"}) {
    const pauli::PauliString p{label, 1.0};
    const double z = parity_expectation(measurement_basis(sv, p).probabilities(), p.support());
    EXPECT_NEAR(z, pauli_expectation(sv, p), 1e-14) << label;
  }
}

TEST(readout, noise_then_inverse_recovers_distribution) {
  Eigen::VectorXd p(8);
  p << 0.05, 0.1, 0.15, 0.2, 0.01, 0.09, 0.3, 0.1;
  ReadoutNoiseModel m{{0.02, 0.05, 0.03}, {0.04, 0.01, 0.06}};
  const Eigen::VectorXd noisy = apply_readout_noise(p, m);
  EXPECT_NEAR(noisy.sum(), 1.0, 1e-15);
  ShotRecord rec{3, std::vector<std::uint64_t>(8), 0, 0};
  const double scale = 1e12;
  for (int i = 0; i < 8; ++i) {
    rec.counts[static_cast<std::size_t>(i)] = static_cast<std::uint64_t>(std::llround(noisy(i) * scale));
    rec.total += rec.counts[static_cast<std::size_t>(i)];
  }
  EXPECT_LT((mitigate_readout(rec, m) - p).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(readout, single_qubit_flip_probabilities) {
  Eigen::VectorXd p(2);
  p << 1.0, 0.0;
  const auto n = apply_readout_noise(p, ReadoutNoiseModel::uniform(1, 0.1, 0.2));
  EXPECT_DOUBLE_EQ(n(1), 0.1);
  p << 0.0, 1.0;
  EXPECT_DOUBLE_EQ(apply_readout_noise(p, ReadoutNoiseModel::uniform(1, 0.1, 0.2))(0), 0.2);
}

TEST(readout, validation) {
  EXPECT_THROW(ReadoutNoiseModel::symmetric(2, 1.0), DomainError);
  EXPECT_THROW(ReadoutNoiseModel::symmetric(2, -0.1), DomainError);
  ReadoutNoiseModel m = ReadoutNoiseModel::symmetric(2, 0.5);
  ShotRecord rec{2, {1, 1, 1, 1}, 4, 0};
  EXPECT_THROW(mitigate_readout(rec, m), DomainError);
  EXPECT_THROW(mitigate_readout(rec, ReadoutNoiseModel::symmetric(3, 0.1)), DimensionError);
  EXPECT_TRUE(ReadoutNoiseModel::symmetric(2, 0.0).is_noiseless());
}

TEST(readout, mitigation_reduces_bias_on_average) {
  const auto s = pauli::embed_compact(pion_h());
  const auto sv = run_circuit(compact_ansatz(0.4, 1.2, -0.3));
  const double exact = expectation_exact(sv, s);
  double raw = 0.0, fixed = 0.0;
  for (int t = 0; t < 20; ++t) {
    SamplingOptions o;
    o.seed = static_cast<std::uint64_t>(t);
    o.noise = ReadoutNoiseModel::symmetric(2, 0.05);
    raw += expectation_sampled(sv, s, o).value;
    o.mitigate = true;
    fixed += expectation_sampled(sv, s, o).value;
  }
  EXPECT_LT(std::abs(fixed / 20 - exact), std::abs(raw / 20 - exact));
}

TEST(overlap, householder_reflection) {
  std::mt19937_64 rng(8);
  const Eigen::Vector4d v = random_unit(rng);
  const auto r = householder_to_all_ones(v);
  EXPECT_LT((r * r.transpose() - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((r * v - Eigen::Vector4d(0, 0, 0, 1)).cwiseAbs().maxCoeff(), 1e-14);
  const Eigen::Vector4d e(0, 0, 0, 1);
  EXPECT_EQ((householder_to_all_ones(e) - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(overlap, ancilla_probability_gives_overlap_magnitude) {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 20; ++k) {
    const Eigen::Vector4d psi = random_unit(rng);
    const Eigen::Vector4d v = random_unit(rng);
    const auto a = compact_angles_for(psi);
    EXPECT_NEAR(overlap_magnitude(compact_ansatz(a[0], a[1], a[2]), v), std::abs(v.dot(psi)), 1e-12);
    const auto d = direct_angles_for(psi);
    const Eigen::VectorXd v16 = direct_state_from_modes(v).real();
    EXPECT_NEAR(overlap_magnitude(direct_ansatz(d[0], d[1], d[2]), v16), std::abs(v.dot(psi)), 1e-12);
  }
  EXPECT_THROW(overlap_magnitude(compact_ansatz(0, 0, 0), Eigen::Vector4d(1, 1, 0, 0)), DomainError);
  EXPECT_THROW(overlap_magnitude(compact_ansatz(0, 0, 0), Eigen::Vector2d(1, 0)), DimensionError);
}
