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
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "blfq/errors.hpp"
#include "blfq/pauli.hpp"

namespace blfq::sim {

using cplx = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;

enum class GateKind { X, H, Sdg, Ry, Cnot, ControlledRy, MultiControlledX, PauliExponential, Unitary };

struct Gate {
  GateKind kind = GateKind::X;
  int target = 0;
  std::vector<int> controls;
  double angle = 0.0;
  std::string pauli;            // PauliExponential
  std::vector<int> qubits;      // Unitary, listed from least significant
  Eigen::MatrixXcd matrix;      // Unitary
};

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int n_qubits) : n_(n_qubits) {
    if (n_qubits < 1 || n_qubits > 24) throw DimensionError("circuit needs 1..24 qubits");
  }

  int num_qubits() const { return n_; }
  const std::vector<Gate>& gates() const { return gates_; }

  Circuit& x(int q) { return push(make(GateKind::X, q)); }
  Circuit& h(int q) { return push(make(GateKind::H, q)); }
  Circuit& sdg(int q) { return push(make(GateKind::Sdg, q)); }
  Circuit& ry(int q, double theta) { return push(make(GateKind::Ry, q, {}, theta)); }
  Circuit& cnot(int c, int t) { return push(make(GateKind::Cnot, t, {c})); }
  Circuit& cry(int c, int t, double theta) { return push(make(GateKind::ControlledRy, t, {c}, theta)); }
  Circuit& mcx(std::vector<int> controls, int t) {
    return push(make(GateKind::MultiControlledX, t, std::move(controls)));
  }
  /// exp(i theta P).
  Circuit& pauli_exp(const std::string& label, double theta) {
    pauli::validate_label(label);
    if (static_cast<int>(label.size()) != n_) throw DimensionError("Pauli label length mismatch");
    Gate g = make(GateKind::PauliExponential, 0, {}, theta);
    g.pauli = label;
    return push(std::move(g));
  }
  Circuit& unitary(std::vector<int> qubits, Eigen::MatrixXcd u) {
    if (u.rows() != (Eigen::Index{1} << qubits.size()) || u.cols() != u.rows()) {
      throw DimensionError("unitary size must be 2^k for k qubits");
    }
    Gate g = make(GateKind::Unitary, 0);
    g.qubits = std::move(qubits);
    g.matrix = std::move(u);
    return push(std::move(g));
  }
  /// Same gates on a register with extra (higher) qubits.
  Circuit widened(int n_qubits) const {
    if (n_qubits < n_) throw DimensionError("cannot narrow a circuit");
    Circuit out(n_qubits);
    for (Gate g : gates_) {
      if (g.kind == GateKind::PauliExponential) g.pauli.insert(0, static_cast<std::size_t>(n_qubits - n_), 'I');
      out.gates_.push_back(std::move(g));
    }
    return out;
  }

  Circuit& append(const Circuit& other) {
    if (other.n_ != n_) throw DimensionError("cannot append circuits of different width");
    for (const auto& g : other.gates_) gates_.push_back(g);
    return *this;
  }

 private:
  static Gate make(GateKind kind, int target, std::vector<int> controls = {}, double angle = 0.0) {
    Gate g;
    g.kind = kind;
    g.target = target;
    g.controls = std::move(controls);
    g.angle = angle;
    return g;
  }

  Circuit& push(Gate g) {
    auto check = [this](int q) {
      if (q < 0 || q >= n_) throw DimensionError("gate qubit index out of range");
    };
    if (g.kind != GateKind::PauliExponential && g.kind != GateKind::Unitary) check(g.target);
    for (int c : g.controls) {
      check(c);
      if (c == g.target) throw DimensionError("control and target must differ");
    }
    for (int q : g.qubits) check(q);
    gates_.push_back(std::move(g));
    return *this;
  }

  int n_ = 0;
  std::vector<Gate> gates_;
};

class Statevector {
 public:
  Statevector() = default;
  /// |0...0> on n qubits.
  explicit Statevector(int n_qubits) : n_(n_qubits), amp_(Eigen::VectorXcd::Zero(Eigen::Index{1} << n_qubits)) {
    if (n_qubits < 1 || n_qubits > 24) throw DimensionError("statevector needs 1..24 qubits");
    amp_(0) = 1.0;
  }
  Statevector(int n_qubits, Eigen::VectorXcd amplitudes) : n_(n_qubits), amp_(std::move(amplitudes)) {
    if (amp_.size() != (Eigen::Index{1} << n_qubits)) throw DimensionError("amplitude count must be 2^n");
  }

  static Statevector basis_state(int n_qubits, std::uint64_t index) {
    Statevector s(n_qubits);
    if (index >= static_cast<std::uint64_t>(s.dimension())) throw DimensionError("basis index out of range");
    s.amp_(0) = 0.0;
    s.amp_(static_cast<Eigen::Index>(index)) = 1.0;
    return s;
  }

  int num_qubits() const { return n_; }
  Eigen::Index dimension() const { return amp_.size(); }
  const Eigen::VectorXcd& amplitudes() const { return amp_; }
  Eigen::VectorXcd& amplitudes() { return amp_; }
  cplx operator[](Eigen::Index i) const { return amp_(i); }
  double norm() const { return amp_.norm(); }

  Eigen::VectorXd probabilities() const { return amp_.cwiseAbs2(); }

 private:
  int n_ = 0;
  Eigen::VectorXcd amp_;
};

namespace detail {

inline void apply_single(Eigen::VectorXcd& a, int target, const Matrix2c& u, std::uint64_t control_mask) {
  const std::uint64_t bit = std::uint64_t{1} << target;
  const auto dim = static_cast<std::uint64_t>(a.size());
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & bit) || (i & control_mask) != control_mask) continue;
    const auto i0 = static_cast<Eigen::Index>(i);
    const auto i1 = static_cast<Eigen::Index>(i | bit);
    const cplx a0 = a(i0);
    const cplx a1 = a(i1);
    a(i0) = u(0, 0) * a0 + u(0, 1) * a1;
    a(i1) = u(1, 0) * a0 + u(1, 1) * a1;
  }
}

inline std::uint64_t mask_of(const std::vector<int>& qubits) {
  std::uint64_t m = 0;
  for (int q : qubits) m |= std::uint64_t{1} << q;
  return m;
}

inline void apply_unitary(Eigen::VectorXcd& a, const std::vector<int>& qubits, const Eigen::MatrixXcd& u) {
  const std::uint64_t mask = mask_of(qubits);
  const auto k = qubits.size();
  const std::uint64_t sub = std::uint64_t{1} << k;
  Eigen::VectorXcd buf(static_cast<Eigen::Index>(sub));
  std::vector<std::uint64_t> idx(sub);
  for (std::uint64_t base = 0; base < static_cast<std::uint64_t>(a.size()); ++base) {
    if (base & mask) continue;
    for (std::uint64_t s = 0; s < sub; ++s) {
      std::uint64_t full = base;
      for (std::size_t b = 0; b < k; ++b) {
        if ((s >> b) & 1U) full |= std::uint64_t{1} << qubits[b];
      }
      idx[s] = full;
      buf(static_cast<Eigen::Index>(s)) = a(static_cast<Eigen::Index>(full));
    }
    const Eigen::VectorXcd out = u * buf;
    for (std::uint64_t s = 0; s < sub; ++s) a(static_cast<Eigen::Index>(idx[s])) = out(static_cast<Eigen::Index>(s));
  }
}

/// out = P |a>.
inline Eigen::VectorXcd apply_pauli(const Eigen::VectorXcd& a, std::uint64_t x, std::uint64_t z) {
  Eigen::VectorXcd out(a.size());
  for (std::uint64_t j = 0; j < static_cast<std::uint64_t>(a.size()); ++j) {
    out(static_cast<Eigen::Index>(j ^ x)) = pauli::pauli_phase(x, z, j) * a(static_cast<Eigen::Index>(j));
  }
  return out;
}

inline Matrix2c ry_matrix(double theta) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  Matrix2c u;
  u << c, -s, s, c;
  return u;
}

}  // namespace detail

inline void apply_gate(Statevector& sv, const Gate& g) {
  auto& a = sv.amplitudes();
  static const double r = 1.0 / std::numbers::sqrt2;
  Matrix2c u;
  switch (g.kind) {
    case GateKind::X:
    case GateKind::Cnot:
    case GateKind::MultiControlledX:
      u << 0, 1, 1, 0;
      detail::apply_single(a, g.target, u, detail::mask_of(g.controls));
      break;
    case GateKind::H:
      u << r, r, r, -r;
      detail::apply_single(a, g.target, u, 0);
      break;
    case GateKind::Sdg:
      u << 1, 0, 0, cplx(0, -1);
      detail::apply_single(a, g.target, u, 0);
      break;
    case GateKind::Ry:
    case GateKind::ControlledRy:
      detail::apply_single(a, g.target, detail::ry_matrix(g.angle), detail::mask_of(g.controls));
      break;
    case GateKind::PauliExponential: {
      const pauli::PauliString p{g.pauli, 1.0};
      const Eigen::VectorXcd pa = detail::apply_pauli(a, p.x_mask(), p.z_mask());
      a = std::cos(g.angle) * a + cplx(0.0, std::sin(g.angle)) * pa;
      break;
    }
    case GateKind::Unitary:
      detail::apply_unitary(a, g.qubits, g.matrix);
      break;
  }
}

/// Applies every gate in order; the norm is checked after each gate.
inline Statevector run_circuit(const Circuit& c, Statevector state) {
  if (state.num_qubits() != c.num_qubits()) throw DimensionError("circuit and state widths differ");
  for (const auto& g : c.gates()) {
    apply_gate(state, g);
    if (std::abs(state.norm() - 1.0) > 1e-10) throw NumericalError("statevector lost normalization");
  }
  return state;
}

inline Statevector run_circuit(const Circuit& c) { return run_circuit(c, Statevector(c.num_qubits())); }

/// Four-qubit ansatz spanning real superpositions of single-occupied modes.
///
/// Wire q_k carries fermionic mode 3 - k. With c_i = cos(theta_i/2),
/// s_i = sin(theta_i/2) the mode amplitudes are (s1 s3, s1 c3, c1 c2, c1 s2).
inline Circuit direct_ansatz(double t1, double t2, double t3) {
  auto q = [](int k) { return 3 - k; };
  Circuit c(4);
  c.x(q(1));
  c.cry(q(1), q(2), t1);
  c.cnot(q(2), q(1));
  c.cry(q(1), q(0), t2);
  c.cry(q(2), q(3), t3);
  c.cnot(q(0), q(1));
  c.cnot(q(3), q(2));
  return c;
}

/// Two-qubit ansatz for an arbitrary real two-qubit state.
inline Circuit compact_ansatz(double t1, double t2, double t3) {
  Circuit c(2);
  c.ry(0, t1);
  c.ry(1, t2);
  c.cnot(1, 0);
  c.ry(0, t3);
  return c;
}

/// Angles for which direct_ansatz prepares the real unit vector psi over
/// the four modes.
inline std::array<double, 3> direct_angles_for(const Eigen::Vector4d& psi) {
  const double t1 = 2.0 * std::atan2(std::hypot(psi(0), psi(1)), std::hypot(psi(2), psi(3)));
  const double t2 = 2.0 * std::atan2(psi(3), psi(2));
  const double t3 = 2.0 * std::atan2(psi(0), psi(1));
  return {t1, t2, t3};
}

/// Angles for which compact_ansatz prepares the real unit vector psi.
inline std::array<double, 3> compact_angles_for(const Eigen::Vector4d& psi) {
  const double t2 = 2.0 * std::atan2(std::hypot(psi(2), psi(3)), std::hypot(psi(0), psi(1)));
  const double a = std::atan2(psi(1), psi(0));
  const double b = std::atan2(psi(3), psi(2));
  return {a - b + 0.5 * std::numbers::pi, t2, a + b - 0.5 * std::numbers::pi};
}

/// CNOT network mapping Jordan-Wigner occupations to Bravyi-Kitaev qubits.
inline Circuit jw_to_bk_circuit(int n = 4) {
  if (n != 4) throw UnsupportedError("JW to BK circuit is provided for four qubits");
  Circuit c(n);
  for (const auto& g : pauli::encoder_cnots(pauli::bk_encoder(n))) c.cnot(g.control, g.target);
  return c;
}

/// Mode amplitudes of a direct-encoded state: component i is the amplitude of
/// the weight-1 basis state with mode i occupied.
inline Eigen::VectorXd direct_mode_amplitudes(const Statevector& sv) {
  Eigen::VectorXd out(sv.num_qubits());
  for (int i = 0; i < sv.num_qubits(); ++i) out(i) = sv[Eigen::Index{1} << i].real();
  return out;
}

/// Embeds mode amplitudes into the weight-1 subspace of n = v.size() qubits.
inline Eigen::VectorXcd direct_state_from_modes(const Eigen::VectorXd& v) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(Eigen::Index{1} << v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(Eigen::Index{1} << i) = v(i);
  return out;
}

inline double pauli_expectation(const Statevector& sv, const pauli::PauliString& p) {
  const auto& a = sv.amplitudes();
  const auto x = p.x_mask();
  const auto z = p.z_mask();
  cplx acc = 0.0;
  for (std::uint64_t j = 0; j < static_cast<std::uint64_t>(a.size()); ++j) {
    acc += std::conj(a(static_cast<Eigen::Index>(j ^ x))) * pauli::pauli_phase(x, z, j) * a(static_cast<Eigen::Index>(j));
  }
  return acc.real();
}

inline double expectation_exact(const Statevector& sv, const pauli::PauliSum& s) {
  if (sv.num_qubits() != s.num_qubits()) throw DimensionError("state and operator widths differ");
  double e = 0.0;
  for (const auto& t : s.terms()) e += t.coefficient * pauli_expectation(sv, t);
  return e;
}

/// Independent per-qubit readout flips.
struct ReadoutNoiseModel {
  std::vector<double> p01;  // P(read 1 | true 0)
  std::vector<double> p10;  // P(read 0 | true 1)

  static ReadoutNoiseModel uniform(int n_qubits, double p01, double p10) {
    ReadoutNoiseModel m{std::vector<double>(static_cast<std::size_t>(n_qubits), p01),
                        std::vector<double>(static_cast<std::size_t>(n_qubits), p10)};
    m.validate(n_qubits);
    return m;
  }
  static ReadoutNoiseModel symmetric(int n_qubits, double p) { return uniform(n_qubits, p, p); }

  void validate(int n_qubits) const {
    if (static_cast<int>(p01.size()) != n_qubits || static_cast<int>(p10.size()) != n_qubits) {
      throw DimensionError("noise model width differs from register width");
    }
    for (std::size_t q = 0; q < p01.size(); ++q) {
      if (!(p01[q] >= 0.0 && p01[q] < 1.0 && p10[q] >= 0.0 && p10[q] < 1.0)) {
        throw DomainError("readout flip probabilities must lie in [0, 1)");
      }
    }
  }

  bool is_noiseless() const {
    for (std::size_t q = 0; q < p01.size(); ++q) {
      if (p01[q] != 0.0 || p10[q] != 0.0) return false;
    }
    return true;
  }
};

/// Sampled measurement outcomes of one circuit setting.
struct ShotRecord {
  int n_qubits = 0;
  std::vector<std::uint64_t> counts;  // indexed by outcome bitstring
  std::uint64_t total = 0;
  std::uint64_t seed = 0;

  /// Nonzero counts keyed by bitstring, qubit 0 rightmost.
  std::map<std::string, std::uint64_t> by_bitstring() const {
    std::map<std::string, std::uint64_t> out;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (counts[i] == 0) continue;
      std::string bits(static_cast<std::size_t>(n_qubits), '0');
      for (int q = 0; q < n_qubits; ++q) {
        if ((i >> q) & 1U) bits[static_cast<std::size_t>(n_qubits - 1 - q)] = '1';
      }
      out[bits] = counts[i];
    }
    return out;
  }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Applies per-qubit 2x2 maps (rows: read value, columns: true value).
inline Eigen::VectorXd apply_tensor_maps(Eigen::VectorXd v, const std::vector<Eigen::Matrix2d>& maps) {
  for (std::size_t q = 0; q < maps.size(); ++q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    const auto& a = maps[q];
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(v.size()); ++i) {
      if (i & bit) continue;
      const auto i0 = static_cast<Eigen::Index>(i);
      const auto i1 = static_cast<Eigen::Index>(i | bit);
      const double v0 = v(i0);
      const double v1 = v(i1);
      v(i0) = a(0, 0) * v0 + a(0, 1) * v1;
      v(i1) = a(1, 0) * v0 + a(1, 1) * v1;
    }
  }
  return v;
}

}  // namespace detail

/// Seed of the independent substream that samples one Pauli term.
inline std::uint64_t term_seed(std::uint64_t seed, const std::string& label) {
  return detail::splitmix64(detail::splitmix64(seed) ^ detail::fnv1a(label));
}

/// Outcome distribution seen through the readout channel.
inline Eigen::VectorXd apply_readout_noise(const Eigen::VectorXd& probs, const ReadoutNoiseModel& model) {
  std::vector<Eigen::Matrix2d> maps;
  for (std::size_t q = 0; q < model.p01.size(); ++q) {
    Eigen::Matrix2d a;
    a << 1.0 - model.p01[q], model.p10[q], model.p01[q], 1.0 - model.p10[q];
    maps.push_back(a);
  }
  return detail::apply_tensor_maps(probs, maps);
}

/// Multinomial sample of `shots` outcomes by sequential conditional binomials.
inline ShotRecord sample_counts(const Eigen::VectorXd& probs, std::uint64_t shots, std::uint64_t seed, int n_qubits) {
  if (shots < 1) throw DomainError("shot count must be at least 1");
  std::mt19937_64 rng(seed);
  ShotRecord rec{n_qubits, std::vector<std::uint64_t>(static_cast<std::size_t>(probs.size()), 0), shots, seed};
  std::uint64_t left = shots;
  double mass = 1.0;
  for (Eigen::Index i = 0; i < probs.size() && left > 0; ++i) {
    const double p = std::max(0.0, probs(i));
    std::uint64_t k = 0;
    if (i == probs.size() - 1 || p >= mass) {
      k = left;
    } else if (p > 0.0) {
      std::binomial_distribution<std::uint64_t> dist(left, std::clamp(p / mass, 0.0, 1.0));
      k = dist(rng);
    }
    rec.counts[static_cast<std::size_t>(i)] = k;
    left -= k;
    mass -= p;
  }
  return rec;
}

/// Inverts the tensor-product confusion matrix on the empirical
/// distribution, clips negative quasi-probabilities and renormalizes.
inline Eigen::VectorXd mitigate_readout(const ShotRecord& counts, const ReadoutNoiseModel& model) {
  model.validate(counts.n_qubits);
  std::vector<Eigen::Matrix2d> inverses;
  for (std::size_t q = 0; q < model.p01.size(); ++q) {
    const double det = 1.0 - model.p01[q] - model.p10[q];
    if (std::abs(det) < 1e-12) throw DomainError("singular readout calibration (p01 + p10 = 1)");
    Eigen::Matrix2d inv;
    inv << 1.0 - model.p10[q], -model.p10[q], -model.p01[q], 1.0 - model.p01[q];
    inverses.push_back(inv / det);
  }
  Eigen::VectorXd freq(static_cast<Eigen::Index>(counts.counts.size()));
  for (std::size_t i = 0; i < counts.counts.size(); ++i) {
    freq(static_cast<Eigen::Index>(i)) = static_cast<double>(counts.counts[i]) / static_cast<double>(counts.total);
  }
  Eigen::VectorXd q = detail::apply_tensor_maps(freq, inverses).cwiseMax(0.0);
  const double s = q.sum();
  if (s <= 0.0) throw NumericalError("mitigated distribution has no weight");
  return q / s;
}

/// Expectation of Z on every qubit of `support` under distribution probs.
inline double parity_expectation(const Eigen::VectorXd& probs, std::uint64_t support) {
  double e = 0.0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    e += (std::popcount(static_cast<std::uint64_t>(i) & support) & 1 ? -1.0 : 1.0) * probs(i);
  }
  return e;
}

struct SamplingOptions {
  std::uint64_t shots_per_term = 8192;
  std::uint64_t seed = 0;
  std::optional<ReadoutNoiseModel> noise;
  bool mitigate = false;
};

struct TermEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

struct SampledEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Rotates so that measuring Z on the support measures p.
inline Statevector measurement_basis(const Statevector& sv, const pauli::PauliString& p) {
  Circuit c(sv.num_qubits());
  for (int q = 0; q < p.num_qubits(); ++q) {
    if (p.axis(q) == 'X') c.h(q);
    if (p.axis(q) == 'Y') c.sdg(q).h(q);
  }
  return run_circuit(c, sv);
}

/// Shot estimate of one non-identity Pauli string.
inline TermEstimate estimate_term(const Statevector& sv, const pauli::PauliString& p, const SamplingOptions& opt) {
  const Statevector rotated = measurement_basis(sv, p);
  Eigen::VectorXd probs = rotated.probabilities();
  const bool noisy = opt.noise && !opt.noise->is_noiseless();
  if (noisy) {
    opt.noise->validate(sv.num_qubits());
    probs = apply_readout_noise(probs, *opt.noise);
  }
  const ShotRecord rec = sample_counts(probs, opt.shots_per_term, term_seed(opt.seed, p.label), sv.num_qubits());
  const std::uint64_t support = p.support();
  double value = 0.0;
  double gain = 1.0;
  if (noisy && opt.mitigate) {
    value = parity_expectation(mitigate_readout(rec, *opt.noise), support);
    for (int q = 0; q < sv.num_qubits(); ++q) {
      if ((support >> q) & 1U) gain *= 1.0 - opt.noise->p01[static_cast<std::size_t>(q)] - opt.noise->p10[static_cast<std::size_t>(q)];
    }
  } else {
    Eigen::VectorXd freq(probs.size());
    for (std::size_t i = 0; i < rec.counts.size(); ++i) {
      freq(static_cast<Eigen::Index>(i)) = static_cast<double>(rec.counts[i]) / static_cast<double>(rec.total);
    }
    value = parity_expectation(freq, support);
  }
  const double raw = std::clamp(value * gain, -1.0, 1.0);
  const double se = std::sqrt((1.0 - raw * raw) / static_cast<double>(opt.shots_per_term)) / gain;
  return {value, se};
}

/// Sum over terms of c_alpha times the shot estimate of <P_alpha>. The
/// identity term is exact. Each term uses its own seeded substream.
inline SampledEstimate expectation_sampled(const Statevector& sv, const pauli::PauliSum& s, const SamplingOptions& opt) {
  if (sv.num_qubits() != s.num_qubits()) throw DimensionError("state and operator widths differ");
  if (opt.shots_per_term < 1) throw DomainError("shot count must be at least 1");
  SampledEstimate out;
  double var = 0.0;
  for (const auto& t : s.terms()) {
    if (t.is_identity()) {
      out.value += t.coefficient;
      continue;
    }
    const auto est = estimate_term(sv, t, opt);
    out.value += t.coefficient * est.value;
    var += t.coefficient * t.coefficient * est.std_error * est.std_error;
  }
  out.std_error = std::sqrt(var);
  return out;
}

/// Real orthogonal reflection exchanging the unit vectors v and |1...1>.
inline Eigen::MatrixXd householder_to_all_ones(const Eigen::VectorXd& v) {
  const Eigen::Index dim = v.size();
  Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
  e(dim - 1) = 1.0;
  const Eigen::VectorXd w = v - e;
  const double ww = w.squaredNorm();
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(dim, dim);
  if (ww > 1e-24) r -= 2.0 * w * w.transpose() / ww;
  return r;
}

/// |<v|psi>| for the state prepared by `ansatz`, read off an ancilla that is
/// flipped when the rotated register is |1...1>.
inline double overlap_magnitude(const Circuit& ansatz, const Eigen::VectorXd& v) {
  const int n = ansatz.num_qubits();
  if (v.size() != (Eigen::Index{1} << n)) throw DimensionError("reference vector must have 2^n entries");
  if (std::abs(v.norm() - 1.0) > 1e-9) throw DomainError("reference vector must be normalized");
  Circuit c = ansatz.widened(n + 1);
  std::vector<int> reg(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) reg[static_cast<std::size_t>(q)] = q;
  const Eigen::MatrixXcd r = householder_to_all_ones(v).cast<cplx>();
  c.unitary(reg, r);
  c.mcx(reg, n);
  c.unitary(reg, r.adjoint());
  const Statevector out = run_circuit(c);
  double p1 = 0.0;
  const Eigen::Index half = Eigen::Index{1} << n;
  for (Eigen::Index i = half; i < 2 * half; ++i) p1 += std::norm(out[i]);
  return std::sqrt(p1);
}

}  // namespace blfq::sim
