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
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "blfq/errors.hpp"
#include "blfq/observable.hpp"

namespace blfq::pauli {

/// A Pauli string with a real coefficient.
///
/// The label lists tensor factors left to right; qubit 0 is the rightmost
/// character and the least-significant bit of basis-state indices.
struct PauliString {
  std::string label;
  double coefficient = 1.0;

  int num_qubits() const { return static_cast<int>(label.size()); }

  char axis(int qubit) const { return label[label.size() - 1 - static_cast<std::size_t>(qubit)]; }

  std::uint64_t x_mask() const {
    std::uint64_t mask = 0;
    for (int q = 0; q < num_qubits(); ++q) {
      const char c = axis(q);
      if (c == 'X' || c == 'Y') mask |= std::uint64_t{1} << q;
    }
    return mask;
  }

  std::uint64_t z_mask() const {
    std::uint64_t mask = 0;
    for (int q = 0; q < num_qubits(); ++q) {
      const char c = axis(q);
      if (c == 'Z' || c == 'Y') mask |= std::uint64_t{1} << q;
    }
    return mask;
  }

  int y_count() const { return static_cast<int>(std::count(label.begin(), label.end(), 'Y')); }

  bool is_identity() const { return label.find_first_not_of('I') == std::string::npos; }

  /// Qubits on which the string acts nontrivially.
  std::uint64_t support() const { return x_mask() | z_mask(); }
};

inline void validate_label(const std::string& label) {
  if (label.empty() || label.size() > 62) throw DimensionError("Pauli label length must be 1..62");
  if (label.find_first_not_of("IXYZ") != std::string::npos) {
    throw DomainError("invalid Pauli label '" + label + "'");
  }
}

inline std::string label_from_masks(std::uint64_t x, std::uint64_t z, int n) {
  std::string label(static_cast<std::size_t>(n), 'I');
  for (int q = 0; q < n; ++q) {
    const bool xb = (x >> q) & 1U;
    const bool zb = (z >> q) & 1U;
    label[static_cast<std::size_t>(n - 1 - q)] = xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
  }
  return label;
}

/// Weighted sum of Pauli strings on a fixed number of qubits. Terms keep
/// insertion order; adding an existing label accumulates its coefficient.
class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > 62) throw DimensionError("PauliSum needs 1..62 qubits");
  }

  int num_qubits() const { return n_qubits_; }
  const std::vector<PauliString>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  void add(const std::string& label, double coefficient) {
    validate_label(label);
    if (static_cast<int>(label.size()) != n_qubits_) throw DimensionError("label length mismatch");
    if (!std::isfinite(coefficient)) throw DomainError("Pauli coefficient must be finite");
    for (auto& t : terms_) {
      if (t.label == label) {
        t.coefficient += coefficient;
        return;
      }
    }
    terms_.push_back({label, coefficient});
  }

  void add(const PauliSum& other, double scale = 1.0) {
    if (other.n_qubits_ != n_qubits_) throw DimensionError("PauliSum qubit counts differ");
    for (const auto& t : other.terms_) add(t.label, scale * t.coefficient);
  }

  /// Coefficient of a label, zero if absent.
  double coefficient(const std::string& label) const {
    for (const auto& t : terms_) {
      if (t.label == label) return t.coefficient;
    }
    return 0.0;
  }

  /// Drops terms with |c| <= threshold.
  void prune(double threshold) {
    std::erase_if(terms_, [threshold](const PauliString& t) { return std::abs(t.coefficient) <= threshold; });
  }

  double max_abs_coefficient() const {
    double m = 0.0;
    for (const auto& t : terms_) m = std::max(m, std::abs(t.coefficient));
    return m;
  }

 private:
  int n_qubits_ = 0;
  std::vector<PauliString> terms_;
};

/// Phase and target of P|j>: P|j> = phase * |j ^ x>.
inline std::complex<double> pauli_phase(std::uint64_t x, std::uint64_t z, std::uint64_t j) {
  static const std::complex<double> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const int ny = std::popcount(x & z);
  const int sign = std::popcount(j & z) & 1;
  return (sign ? -1.0 : 1.0) * ipow[ny & 3];
}

/// Dense matrix of a Pauli sum. Complex in general.
inline Eigen::MatrixXcd to_complex_matrix(const PauliSum& s) {
  const std::uint64_t dim = std::uint64_t{1} << s.num_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& t : s.terms()) {
    const auto x = t.x_mask();
    const auto z = t.z_mask();
    for (std::uint64_t j = 0; j < dim; ++j) {
      m(static_cast<Eigen::Index>(j ^ x), static_cast<Eigen::Index>(j)) += t.coefficient * pauli_phase(x, z, j);
    }
  }
  return m;
}

/// Dense real matrix of a Pauli sum whose image is real symmetric.
inline HermitianObservable pauli_sum_to_matrix(const PauliSum& s, std::string units = "") {
  const Eigen::MatrixXcd m = to_complex_matrix(s);
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (m.imag().cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw DomainError("Pauli sum does not represent a real matrix");
  }
  return {m.real(), std::move(units)};
}

/// All 4^n labels in I < X < Y < Z lexicographic order.
inline std::vector<std::string> all_labels(int n) {
  std::vector<std::string> out{""};
  for (int k = 0; k < n; ++k) {
    std::vector<std::string> next;
    next.reserve(out.size() * 4);
    for (const auto& s : out) {
      for (char c : {'I', 'X', 'Y', 'Z'}) next.push_back(s + c);
    }
    out = std::move(next);
  }
  return out;
}

/// c_alpha = tr(M P_alpha) / 2^n for every Pauli string, pruned below
/// 1e-9 * max|M_ij|.
inline PauliSum pauli_decompose(const HermitianObservable& obs, int n_qubits) {
  const auto& m = obs.matrix;
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  if (n_qubits < 1 || m.rows() != dim || m.cols() != dim) {
    throw DimensionError("matrix dimension must equal 2^n_qubits");
  }
  obs.require_symmetric();
  const double scale = m.cwiseAbs().maxCoeff();
  PauliSum out(n_qubits);
  for (const auto& label : all_labels(n_qubits)) {
    PauliString p{label, 1.0};
    const auto x = p.x_mask();
    const auto z = p.z_mask();
    std::complex<double> tr = 0.0;
    for (std::uint64_t j = 0; j < static_cast<std::uint64_t>(dim); ++j) {
      tr += m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j ^ x)) * pauli_phase(x, z, j);
    }
    const double c = tr.real() / static_cast<double>(dim);
    if (std::abs(c) > 1e-9 * scale) out.add(label, c);
  }
  return out;
}

inline std::string single_site_label(int n, const std::map<int, char>& axes) {
  std::string label(static_cast<std::size_t>(n), 'I');
  for (const auto& [q, c] : axes) label[static_cast<std::size_t>(n - 1 - q)] = c;
  return label;
}

/// Jordan-Wigner images of quadratic fermion operators between modes i < j
/// (0-based, mode k stored on qubit k).
struct HoppingImage {
  /// a+_j a_i - a+_i a_j = i * generator, generator = (Y_i Z..Z X_j - X_i Z..Z Y_j) / 2.
  PauliSum generator;
  /// a+_i a_j + a+_j a_i = (X_i Z..Z X_j + Y_i Z..Z Y_j) / 2.
  PauliSum hermitian;
};

inline std::string jw_chain_label(int n, int i, int j, char at_i, char at_j) {
  std::map<int, char> axes{{i, at_i}, {j, at_j}};
  for (int k = i + 1; k < j; ++k) axes[k] = 'Z';
  return single_site_label(n, axes);
}

inline HoppingImage jw_hopping_pauli(int i, int j, int n_qubits) {
  if (n_qubits < 2 || i < 0 || j >= n_qubits || i >= j) {
    throw DomainError("hopping indices must satisfy 0 <= i < j < n_qubits");
  }
  HoppingImage h{PauliSum(n_qubits), PauliSum(n_qubits)};
  h.generator.add(jw_chain_label(n_qubits, i, j, 'Y', 'X'), 0.5);
  h.generator.add(jw_chain_label(n_qubits, i, j, 'X', 'Y'), -0.5);
  h.hermitian.add(jw_chain_label(n_qubits, i, j, 'X', 'X'), 0.5);
  h.hermitian.add(jw_chain_label(n_qubits, i, j, 'Y', 'Y'), 0.5);
  return h;
}

/// a+_i a_i = (I - Z_i) / 2.
inline PauliSum jw_number_pauli(int i, int n_qubits) {
  if (i < 0 || i >= n_qubits) throw DomainError("mode index out of range");
  PauliSum s(n_qubits);
  s.add(std::string(static_cast<std::size_t>(n_qubits), 'I'), 0.5);
  s.add(single_site_label(n_qubits, {{i, 'Z'}}), -0.5);
  return s;
}

/// sum_ij h_ij a+_i a_j with basis state i stored in fermionic mode i.
inline PauliSum embed_direct(const HermitianObservable& h) {
  h.require_symmetric();
  const int n = static_cast<int>(h.dimension());
  if (n < 2 || n > 62) throw DimensionError("direct encoding needs 2..62 modes");
  PauliSum out(n);
  for (int i = 0; i < n; ++i) out.add(jw_number_pauli(i, n), h.matrix(i, i));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (h.matrix(i, j) != 0.0) out.add(jw_hopping_pauli(i, j, n).hermitian, h.matrix(i, j));
    }
  }
  out.prune(1e-9 * h.matrix.cwiseAbs().maxCoeff());
  return out;
}

inline int compact_qubits(Eigen::Index dim) {
  int n = 1;
  while ((Eigen::Index{1} << n) < dim) ++n;
  return n;
}

/// Binary encoding of the basis index. Dimensions that are not a power of two
/// are padded with a diagonal penalty of 10x a Gershgorin bound.
inline PauliSum embed_compact(const HermitianObservable& h) {
  h.require_symmetric();
  const Eigen::Index dim = h.dimension();
  if (dim < 1) throw DimensionError("empty observable");
  const int n = compact_qubits(dim);
  const Eigen::Index padded = Eigen::Index{1} << n;
  if (padded == dim) return pauli_decompose(h, n);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(padded, padded);
  m.topLeftCorner(dim, dim) = h.matrix;
  const double penalty = 10.0 * std::max(1.0, h.matrix.cwiseAbs().rowwise().sum().maxCoeff());
  for (Eigen::Index k = dim; k < padded; ++k) m(k, k) = penalty;
  return pauli_decompose({m, h.units}, n);
}

/// Binary lower-triangular matrix over GF(2); rows index BK qubits b_i,
/// columns JW occupations f_j.
using EncoderMatrix = std::vector<std::vector<std::uint8_t>>;

inline EncoderMatrix bk_encoder(int n) {
  if (n < 1 || (n & (n - 1)) != 0 || n > 32) throw UnsupportedError("BK encoder needs N = 2^k <= 32");
  EncoderMatrix p{{1}};
  for (int size = 1; size < n; size *= 2) {
    EncoderMatrix next(static_cast<std::size_t>(2 * size), std::vector<std::uint8_t>(static_cast<std::size_t>(2 * size), 0));
    for (int r = 0; r < size; ++r) {
      for (int c = 0; c < size; ++c) {
        next[r][c] = p[r][c];
        next[r + size][c + size] = p[r][c];
      }
    }
    for (int c = 0; c < size; ++c) next[2 * size - 1][c] = 1;
    p = std::move(next);
  }
  return p;
}

/// A CNOT with control and target qubit.
struct Cnot {
  int control;
  int target;
};

/// CNOT network realizing |f> -> |P f> on basis states. Rows are processed
/// from the bottom up, so every row still reads unmodified lower qubits.
inline std::vector<Cnot> encoder_cnots(const EncoderMatrix& p) {
  std::vector<Cnot> gates;
  const int n = static_cast<int>(p.size());
  for (int i = n - 1; i >= 0; --i) {
    if (p[i][i] != 1) throw DomainError("encoder matrix must have unit diagonal");
    for (int j = 0; j < n; ++j) {
      if (j > i && p[i][j]) throw DomainError("encoder matrix must be lower triangular");
      if (j < i && p[i][j]) gates.push_back({j, i});
    }
  }
  return gates;
}

/// Heisenberg conjugation C P C^dagger of one Pauli string by one CNOT.
inline void conjugate_by_cnot(std::uint64_t& x, std::uint64_t& z, int& sign, const Cnot& g) {
  const unsigned xc = (x >> g.control) & 1U;
  const unsigned zc = (z >> g.control) & 1U;
  const unsigned xt = (x >> g.target) & 1U;
  const unsigned zt = (z >> g.target) & 1U;
  if (xc & zt & (xt ^ zc ^ 1U)) sign = -sign;
  x ^= std::uint64_t{xc} << g.target;
  z ^= std::uint64_t{zt} << g.control;
}

/// Maps a Jordan-Wigner Pauli sum to the Bravyi-Kitaev encoding by
/// conjugating each string with the encoder CNOT network.
inline PauliSum jw_to_bk_pauli(const PauliSum& s) {
  const int n = s.num_qubits();
  const auto gates = encoder_cnots(bk_encoder(n));
  PauliSum out(n);
  for (const auto& t : s.terms()) {
    std::uint64_t x = t.x_mask();
    std::uint64_t z = t.z_mask();
    int sign = 1;
    for (const auto& g : gates) conjugate_by_cnot(x, z, sign, g);
    out.add(label_from_masks(x, z, n), sign * t.coefficient);
  }
  return out;
}

}  // namespace blfq::pauli
