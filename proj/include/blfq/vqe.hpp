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
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "blfq/errors.hpp"
#include "blfq/optimize.hpp"
#include "blfq/pauli.hpp"
#include "blfq/simulator.hpp"

namespace blfq::vqe {

enum class Encoding { Direct, Compact, BravyiKitaev };
enum class Mode { Exact, Sampled, Noisy };

inline std::string to_string(Encoding e) {
  switch (e) {
    case Encoding::Direct: return "direct";
    case Encoding::Compact: return "compact";
    case Encoding::BravyiKitaev: return "bk";
  }
  return "";
}

inline Encoding encoding_from_string(const std::string& s) {
  if (s == "direct" || s == "jw") return Encoding::Direct;
  if (s == "compact") return Encoding::Compact;
  if (s == "bk") return Encoding::BravyiKitaev;
  throw ConfigError("unknown encoding '" + s + "' (expected direct, compact or bk)");
}

inline std::string to_string(Mode m) {
  switch (m) {
    case Mode::Exact: return "exact";
    case Mode::Sampled: return "sampled";
    case Mode::Noisy: return "noisy";
  }
  return "";
}

inline Mode mode_from_string(const std::string& s) {
  if (s == "exact") return Mode::Exact;
  if (s == "sampled") return Mode::Sampled;
  if (s == "noisy") return Mode::Noisy;
  throw ConfigError("unknown mode '" + s + "' (expected exact, sampled or noisy)");
}

inline int encoding_qubits(Encoding e) { return e == Encoding::Compact ? 2 : 4; }

using Angles = std::array<double, 3>;

inline sim::Circuit ansatz(Encoding e, const Angles& t) {
  switch (e) {
    case Encoding::Direct: return sim::direct_ansatz(t[0], t[1], t[2]);
    case Encoding::Compact: return sim::compact_ansatz(t[0], t[1], t[2]);
    case Encoding::BravyiKitaev: {
      sim::Circuit c = sim::direct_ansatz(t[0], t[1], t[2]);
      c.append(sim::jw_to_bk_circuit(4));
      return c;
    }
  }
  throw UnsupportedError("unknown encoding");
}

inline sim::Statevector prepare(Encoding e, const Angles& t) { return sim::run_circuit(ansatz(e, t)); }

/// Block-basis amplitudes (theta = 1..4) of the prepared state.
inline Eigen::Vector4d block_amplitudes(Encoding e, const Angles& t) {
  if (e == Encoding::Compact) return prepare(e, t).amplitudes().real();
  return sim::direct_mode_amplitudes(prepare(Encoding::Direct, t));
}

/// Angles preparing the given block-basis vector.
inline Angles angles_for(Encoding e, const Eigen::Vector4d& psi) {
  return e == Encoding::Compact ? sim::compact_angles_for(psi) : sim::direct_angles_for(psi);
}

/// Start point that prepares (0, -1/sqrt2, 1/sqrt2, 0).
inline Angles good_initial_guess(Encoding e) {
  const double r = 1.0 / std::numbers::sqrt2;
  return angles_for(e, Eigen::Vector4d(0.0, -r, r, 0.0));
}

struct VqeSettings {
  Encoding encoding = Encoding::Compact;
  Mode mode = Mode::Exact;
  sim::SamplingOptions sampling;
  opt::OptimizerConfig optimizer;
  std::optional<Angles> initial;

  /// Label for the evaluation mode attached to every result.
  std::string mode_label() const {
    switch (mode) {
      case Mode::Exact: return "exact";
      case Mode::Sampled: return "sampled";
      case Mode::Noisy: return sampling.mitigate ? "sampled+noise+mitigation" : "sampled+noise";
    }
    return "";
  }
};

struct VqeResult {
  Angles theta{};
  double energy = 0.0;
  double std_error = 0.0;
  std::vector<opt::TracePoint> trace;
  std::string mode;
  bool converged = false;
  int iterations = 0;
  int evaluations = 0;
};

/// Energy estimator for one encoding and mode. Sampled evaluations draw a
/// fresh substream per call, derived from the seed and a call counter.
class EnergyEstimator {
 public:
  EnergyEstimator(const pauli::PauliSum& h, const VqeSettings& s) : h_(h), s_(s) {
    if (h.num_qubits() != encoding_qubits(s.encoding)) {
      throw DimensionError("Hamiltonian width does not match the " + to_string(s.encoding) + " encoding");
    }
    if (s.mode == Mode::Noisy && !s.sampling.noise) throw ConfigError("noisy mode needs a readout noise model");
  }

  sim::SampledEstimate operator()(const Angles& t) {
    const auto state = prepare(s_.encoding, t);
    if (s_.mode == Mode::Exact) return {sim::expectation_exact(state, h_), 0.0};
    sim::SamplingOptions o = s_.sampling;
    if (s_.mode == Mode::Sampled) o.noise.reset();
    o.seed = sim::detail::splitmix64(s_.sampling.seed ^ sim::detail::splitmix64(++calls_));
    return sim::expectation_sampled(state, h_, o);
  }

  std::uint64_t calls() const { return calls_; }

 private:
  const pauli::PauliSum& h_;
  const VqeSettings& s_;
  std::uint64_t calls_ = 0;
};

inline VqeResult vqe_run(const pauli::PauliSum& h, const VqeSettings& settings) {
  settings.optimizer.validate();
  EnergyEstimator energy(h, settings);
  const Angles start = settings.initial.value_or(good_initial_guess(settings.encoding));

  opt::OptimizerConfig cfg = settings.optimizer;
  if (settings.mode != Mode::Exact) {
    // Shot noise sets the resolvable energy scale.
    const auto probe = energy(start);
    cfg.ftol = std::max(cfg.ftol, 2.0 * probe.std_error);
    cfg.xtol = std::numeric_limits<double>::max();
  }
  auto cost = [&](const Eigen::VectorXd& x) { return energy({x(0), x(1), x(2)}).value; };
  const auto r = opt::minimize(cost, Eigen::Vector3d(start[0], start[1], start[2]), cfg);

  VqeResult out;
  out.theta = {r.x(0), r.x(1), r.x(2)};
  out.trace = r.trace;
  out.converged = r.converged;
  out.iterations = r.iterations;
  out.evaluations = r.evaluations;
  out.mode = settings.mode_label();
  const auto final_estimate = energy(out.theta);
  out.energy = final_estimate.value;
  out.std_error = final_estimate.std_error;
  return out;
}

/// Uniform random angles in [0, 2 pi).
inline Angles random_angles(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  Angles a;
  for (auto& v : a) v = u(rng);
  return a;
}

struct ScalingRow {
  std::uint64_t shots;
  double rms_relative_error;
};

struct ScalingFit {
  /// n = prefactor / eps^exponent
  double prefactor = 0.0;
  double exponent = 0.0;
};

struct ScalingTable {
  std::vector<ScalingRow> rows;
  ScalingFit fit;
};

/// Least-squares fit of log n = log A - p log eps.
inline ScalingFit fit_shot_law(const std::vector<ScalingRow>& rows) {
  if (rows.size() < 2) throw DomainError("need at least two points to fit the shot law");
  Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), 2);
  Eigen::VectorXd y(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!(rows[i].rms_relative_error > 0.0)) throw NumericalError("zero RMS error cannot be fitted on a log scale");
    a(static_cast<Eigen::Index>(i), 0) = 1.0;
    a(static_cast<Eigen::Index>(i), 1) = std::log(rows[i].rms_relative_error);
    y(static_cast<Eigen::Index>(i)) = std::log(static_cast<double>(rows[i].shots));
  }
  const Eigen::Vector2d c = a.colPivHouseholderQr().solve(y);
  return {std::exp(c(0)), -c(1)};
}

/// Default shot grid: powers of two from 2^8 to 2^16.
inline std::vector<std::uint64_t> default_shot_grid() {
  std::vector<std::uint64_t> g;
  for (int k = 8; k <= 16; ++k) g.push_back(std::uint64_t{1} << k);
  return g;
}

/// RMS relative error of the noiseless sampled energy at fixed angles, for
/// each shot count, over `repeats` seeded estimations.
inline ScalingTable scaling_experiment(const pauli::PauliSum& h, Encoding e, const Angles& theta,
                                       const std::vector<std::uint64_t>& shot_grid, int repeats,
                                       std::uint64_t seed) {
  if (repeats < 1) throw DomainError("repeats must be at least 1");
  const auto state = prepare(e, theta);
  const double exact = sim::expectation_exact(state, h);
  ScalingTable table;
  for (std::size_t g = 0; g < shot_grid.size(); ++g) {
    double sq = 0.0;
    for (int r = 0; r < repeats; ++r) {
      sim::SamplingOptions o;
      o.shots_per_term = shot_grid[g];
      o.seed = sim::detail::splitmix64(seed ^ (static_cast<std::uint64_t>(g) << 32) ^ static_cast<std::uint64_t>(r));
      const double rel = (sim::expectation_sampled(state, h, o).value - exact) / exact;
      sq += rel * rel;
    }
    table.rows.push_back({shot_grid[g], std::sqrt(sq / repeats)});
  }
  table.fit = fit_shot_law(table.rows);
  return table;
}

}  // namespace blfq::vqe
