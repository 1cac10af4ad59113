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

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "blfq/blfq.hpp"

namespace blfq::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kFailure = 1, kConfigError = 2, kNotConverged = 3, kNumericalFailure = 4 };

/// Everything a subcommand needs. Precedence when filling it: command-line
/// flags, then the config file, then these defaults.
struct RunConfig {
  basis::ModelParameters params;
  basis::BasisCutoffs cutoffs;
  vqe::Encoding encoding = vqe::Encoding::Compact;
  vqe::Mode mode = vqe::Mode::Exact;
  std::uint64_t shots = 8192;
  std::uint64_t seed = 20211;
  double noise_p01 = 0.0;
  double noise_p10 = 0.0;
  bool mitigate = false;
  opt::OptimizerConfig optimizer;
  bool exact = false;
  std::optional<vqe::Angles> angles;
  int repeats = 200;
  bool timestamps = false;
  std::string out_dir = "results";

  void validate() const {
    try {
      params.validate();
      cutoffs.validate();
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
    if (!cutoffs.is_default()) {
      throw ConfigError("only the default truncation (nmax = 0, mmax = 2, lmax = 0) is supported");
    }
    if (shots < 1) throw ConfigError("shots must be at least 1");
    for (double p : {noise_p01, noise_p10}) {
      if (!(p >= 0.0 && p < 1.0)) throw ConfigError("noise probabilities must lie in [0, 1)");
    }
    if (noise_p01 + noise_p10 >= 1.0) throw ConfigError("noise-p01 + noise-p10 must be below 1");
    if (mitigate && mode != vqe::Mode::Noisy) throw ConfigError("--mitigate requires --mode noisy");
    if (repeats < 1) throw ConfigError("repeats must be at least 1");
    optimizer.validate();
    if (out_dir.empty()) throw ConfigError("output directory must not be empty");
  }

  sim::SamplingOptions sampling() const {
    sim::SamplingOptions o;
    o.shots_per_term = shots;
    o.seed = seed;
    o.mitigate = mitigate;
    if (mode == vqe::Mode::Noisy) {
      o.noise = sim::ReadoutNoiseModel::uniform(vqe::encoding_qubits(encoding), noise_p01, noise_p10);
    }
    return o;
  }

  vqe::VqeSettings vqe_settings() const {
    vqe::VqeSettings s;
    s.encoding = encoding;
    s.mode = mode;
    s.sampling = sampling();
    s.optimizer = optimizer;
    s.initial = angles;
    return s;
  }

  std::string mode_label() const { return vqe_settings().mode_label(); }
};

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "' expects a number, got '" + v + "'");
  }
}

inline std::int64_t parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long d = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "' expects an integer, got '" + v + "'");
  }
}

inline bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("'" + key + "' expects true or false, got '" + v + "'");
}

inline vqe::Angles parse_angles(const std::string& v) {
  vqe::Angles a{};
  std::stringstream ss(v);
  std::string item;
  std::size_t k = 0;
  while (std::getline(ss, item, ',')) {
    if (k == 3) throw ConfigError("angles expects three comma-separated values");
    a[k++] = parse_double("angles", trim(item));
  }
  if (k != 3) throw ConfigError("angles expects three comma-separated values");
  return a;
}

/// Applies one key = value setting. Keys match the long flag names.
inline void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "encoding") c.encoding = vqe::encoding_from_string(value);
  else if (key == "mode") c.mode = vqe::mode_from_string(value);
  else if (key == "shots") {
    const auto n = parse_int(key, value);
    if (n < 1) throw ConfigError("shots must be at least 1");
    c.shots = static_cast<std::uint64_t>(n);
  } else if (key == "seed") {
    const auto n = parse_int(key, value);
    if (n < 0) throw ConfigError("seed must be nonnegative");
    c.seed = static_cast<std::uint64_t>(n);
  }
  else if (key == "noise-p01") c.noise_p01 = parse_double(key, value);
  else if (key == "noise-p10") c.noise_p10 = parse_double(key, value);
  else if (key == "mitigate") c.mitigate = parse_bool(key, value);
  else if (key == "exact") c.exact = parse_bool(key, value);
  else if (key == "angles") c.angles = parse_angles(value);
  else if (key == "gpi") c.params.njl_coupling = parse_double(key, value);
  else if (key == "quark-mass") c.params.quark_mass = parse_double(key, value);
  else if (key == "antiquark-mass") c.params.antiquark_mass = parse_double(key, value);
  else if (key == "kappa") c.params.confinement_strength = parse_double(key, value);
  else if (key == "basis-scale") c.params.basis_scale = parse_double(key, value);
  else if (key == "nmax") c.cutoffs.n_max = static_cast<int>(parse_int(key, value));
  else if (key == "mmax") c.cutoffs.m_max = static_cast<int>(parse_int(key, value));
  else if (key == "lmax") c.cutoffs.l_max = static_cast<int>(parse_int(key, value));
  else if (key == "optimizer") c.optimizer.method = opt::method_from_string(value);
  else if (key == "max-iterations") c.optimizer.max_iterations = static_cast<int>(parse_int(key, value));
  else if (key == "ftol") c.optimizer.ftol = parse_double(key, value);
  else if (key == "xtol") c.optimizer.xtol = parse_double(key, value);
  else if (key == "initial-step") c.optimizer.initial_step = parse_double(key, value);
  else if (key == "restarts") c.optimizer.restarts = static_cast<int>(parse_int(key, value));
  else if (key == "repeats") c.repeats = static_cast<int>(parse_int(key, value));
  else if (key == "timestamps") c.timestamps = parse_bool(key, value);
  else if (key == "out") c.out_dir = value;
  else throw ConfigError("unknown setting '" + key + "'");
}

/// Reads `key = value` lines; '#' starts a comment.
inline std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(number) + ": expected 'key = value'");
    }
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

/// Settings from every source. Precedence: flags, config file, the
/// output-directory environment variable, built-in defaults.
struct SettingSources {
  std::map<std::string, std::string> flags;
  std::string config_file;
  std::string env_out_dir;
};

inline RunConfig resolve(const SettingSources& src) {
  RunConfig c;
  if (!src.env_out_dir.empty()) c.out_dir = src.env_out_dir;
  if (!src.config_file.empty()) {
    for (const auto& [k, v] : read_config_file(src.config_file)) apply_setting(c, k, v);
  }
  for (const auto& [k, v] : src.flags) apply_setting(c, k, v);
  return c;
}

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Canonical key = value rendering; re-reading it reproduces the config.
inline std::string serialize(const RunConfig& c) {
  std::ostringstream s;
  s << "encoding = " << vqe::to_string(c.encoding) << "\n"
    << "mode = " << vqe::to_string(c.mode) << "\n"
    << "shots = " << c.shots << "\n"
    << "seed = " << c.seed << "\n"
    << "noise-p01 = " << format_double(c.noise_p01) << "\n"
    << "noise-p10 = " << format_double(c.noise_p10) << "\n"
    << "mitigate = " << (c.mitigate ? "true" : "false") << "\n"
    << "exact = " << (c.exact ? "true" : "false") << "\n";
  if (c.angles) {
    s << "angles = " << format_double((*c.angles)[0]) << "," << format_double((*c.angles)[1]) << ","
      << format_double((*c.angles)[2]) << "\n";
  }
  s << "gpi = " << format_double(c.params.njl_coupling) << "\n"
    << "quark-mass = " << format_double(c.params.quark_mass) << "\n"
    << "antiquark-mass = " << format_double(c.params.antiquark_mass) << "\n"
    << "kappa = " << format_double(c.params.confinement_strength) << "\n";
  if (c.params.basis_scale) s << "basis-scale = " << format_double(*c.params.basis_scale) << "\n";
  s << "nmax = " << c.cutoffs.n_max << "\n"
    << "mmax = " << c.cutoffs.m_max << "\n"
    << "lmax = " << c.cutoffs.l_max << "\n"
    << "optimizer = " << opt::to_string(c.optimizer.method) << "\n"
    << "max-iterations = " << c.optimizer.max_iterations << "\n"
    << "ftol = " << format_double(c.optimizer.ftol) << "\n"
    << "xtol = " << format_double(c.optimizer.xtol) << "\n"
    << "initial-step = " << format_double(c.optimizer.initial_step) << "\n"
    << "restarts = " << c.optimizer.restarts << "\n"
    << "repeats = " << c.repeats << "\n";
  return s.str();
}

inline std::string config_hash(const RunConfig& c) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << sim::detail::fnv1a(serialize(c));
  return s.str();
}

/// Structured results plus plot-ready tables, written to one directory.
struct ResultBundle {
  json summary;
  std::string summary_name;
  std::map<std::string, std::string> csv;  // file name -> contents
  int exit_code = kOk;
};

inline json provenance(const RunConfig& c, const std::string& command) {
  json p;
  p["command"] = command;
  p["config_hash"] = config_hash(c);
  p["seed"] = c.seed;
  p["config"] = serialize(c);
  if (c.timestamps) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::ostringstream t;
    t << std::put_time(std::gmtime(&now), "%Y-%m-%dT%H:%M:%SZ");
    p["timestamp"] = t.str();
  }
  return p;
}

inline void write_bundle(const ResultBundle& b, const std::string& dir) {
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream out(std::filesystem::path(dir) / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + name + "' in '" + dir + "'");
    out << text;
  };
  write(b.summary_name, b.summary.dump(2) + "\n");
  for (const auto& [name, text] : b.csv) write(name, text);
}

inline json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

inline json vector_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

inline json pauli_json(const pauli::PauliSum& s) {
  json a = json::array();
  for (const auto& t : s.terms()) a.push_back({{"label", t.label}, {"coefficient", t.coefficient}});
  return a;
}

inline pauli::PauliSum hamiltonian_pauli(const HermitianObservable& h, vqe::Encoding e) {
  return observables::encode(h, e);
}

// ---------------------------------------------------------- hamiltonian ----

inline ResultBundle cmd_hamiltonian(const RunConfig& c, std::ostream& log) {
  c.validate();
  const auto h = hamiltonian::build_effective_hamiltonian(c.params, c.cutoffs);
  const auto es = hamiltonian::diagonalize(h);
  ResultBundle b;
  b.summary_name = "hamiltonian.json";
  b.summary["units"] = "MeV^2";
  b.summary["H"] = matrix_json(h.matrix);
  b.summary["spectrum"] = vector_json(es.eigenvalues);
  b.summary["ground_state"] = vector_json(es.eigenvectors.col(0));
  b.summary["pauli"] = {{"direct", pauli_json(hamiltonian_pauli(h, vqe::Encoding::Direct))},
                        {"compact", pauli_json(hamiltonian_pauli(h, vqe::Encoding::Compact))},
                        {"bk", pauli_json(hamiltonian_pauli(h, vqe::Encoding::BravyiKitaev))}};
  b.summary["provenance"] = provenance(c, "hamiltonian");

  log << "Effective Hamiltonian, J_z = 0 block [MeV^2]\n";
  for (Eigen::Index i = 0; i < h.matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < h.matrix.cols(); ++j) log << std::setw(14) << std::fixed << std::setprecision(1) << h.matrix(i, j);
    log << "\n";
  }
  log << "Spectrum [MeV^2]:";
  for (Eigen::Index i = 0; i < es.eigenvalues.size(); ++i) log << " " << es.eigenvalues(i);
  log << "\nPauli terms (" << vqe::to_string(c.encoding) << "):\n";
  const auto sum = hamiltonian_pauli(h, c.encoding);
  for (const auto& t : sum.terms()) {
    log << "  " << t.label << std::setw(16) << std::setprecision(3) << t.coefficient << "\n";
  }
  log.unsetf(std::ios::floatfield);
  return b;
}

// ------------------------------------------------------------------ vqe ----

struct VqeOutcome {
  vqe::VqeResult result;
  double exact_ground = 0.0;
};

inline VqeOutcome run_vqe(const RunConfig& c) {
  const auto h = hamiltonian::build_effective_hamiltonian(c.params, c.cutoffs);
  const auto es = hamiltonian::diagonalize(h);
  return {vqe::vqe_run(hamiltonian_pauli(h, c.encoding), c.vqe_settings()), es.eigenvalues(0)};
}

inline ResultBundle cmd_vqe(const RunConfig& c, std::ostream& log) {
  c.validate();
  const auto out = run_vqe(c);
  const auto& r = out.result;
  ResultBundle b;
  b.summary_name = "vqe.json";
  b.summary["encoding"] = vqe::to_string(c.encoding);
  b.summary["mode"] = r.mode;
  b.summary["angles_rad"] = {r.theta[0], r.theta[1], r.theta[2]};
  b.summary["energy_MeV2"] = r.energy;
  b.summary["std_error_MeV2"] = r.std_error;
  b.summary["exact_ground_MeV2"] = out.exact_ground;
  b.summary["converged"] = r.converged;
  b.summary["iterations"] = r.iterations;
  b.summary["evaluations"] = r.evaluations;
  b.summary["provenance"] = provenance(c, "vqe");
  std::ostringstream csv;
  csv << "iteration,best_energy_MeV2,mode\n";
  for (const auto& t : r.trace) csv << t.iteration << "," << format_double(t.best_value) << "," << r.mode << "\n";
  b.csv["vqe_trace.csv"] = csv.str();
  b.exit_code = r.converged ? kOk : kNotConverged;

  log << "VQE [" << vqe::to_string(c.encoding) << ", " << r.mode << "]: E = " << format_double(r.energy)
      << " MeV^2 (exact " << format_double(out.exact_ground) << "), " << r.iterations << " iterations"
      << (r.converged ? "" : ", NOT CONVERGED") << "\n";
  return b;
}

// -------------------------------------------------------------- scaling ----

inline std::string scaling_csv(const vqe::ScalingTable& t) {
  std::ostringstream csv;
  csv << "shots_per_term,rms_relative_error\n";
  for (const auto& row : t.rows) csv << row.shots << "," << format_double(row.rms_relative_error) << "\n";
  return csv.str();
}

inline vqe::ScalingTable scaling_for(const RunConfig& c, vqe::Encoding e) {
  const auto h = hamiltonian::build_effective_hamiltonian(c.params, c.cutoffs);
  const auto es = hamiltonian::diagonalize(h);
  const Eigen::Vector4d ground = es.eigenvectors.col(0);
  return vqe::scaling_experiment(hamiltonian_pauli(h, e), e, vqe::angles_for(e, ground), vqe::default_shot_grid(),
                                 c.repeats, c.seed);
}

inline ResultBundle cmd_scaling(const RunConfig& c, std::ostream& log) {
  c.validate();
  ResultBundle b;
  b.summary_name = "scaling.json";
  for (auto e : {vqe::Encoding::Direct, vqe::Encoding::Compact}) {
    const auto t = scaling_for(c, e);
    b.summary[vqe::to_string(e)] = {{"prefactor", t.fit.prefactor}, {"exponent", t.fit.exponent}};
    b.csv["scaling_" + vqe::to_string(e) + ".csv"] = scaling_csv(t);
    log << vqe::to_string(e) << ": n = " << format_double(t.fit.prefactor) << " / eps^" << format_double(t.fit.exponent)
        << "\n";
  }
  b.summary["repeats"] = c.repeats;
  b.summary["provenance"] = provenance(c, "scaling");
  return b;
}

// ---------------------------------------------------------- observables ----

inline ResultBundle cmd_observables(const RunConfig& c, std::ostream& log) {
  c.validate();
  const auto h = hamiltonian::build_effective_hamiltonian(c.params, c.cutoffs);
  const auto es = hamiltonian::diagonalize(h);
  const auto ctx = observables::Context::make(c.params, c.cutoffs);

  ResultBundle b;
  b.summary_name = "observables.json";
  std::string label;
  Eigen::VectorXd psi;
  std::optional<vqe::Angles> angles;
  std::optional<sim::SamplingOptions> sampling;
  double m2 = 0.0;
  double m2_err = 0.0;

  if (c.exact) {
    label = "exact";
    psi = es.eigenvectors.col(0);
    m2 = es.eigenvalues(0);
  } else {
    if (c.angles) {
      angles = c.angles;
    } else {
      const auto run = run_vqe(c);
      angles = run.result.theta;
      b.summary["vqe_converged"] = run.result.converged;
      if (!run.result.converged) b.exit_code = kNotConverged;
    }
    label = c.mode_label();
    psi = vqe::block_amplitudes(c.encoding, *angles);
    if (c.mode != vqe::Mode::Exact) sampling = c.sampling();
  }

  auto measure = [&](const HermitianObservable& obs) -> observables::Measured {
    if (!angles) return {obs.expectation(psi), 0.0};
    return observables::measure(obs, vqe::prepare(c.encoding, *angles), c.encoding, sampling);
  };

  if (angles) {
    const auto e = measure(h);
    m2 = e.value;
    m2_err = e.std_error;
  }
  const double prefactor = observables::decay_prefactor(ctx);
  const Eigen::Vector4d v = observables::decay_reference_vector();
  const auto proj = measure({v * v.transpose(), ""});
  const double f_pi = prefactor * std::sqrt(std::max(0.0, proj.value));
  const auto r2 = measure(observables::to_fm2(observables::mass_radius_matrix(ctx)));

  std::ostringstream ff;
  ff << "Q2_MeV2,F_P,std_error\n";
  observables::FormFactorCurve curve;
  for (double q2 : observables::default_q2_grid(c.params)) {
    const auto f = measure(observables::form_factor_matrix(q2, ctx));
    curve.push_back({q2, f.value});
    ff << format_double(q2) << "," << format_double(f.value) << "," << format_double(f.std_error) << "\n";
  }
  const double rc = observables::charge_radius(curve);

  const auto density = observables::pdf(psi, ctx, observables::default_x_grid());
  std::ostringstream pdf;
  pdf << "x,f_quark,f_antiquark\n";
  for (std::size_t i = 0; i < density.x.size(); ++i) {
    pdf << format_double(density.x[i]) << "," << format_double(density.f[i]) << ","
        << format_double(observables::antiquark_pdf_value(density.rho, density.x[i], ctx.exponents)) << "\n";
  }

  const auto scaling = scaling_for(c, c.encoding == vqe::Encoding::BravyiKitaev ? vqe::Encoding::Direct : c.encoding);

  auto tagged = [&](double value, double err, const char* units) {
    return json{{"value", value}, {"std_error", err}, {"units", units}, {"mode", label}};
  };
  b.summary["encoding"] = vqe::to_string(c.encoding);
  b.summary["mode"] = label;
  if (angles) b.summary["angles_rad"] = {(*angles)[0], (*angles)[1], (*angles)[2]};
  b.summary["wave_function"] = vector_json(psi);
  b.summary["m_pi2"] = tagged(m2, m2_err, "MeV^2");
  b.summary["f_pi_prefactor"] = tagged(prefactor, 0.0, "MeV");
  b.summary["f_pi"] = tagged(f_pi, proj.value > 0.0 ? prefactor * proj.std_error / (2.0 * std::sqrt(proj.value)) : 0.0, "MeV");
  b.summary["r_m2"] = tagged(r2.value, r2.std_error, "fm^2");
  b.summary["r_m"] = tagged(std::sqrt(std::max(0.0, r2.value)), 0.0, "fm");
  b.summary["r_c"] = tagged(rc, 0.0, "MeV^-1");
  b.summary["pdf_norm"] = tagged(observables::pdf_norm(density.rho, ctx.exponents), 0.0, "dimensionless");
  b.summary["shot_scaling"] = {{"prefactor", scaling.fit.prefactor}, {"exponent", scaling.fit.exponent}};
  b.summary["provenance"] = provenance(c, "observables");
  b.csv["form_factor.csv"] = ff.str();
  b.csv["pdf.csv"] = pdf.str();
  b.csv["scaling.csv"] = scaling_csv(scaling);

  log << "Observables [" << label << "]\n"
      << "  m_pi^2  = " << format_double(m2) << " MeV^2\n"
      << "  f_pi    = " << format_double(f_pi) << " MeV\n"
      << "  <r_m^2> = " << format_double(r2.value) << " fm^2\n"
      << "  r_c     = " << format_double(rc) << " MeV^-1\n";
  return b;
}

}  // namespace blfq::cli
