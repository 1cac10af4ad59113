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

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "blfq/cli.hpp"

namespace {

struct FlagValues {
  std::map<std::string, std::string> values;
  bool mitigate = false;
  bool exact = false;
  bool timestamps = false;
  std::string config_file;
};

void add_common_flags(CLI::App* cmd, FlagValues& f) {
  auto text = [&](const std::string& name, const std::string& help) {
    cmd->add_option_function<std::string>("--" + name, [&f, name](const std::string& v) { f.values[name] = v; }, help);
  };
  text("encoding", "Qubit encoding: direct | compact | bk");
  text("mode", "Energy evaluation: exact | sampled | noisy");
  text("shots", "Shots per Pauli term");
  text("seed", "Seed of the sampling streams");
  text("noise-p01", "Readout flip probability P(read 1 | true 0)");
  text("noise-p10", "Readout flip probability P(read 0 | true 1)");
  text("gpi", "NJL coupling G_pi [MeV^-2]");
  text("angles", "Ansatz angles theta1,theta2,theta3 [rad]");
  text("optimizer", "simplex | linear-trust-region");
  text("max-iterations", "Optimizer iteration limit");
  text("ftol", "Absolute energy tolerance [MeV^2]");
  text("restarts", "Optimizer restarts");
  text("repeats", "Repeats per shot count in the scaling table");
  text("out", "Output directory (default: $BLFQ_OUT_DIR or ./results)");
  cmd->add_flag("--mitigate", f.mitigate, "Apply readout-error mitigation (noisy mode)");
  cmd->add_flag("--exact", f.exact, "Use the exact ground state instead of a VQE state");
  cmd->add_flag("--timestamps", f.timestamps, "Record wall-clock time in the provenance block");
  cmd->add_option("--config", f.config_file, "Config file with key = value lines");
}

blfq::cli::RunConfig resolve(const FlagValues& f) {
  blfq::cli::SettingSources src;
  src.flags = f.values;
  if (f.mitigate) src.flags["mitigate"] = "true";
  if (f.exact) src.flags["exact"] = "true";
  if (f.timestamps) src.flags["timestamps"] = "true";
  src.config_file = f.config_file;
  if (const char* env = std::getenv("BLFQ_OUT_DIR"); env) src.env_out_dir = env;
  return blfq::cli::resolve(src);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"BLFQ-NJL pion on a simulated quantum computer"};
  app.require_subcommand(1);
  FlagValues flags;
  std::map<std::string, CLI::App*> cmds;
  for (const auto& [name, help] : std::map<std::string, std::string>{
           {"hamiltonian", "Build the effective Hamiltonian and its qubit encodings"},
           {"vqe", "Minimize the ansatz energy"},
           {"observables", "Evaluate pion observables"},
           {"scaling", "Shots-versus-error scaling for the direct and compact encodings"}}) {
    cmds[name] = app.add_subcommand(name, help);
    add_common_flags(cmds[name], flags);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : blfq::cli::kConfigError;
  }

  using namespace blfq;
  try {
    const auto config = resolve(flags);
    cli::ResultBundle bundle;
    if (cmds["hamiltonian"]->parsed()) bundle = cli::cmd_hamiltonian(config, std::cout);
    if (cmds["vqe"]->parsed()) bundle = cli::cmd_vqe(config, std::cout);
    if (cmds["observables"]->parsed()) bundle = cli::cmd_observables(config, std::cout);
    if (cmds["scaling"]->parsed()) bundle = cli::cmd_scaling(config, std::cout);
    cli::write_bundle(bundle, config.out_dir);
    std::cout << "Wrote " << bundle.summary_name << " to " << config.out_dir << "\n";
    if (bundle.exit_code == cli::kNotConverged) std::cerr << "error: optimizer did not converge\n";
    return bundle.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return cli::kConfigError;
  } catch (const UnsupportedError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return cli::kConfigError;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return cli::kNumericalFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kFailure;
  }
}
