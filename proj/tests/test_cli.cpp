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


#include "blfq/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

using namespace blfq;
using namespace blfq::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("blfq_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(settings, defaults) {
  const RunConfig c;
  EXPECT_EQ(c.encoding, vqe::Encoding::Compact);
  EXPECT_EQ(c.mode, vqe::Mode::Exact);
  EXPECT_EQ(c.shots, 8192u);
  EXPECT_EQ(c.out_dir, "results");
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.mode_label(), "exact");
}

TEST(settings, apply_every_key) {
  RunConfig c;
  apply_setting(c, "encoding", "bk");
  apply_setting(c, "mode", "noisy");
  apply_setting(c, "shots", "1024");
  apply_setting(c, "seed", "5");
  apply_setting(c, "noise-p01", "0.02");
  apply_setting(c, "noise-p10", "0.03");
  apply_setting(c, "mitigate", "true");
  apply_setting(c, "angles", "0.1, 0.2,0.3");
  apply_setting(c, "gpi", "2.5e-4");
  apply_setting(c, "optimizer", "linear-trust-region");
  apply_setting(c, "max-iterations", "50");
  apply_setting(c, "restarts", "1");
  apply_setting(c, "out", "elsewhere");
  EXPECT_EQ(c.encoding, vqe::Encoding::BravyiKitaev);
  EXPECT_EQ(c.mode_label(), "sampled+noise+mitigation");
  EXPECT_EQ(c.shots, 1024u);
  EXPECT_EQ(c.seed, 5u);
  ASSERT_TRUE(c.angles);
  EXPECT_DOUBLE_EQ((*c.angles)[1], 0.2);
  EXPECT_DOUBLE_EQ(c.params.njl_coupling, 2.5e-4);
  EXPECT_EQ(c.optimizer.method, opt::Method::LinearTrustRegion);
  EXPECT_EQ(c.out_dir, "elsewhere");
  const auto s = c.sampling();
  ASSERT_TRUE(s.noise);
  EXPECT_EQ(s.noise->p01.size(), 4u);
  EXPECT_NO_THROW(c.validate());
}

TEST(settings, invalid_values_are_config_errors) {
  RunConfig c;
  EXPECT_THROW(apply_setting(c, "shots", "0"), ConfigError);
  EXPECT_THROW(apply_setting(c, "shots", "12x"), ConfigError);
  EXPECT_THROW(apply_setting(c, "seed", "-1"), ConfigError);
  EXPECT_THROW(apply_setting(c, "encoding", "parity"), ConfigError);
  EXPECT_THROW(apply_setting(c, "angles", "1,2"), ConfigError);
  EXPECT_THROW(apply_setting(c, "angles", "1,2,3,4"), ConfigError);
  EXPECT_THROW(apply_setting(c, "mitigate", "maybe"), ConfigError);
  EXPECT_THROW(apply_setting(c, "colour", "red"), ConfigError);

  RunConfig m;
  m.mitigate = true;
  EXPECT_THROW(m.validate(), ConfigError);
  RunConfig p;
  p.noise_p01 = 0.6;
  p.noise_p10 = 0.5;
  EXPECT_THROW(p.validate(), ConfigError);
  RunConfig q;
  q.params.quark_mass = -3.0;
  EXPECT_THROW(q.validate(), ConfigError);
  RunConfig t;
  t.cutoffs.n_max = 1;
  EXPECT_THROW(t.validate(), ConfigError);
}

TEST(settings, file_flags_and_environment_precedence) {
  const auto dir = scratch("precedence");
  const auto file = dir / "run.cfg";
  std::ofstream(file) << "# pion run\nencoding = direct\nshots = 2048  # per term\nseed=9\nout = from_file\n";
  SettingSources src;
  src.config_file = file.string();
  src.env_out_dir = "from_env";
  auto c = resolve(src);
  EXPECT_EQ(c.encoding, vqe::Encoding::Direct);
  EXPECT_EQ(c.shots, 2048u);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.out_dir, "from_file");
  src.flags["shots"] = "4096";
  src.flags["out"] = "from_flag";
  c = resolve(src);
  EXPECT_EQ(c.shots, 4096u);
  EXPECT_EQ(c.out_dir, "from_flag");
  src = {};
  src.env_out_dir = "from_env";
  EXPECT_EQ(resolve(src).out_dir, "from_env");

  std::ofstream(dir / "bad.cfg") << "encoding direct\n";
  src.config_file = (dir / "bad.cfg").string();
  EXPECT_THROW(resolve(src), ConfigError);
  src.config_file = (dir / "missing.cfg").string();
  EXPECT_THROW(resolve(src), ConfigError);
}

TEST(settings, serialization_round_trips) {
  RunConfig c;
  c.encoding = vqe::Encoding::Direct;
  c.angles = vqe::Angles{0.1, -1.0 / 3.0, 2.0};
  c.params.basis_scale = 230.0;
  c.optimizer.ftol = 0.1;
  const auto dir = scratch("serialize");
  std::ofstream(dir / "c.cfg") << serialize(c);
  SettingSources src;
  src.config_file = (dir / "c.cfg").string();
  const auto back = resolve(src);
  EXPECT_EQ(serialize(back), serialize(c));
  EXPECT_EQ(config_hash(back), config_hash(c));
  RunConfig other = c;
  other.seed += 1;
  EXPECT_NE(config_hash(other), config_hash(c));
  EXPECT_EQ(config_hash(c).size(), 16u);
}

TEST(commands, hamiltonian_bundle) {
  std::ostringstream log;
  const auto b = cmd_hamiltonian(RunConfig{}, log);
  EXPECT_EQ(b.summary_name, "hamiltonian.json");
  EXPECT_EQ(b.summary["H"].size(), 4u);
  EXPECT_EQ(b.summary["pauli"]["compact"].size(), 6u);
  EXPECT_EQ(b.summary["pauli"]["direct"].size(), 17u);
  EXPECT_EQ(b.summary["pauli"]["bk"].size(), 17u);
  EXPECT_NEAR(b.summary["spectrum"][0].get<double>(), 19476.1, 0.1);
  EXPECT_FALSE(b.summary["provenance"].contains("timestamp"));
  EXPECT_NE(log.str().find("Spectrum"), std::string::npos);
  EXPECT_EQ(b.exit_code, kOk);
}

TEST(commands, vqe_bundle) {
  std::ostringstream log;
  RunConfig c;
  c.mode = vqe::Mode::Sampled;
  const auto b = cmd_vqe(c, log);
  EXPECT_EQ(b.summary["mode"], "sampled");
  const auto& csv = b.csv.at("vqe_trace.csv");
  EXPECT_EQ(csv.rfind("iteration,best_energy_MeV2,mode\n", 0), 0u);
  EXPECT_NE(csv.find(",sampled\n"), std::string::npos);
  EXPECT_GT(b.summary["std_error_MeV2"].get<double>(), 0.0);
}

TEST(commands, vqe_reports_nonconvergence) {
  std::ostringstream log;
  RunConfig c;
  c.optimizer.max_iterations = 2;
  const auto b = cmd_vqe(c, log);
  EXPECT_EQ(b.exit_code, kNotConverged);
  EXPECT_FALSE(b.summary["converged"].get<bool>());
  EXPECT_NE(log.str().find("NOT CONVERGED"), std::string::npos);
}

TEST(commands, observables_bundle_exact) {
  std::ostringstream log;
  RunConfig c;
  c.exact = true;
  c.repeats = 5;
  const auto b = cmd_observables(c, log);
  EXPECT_EQ(b.summary["mode"], "exact");
  EXPECT_NEAR(b.summary["f_pi_prefactor"]["value"].get<double>(), 61.6, 0.02 * 61.6);
  EXPECT_NEAR(b.summary["r_c"]["value"].get<double>(), 6.31e-3, 0.01 * 6.31e-3);
  EXPECT_NEAR(b.summary["pdf_norm"]["value"].get<double>(), 1.0, 1e-6);
  EXPECT_EQ(b.summary["r_m2"]["units"], "fm^2");
  EXPECT_EQ(b.csv.at("form_factor.csv").rfind("Q2_MeV2,F_P,std_error\n", 0), 0u);
  EXPECT_EQ(b.csv.at("pdf.csv").rfind("x,f_quark,f_antiquark\n", 0), 0u);
  EXPECT_TRUE(b.csv.count("scaling.csv"));
  std::size_t lines = 0;
  for (char ch : b.csv.at("pdf.csv")) lines += ch == '\n';
  EXPECT_EQ(lines, 100u);
}

TEST(commands, observables_on_given_angles_in_noisy_mode) {
  std::ostringstream log;
  RunConfig c;
  c.encoding = vqe::Encoding::Direct;
  c.mode = vqe::Mode::Noisy;
  c.noise_p01 = c.noise_p10 = 0.02;
  c.mitigate = true;
  c.repeats = 3;
  c.angles = vqe::good_initial_guess(vqe::Encoding::Direct);
  const auto b = cmd_observables(c, log);
  EXPECT_EQ(b.summary["f_pi"]["mode"], "sampled+noise+mitigation");
  EXPECT_GT(b.summary["m_pi2"]["std_error"].get<double>(), 0.0);
}

TEST(commands, scaling_bundle) {
  std::ostringstream log;
  RunConfig c;
  c.repeats = 20;
  const auto b = cmd_scaling(c, log);
  EXPECT_TRUE(b.summary.contains("direct"));
  EXPECT_TRUE(b.summary.contains("compact"));
  EXPECT_EQ(b.csv.at("scaling_direct.csv").rfind("shots_per_term,rms_relative_error\n", 0), 0u);
}

TEST(commands, timestamps_only_on_request) {
  RunConfig c;
  c.timestamps = true;
  EXPECT_TRUE(provenance(c, "x").contains("timestamp"));
}

TEST(bundles, seeded_reruns_are_byte_identical) {
  RunConfig c;
  c.encoding = vqe::Encoding::Direct;
  c.mode = vqe::Mode::Noisy;
  c.noise_p01 = 0.03;
  c.noise_p10 = 0.01;
  c.mitigate = true;
  std::ostringstream log;
  const auto a = scratch("rerun_a");
  const auto b = scratch("rerun_b");
  write_bundle(cmd_vqe(c, log), a.string());
  write_bundle(cmd_vqe(c, log), b.string());
  for (const char* name : {"vqe.json", "vqe_trace.csv"}) {
    const auto x = slurp(a / name);
    EXPECT_FALSE(x.empty());
    EXPECT_EQ(x, slurp(b / name)) << name;
  }
}
