// Copyright 2026 The lindcur Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "lindcur/config.hpp"
#include "lindcur/workflows.hpp"
#include "support.hpp"

using namespace lindcur;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"({
  "model": {"n_sites": 2, "hopping": 1.0, "coupling": [1.0, -1.0]},
  "bath": {"type": "white", "gamma": 0.2}
})";

std::string with(const std::string& model, const std::string& bath, const std::string& extra = "") {
  return "{\"model\": " + model + ", \"bath\": " + bath + extra + "}";
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("lindcur_workflows_" + name);
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

std::vector<std::vector<std::string>> rows(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<std::string>> out;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    out.push_back(f);
  }
  return out;
}

std::string validation_field(const std::string& text) {
  try {
    parse_config_text(text, ".");
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ValidationError) return e.what();
    return std::string("other error: ") + e.what();
  }
  return "accepted";
}

}  // namespace

TEST_CASE("minimal config gets defaults") {
  const Config cfg = parse_config_text(kMinimal, "/some/dir");
  CHECK(cfg.model.n_sites == 2);
  CHECK(cfg.model.potential == std::vector<double>{0.0, 0.0});
  CHECK(cfg.bath_type == "white");
  CHECK(std::get<WhiteNoiseKernel>(cfg.bath).gamma == 0.2);
  CHECK(cfg.run.t_final == 10.0);
  CHECK(cfg.run.dt == 0.01);
  CHECK(cfg.run.initial_state == "ground");
  CHECK_FALSE(cfg.freq_tol.has_value());
  CHECK(cfg.tolerances.positivity == 1e-10);
  CHECK(cfg.tolerances.conservation == 1e-9);
  CHECK(cfg.output.precision == 12);
  CHECK(cfg.output.directory == fs::path("/some/dir"));
}

TEST_CASE("config validation names the field") {
  CHECK(validation_field(with(R"({"n_sites": 3, "hopping": 1, "coupling": [1, 2]})", R"({"type": "white", "gamma": 1})"))
            .find("model.coupling") != std::string::npos);
  CHECK(validation_field(with(R"({"n_sites": 2, "hopping": 1, "coupling": [1, 2]})", R"({"type": "exponential", "gamma": 1})"))
            .find("bath.kappa") != std::string::npos);
  CHECK(validation_field(with(R"({"n_sites": 2, "hopping": 1, "coupling": [1, 2], "mass": 1})", R"({"type": "white", "gamma": 1})"))
            .find("model.mass") != std::string::npos);
  CHECK(validation_field(with(R"({"n_sites": 2, "hopping": 1, "coupling": [1, 2]})", R"({"type": "white", "gamma": 1})",
                              R"(, "extra": {})")).find("extra") != std::string::npos);
  CHECK(validation_field(with(R"({"n_sites": 2, "hopping": 1, "coupling": [1, 2]})", R"({"type": "white", "gamma": 1})",
                              R"(, "spectral": {"freq_tol": 0})")).find("spectral.freq_tol") != std::string::npos);
  CHECK(validation_field(with(R"({"n_sites": 2, "hopping": 1, "coupling": [1, 2]})", R"({"type": "white", "gamma": 1})",
                              R"(, "run": {"initial_state": "site:3"})")).find("run.initial_state") != std::string::npos);
  CHECK(validation_field(with(R"({"n_sites": 2, "hopping": 1, "coupling": [1, 2]})", R"({"type": "white", "gamma": 1})",
                              R"(, "output": {"precision": 30})")).find("output.precision") != std::string::npos);
  CHECK(validation_field(with(R"({"n_sites": 2, "hopping": 1, "coupling": [1, 2]})", R"({"type": "lorentz", "gamma": 1})"))
            .find("bath.type") != std::string::npos);
  CHECK(validation_field(with(R"({"n_sites": 2, "hopping": 1, "coupling": [1, 2]})", R"({"type": "white", "gamma": 1, "kappa": 2})"))
            .find("bath.kappa") != std::string::npos);
}

TEST_CASE("parse errors carry a position") {
  try {
    parse_config_text("{\n  \"model\": {,\n}", ".");
    FAIL("accepted malformed JSON");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_ERROR_CODE(parse_config("/nonexistent/lindcur.json"), ErrorCode::IoError);
}

TEST_CASE("tabulated bath and file states resolve against the config directory") {
  const fs::path dir = scratch("files");
  {
    std::ofstream k(dir / "kernel.csv");
    k << "tau,re_g,im_g\n";
    for (int i = 0; i <= 2000; ++i) k << i * 0.005 << ',' << 0.1 * std::exp(-5.0 * i * 0.005) << ",0\n";
    std::ofstream s(dir / "state.csv");
    s << "row,col,re,im\n1,1,0.5,0\n2,2,0.5,0\n1,2,0.25,0.1\n2,1,0.25,-0.1\n";
    std::ofstream c(dir / "cfg.json");
    c << with(R"({"n_sites": 2, "hopping": 1, "coupling": [1, -1]})", R"({"type": "tabulated", "file": "kernel.csv"})",
              R"(, "run": {"initial_state": "file:state.csv"})");
  }
  const Config cfg = parse_config(dir / "cfg.json");
  REQUIRE(std::holds_alternative<TabulatedKernel>(cfg.bath));
  CHECK(std::get<TabulatedKernel>(cfg.bath).times.size() == 2001);
  const Model model = assemble_model(cfg);
  const ComplexMatrix rho = initial_state(cfg.run.initial_state, model, cfg.base_dir);
  CHECK(rho(0, 1) == Complex(0.25, 0.1));
  CHECK(rho(1, 0) == Complex(0.25, -0.1));
  fs::remove_all(dir);
}

TEST_CASE("initial states") {
  const Model model = assemble_model(testing::chain(3, {0.3, 0.0, -0.2}), testing::reference_bath());
  const ComplexMatrix ground = initial_state("ground", model);
  const ComplexVector g = model.eig.basis.col(0);
  CHECK(max_abs(ground - g * g.adjoint()) == 0.0);
  CHECK(max_abs(initial_state("mixed", model) - ComplexMatrix::Identity(3, 3) / 3.0) == 0.0);
  CHECK(max_abs(initial_state("site:3", model) - testing::unit(3, 2, 2)) == 0.0);
  CHECK_ERROR_CODE(initial_state("site:4", model), ErrorCode::IndexOutOfRange);
  CHECK_ERROR_CODE(initial_state("thermal", model), ErrorCode::InvalidArgument);
}

TEST_CASE("bath rate scale") {
  const Model model = assemble_model(testing::chain(4), testing::reference_bath());
  CHECK(max_bath_rate(model) == doctest::Approx(0.04));
}

TEST_CASE("simulate writes the documented CSV layout") {
  const fs::path dir = scratch("layout");
  Config cfg = parse_config_text(with(R"({"n_sites": 3, "hopping": 1, "potential": [0.2, 0, -0.1], "coupling": [0, 0, 0]})",
                                      R"({"type": "exponential", "gamma": 0.1, "kappa": 5})",
                                      R"(, "run": {"t_final": 0.05, "dt": 0.01, "initial_state": "site:2"}, "output": {"precision": 6})"),
                                 dir);
  run_simulate(cfg, dir);
  std::ifstream d(dir / "density.csv");
  std::string header;
  std::getline(d, header);
  CHECK(header == "time,site,n,dn_dt,lstar_n,residual_raw,residual_corrected");
  std::ifstream c(dir / "currents.csv");
  std::getline(c, header);
  CHECK(header == "time,bond,j_ham,j_diss,j_total");

  const auto density = rows(dir / "density.csv");
  REQUIRE(density.size() == 6 * 3);
  CHECK(density[0][0] == "0.000000e+00");
  CHECK(density[0][1] == "1");
  CHECK(density[1][2] == "1.000000e+00");
  CHECK(density[5][1] == "3");
  CHECK(density[17][0] == "5.000000e-02");
  const auto currents = rows(dir / "currents.csv");
  REQUIRE(currents.size() == 6 * 2);
  for (const auto& r : currents) CHECK(r[3] == "0.000000e+00");
  fs::remove_all(dir);
}

TEST_CASE("two-level flat noise relaxes to half filling") {
  const fs::path dir = scratch("relax");
  const double gamma = 0.2;
  Config cfg = parse_config_text(with(R"({"n_sites": 2, "hopping": 1, "coupling": [1, -1]})", R"({"type": "white", "gamma": 0.2})",
                                      R"(, "run": {"t_final": 30, "dt": 0.01, "initial_state": "site:1"})"),
                                 dir);
  run_simulate(cfg, dir);
  // energy-basis coherence decays at gamma and rotates at the gap 2
  for (const auto& r : rows(dir / "density.csv")) {
    const double t = std::stod(r[0]);
    const double n = std::stod(r[2]);
    const double expected = 0.5 * (1.0 + (r[1] == "1" ? 1.0 : -1.0) * std::exp(-gamma * t) * std::cos(2.0 * t));
    CHECK(std::abs(n - expected) < 1e-8);
  }
  fs::remove_all(dir);
}

TEST_CASE("outputs are byte-identical across runs") {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  const Config cfg = parse_config_text(with(R"({"n_sites": 4, "hopping": 1, "coupling": [1, -1, 1, -1]})",
                                            R"({"type": "exponential", "gamma": 0.1, "kappa": 5})",
                                            R"(, "run": {"t_final": 2, "dt": 0.01, "initial_state": "site:1"})"),
                                       ".");
  run_simulate(cfg, a);
  run_simulate(cfg, b);
  CHECK(slurp(a / "density.csv") == slurp(b / "density.csv"));
  CHECK(slurp(a / "currents.csv") == slurp(b / "currents.csv"));
  CHECK_FALSE(slurp(a / "density.csv").empty());
  run_steady(cfg, a);
  run_steady(cfg, b);
  CHECK(slurp(a / "density.csv") == slurp(b / "density.csv"));
  CHECK(rows(a / "currents.csv").size() == 3);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("negative zero is printed as zero") {
  const fs::path dir = scratch("zero");
  CurrentReport rep;
  rep.time = -0.0;
  rep.site_density = {-0.0, 1.0};
  rep.site_dn_dt = rep.site_lstar_density = rep.residual_raw = rep.residual_corrected = {0.0, -0.0};
  rep.bond_j_ham = {-0.0};
  rep.bond_j_diss = {0.0};
  write_reports({rep}, dir, 3);
  CHECK(slurp(dir / "density.csv").find('-') == std::string::npos);
  CHECK(slurp(dir / "currents.csv").find('-') == std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("verify suites") {
  SUBCASE("zero coupling passes everything") {
    const Config cfg = parse_config_text(with(R"({"n_sites": 3, "hopping": 1, "potential": [0.3, -0.2, 0.5], "coupling": [0, 0, 0]})",
                                              R"({"type": "exponential", "gamma": 0.1, "kappa": 5})",
                                              R"(, "run": {"t_final": 2, "dt": 0.01, "initial_state": "site:2"})"),
                                         ".");
    const auto results = run_verify(cfg, "all");
    CHECK(results.size() == 14);
    for (const auto& r : results) CHECK_MESSAGE(r.pass, r.summary_line());
  }
  SUBCASE("white noise cannot run the oracle") {
    const Config cfg = parse_config_text(kMinimal, ".");
    CHECK_ERROR_CODE(run_verify(cfg, "oracle"), ErrorCode::Incompatible);
    CHECK_ERROR_CODE(run_verify(cfg, "prelindblad"), ErrorCode::Incompatible);
    CHECK_ERROR_CODE(run_verify(cfg, "all"), ErrorCode::Incompatible);
    CHECK_ERROR_CODE(run_verify(cfg, "everything"), ErrorCode::InvalidArgument);
    for (const auto& r : run_verify(cfg, "continuity")) CHECK_MESSAGE(r.pass, r.summary_line());
  }
  SUBCASE("summary line format") {
    const CheckResult r{"demo", 1.5e-3, "1.000e-02", true};
    CHECK(r.summary_line() == "CHECK demo measured=1.500000e-03 threshold=1.000e-02 PASS");
    const CheckResult f{"demo", -0.0, "x", false};
    CHECK(f.summary_line() == "CHECK demo measured=0.000000e+00 threshold=x FAIL");
  }
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for(ErrorCode::PositivityLost) == 2);
  CHECK(exit_code_for(ErrorCode::Incompatible) == 3);
  CHECK(exit_code_for(ErrorCode::ParseError) == 1);
}
