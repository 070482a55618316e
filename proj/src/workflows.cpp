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

#include "lindcur/workflows.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lindcur/checks.hpp"

namespace lindcur {
namespace {

constexpr std::uint64_t kSanitySeed = 20260415;
constexpr int kSanitySamples = 100;

Model build(const ChainSpec& chain, const CorrelationKernel& kernel, LatticeOperators ops, EigenSystem eig,
            BohrSpectrum spectrum, double positivity_tol) {
  SpectralOperator coupling = decompose(ops.coupling, eig, spectrum);
  HalfFourierTable gplus = half_fourier_table(kernel, spectrum);
  PositivityReport positivity = validate_positivity(kernel, spectrum, positivity_tol);
  LindbladGenerator generator = build_generator(coupling, gplus, eig, positivity_tol);
  JDEngine engine = build_engine(ops, eig, spectrum, gplus);
  return Model{chain,    kernel,     std::move(ops),       std::move(eig),       std::move(spectrum),
               std::move(coupling), std::move(gplus), std::move(positivity), std::move(generator),
               std::move(engine)};
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

double parse_number(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, where + ": not a number: '" + s + "'");
  }
}

ComplexMatrix state_from_file(const std::filesystem::path& path, int n) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open initial state file " + path.string());
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "row,col,re,im")
    throw Error(ErrorCode::ParseError, path.string() + ":1: expected header row,col,re,im");
  ComplexMatrix rho = ComplexMatrix::Zero(n, n);
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(lineno);
    const auto f = split_csv(line);
    if (f.size() != 4) throw Error(ErrorCode::ParseError, where + ": expected 4 fields");
    const double row = parse_number(f[0], where);
    const double col = parse_number(f[1], where);
    if (row != std::floor(row) || col != std::floor(col) || row < 1 || col < 1 || row > n || col > n)
      throw Error(ErrorCode::IndexOutOfRange, where + ": index outside 1.." + std::to_string(n));
    rho(static_cast<int>(row) - 1, static_cast<int>(col) - 1) =
        Complex(parse_number(f[2], where), parse_number(f[3], where));
  }
  return rho;
}

std::string format_value(double v, int precision) {
  if (v == 0.0) v = 0.0;  // drops the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", precision, v);
  return buf;
}

std::string format_threshold(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

double max_abs_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

CheckResult at_most(std::string name, double measured, double limit) {
  return {std::move(name), measured, format_threshold("%.3e", limit), measured <= limit};
}

// The unique stationary state if there is one, else the long-time limit of
// `start`. With no decaying dynamics at all (zero dissipator) there is no
// limit and `start` itself is used.
ComplexMatrix reference_state(const Model& model, const ComplexMatrix& start) {
  try {
    return steady_state(model.generator);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateKernel) throw;
  }
  try {
    return stationary_limit(model.generator, start);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoConvergence) throw;
    return start;
  }
}

void continuity_suite(const Config& cfg, const Model& model, const ComplexMatrix& rho0,
                      std::vector<CheckResult>& out) {
  out.push_back(at_most("hamiltonian_continuity", continuity_identity_deviation(model.ops), 1e-14));

  const auto sanity = generator_sanity(model.generator, kSanitySamples, kSanitySeed);
  out.push_back(at_most("generator_trace", sanity.trace, 1e-11));
  out.push_back(at_most("generator_unital", sanity.unital, 1e-11));
  out.push_back(at_most("generator_hermiticity", sanity.hermiticity, 1e-11));

  const auto div = divergence_identity_check(model.engine, model.generator, model.ops);
  out.push_back(at_most("divergence_identity", div.relative(), cfg.tolerances.conservation));

  const ComplexMatrix steady = reference_state(model, rho0);
  double cumulative = 0.0;
  for (const ComplexMatrix* rho : {&steady, &rho0}) {
    const auto spectral = jd_expectation(model.engine, *rho);
    const auto summed = jd_cumulative_1d(model.generator, model.ops, *rho);
    cumulative = std::max(cumulative, max_abs_diff(spectral, summed));
  }
  out.push_back(at_most("cumulative_agreement", cumulative, 1e-6));

  const Trajectory traj = evolve(model.generator, rho0, cfg.run.t_final, cfg.run.dt);
  const auto reports = continuity_report(model.generator, model.ops, model.engine, traj);
  double raw = 0.0, corrected = 0.0, identity = 0.0;
  for (const auto& rep : reports) {
    raw = std::max(raw, max_abs_of(rep.residual_raw));
    corrected = std::max(corrected, max_abs_of(rep.residual_corrected));
    identity = std::max(identity, max_abs_diff(rep.residual_raw, rep.site_lstar_density));
  }
  out.push_back(at_most("residual_identity", identity, cfg.tolerances.conservation));
  // without dissipation both residuals are rounding noise
  const double ratio = corrected / std::max(raw, cfg.tolerances.conservation);
  out.push_back(at_most("conservation", ratio, 1e-3));
}

void oracle_suite(const Model& model, const ComplexMatrix& rho0, std::vector<CheckResult>& out) {
  const double w_min = model.spectrum.min_abs_nonzero_frequency();
  const double dt = max_quadrature_step(model.kernel, model.spectrum.max_abs_frequency());
  if (w_min <= 0.0) {
    // a single level: no transitions, nothing to integrate
    for (const char* name : {"oracle_agreement_steady", "oracle_agreement_initial"}) out.push_back(at_most(name, 0.0, 0.05));
    out.push_back({"oracle_convergence_steady", 0.0, "non-increasing", true});
    out.push_back({"oracle_trend_initial", 0.0, "below-first", true});
    return;
  }
  const std::vector<double> times{50.0 / w_min, 100.0 / w_min, 200.0 / w_min};

  const auto steady = oracle_ladder(model, reference_state(model, rho0), times, dt);
  out.push_back(at_most("oracle_agreement_steady", steady.relative_error(2), 0.05));
  out.push_back({"oracle_convergence_steady", steady.errors.back(), "non-increasing", steady.decreasing()});

  // Away from stationarity the remainder oscillates on a 1/t envelope, so
  // only the overall trend is required.
  const auto probe = oracle_ladder(model, rho0, times, dt);
  out.push_back(at_most("oracle_agreement_initial", probe.relative_error(2), 0.05));
  out.push_back({"oracle_trend_initial", probe.errors.back(), "below-first",
                 probe.errors.back() < probe.errors.front() || probe.errors.front() <= 1e-12});
}

void prelindblad_suite(const Model& model, std::vector<CheckResult>& out) {
  const double kappa = kernel_decay_rate(model.kernel);
  const double dt = max_quadrature_step(model.kernel, model.spectrum.max_abs_frequency()) / 25.0;
  const auto ladder = prelindblad_ladder(model, {25.0 / kappa, 50.0 / kappa, 100.0 / kappa, 200.0 / kappa}, dt);
  out.push_back({"prelindblad_monotone", ladder.distances.back(), "decreasing", ladder.trivial || ladder.monotone});
  const bool in_band = ladder.slope >= -1.3 && ladder.slope <= -0.7;
  out.push_back({"prelindblad_slope", ladder.slope, "[-1.3,-0.7]", ladder.trivial || in_band});
}

}  // namespace

Model assemble_model(const ChainSpec& chain, const CorrelationKernel& kernel, std::optional<double> freq_tol,
                     double positivity_tol) {
  validate_kernel(kernel);
  LatticeOperators ops = build_chain(chain);
  EigenSystem eig = hermitian_eigensystem(ops.hamiltonian);
  const double tol = freq_tol.value_or(default_frequency_tolerance(eig));
  BohrSpectrum spectrum = bohr_frequencies(eig, tol);
  return build(chain, kernel, std::move(ops), std::move(eig), std::move(spectrum), positivity_tol);
}

Model assemble_model(const Config& cfg) {
  return assemble_model(cfg.model, cfg.bath, cfg.freq_tol, cfg.tolerances.positivity);
}

ComplexMatrix initial_state(const std::string& spec, const Model& model, const std::filesystem::path& base_dir) {
  const int n = model.ops.n_sites();
  ComplexMatrix rho;
  if (spec == "ground") {
    const ComplexVector v = model.eig.basis.col(0);
    rho = v * v.adjoint();
  } else if (spec == "mixed") {
    rho = ComplexMatrix::Identity(n, n) / static_cast<double>(n);
  } else if (spec.rfind("site:", 0) == 0) {
    const double k = parse_number(spec.substr(5), "initial_state");
    if (k != std::floor(k) || k < 1 || k > n)
      throw Error(ErrorCode::IndexOutOfRange, "initial_state: site must be in 1.." + std::to_string(n));
    rho = ComplexMatrix::Zero(n, n);
    rho(static_cast<int>(k) - 1, static_cast<int>(k) - 1) = 1.0;
  } else if (spec.rfind("file:", 0) == 0) {
    std::filesystem::path path(spec.substr(5));
    if (path.is_relative()) path = base_dir / path;
    rho = state_from_file(path, n);
  } else {
    throw Error(ErrorCode::InvalidArgument, "initial_state: unknown specification '" + spec + "'");
  }
  check_density_matrix(rho);
  return rho;
}

double max_bath_rate(const Model& model) {
  double rate = 0.0;
  for (const auto& e : model.positivity.entries) rate = std::max(rate, e.spectral_density);
  return rate;
}

void write_reports(const std::vector<CurrentReport>& reports, const std::filesystem::path& directory,
                   int precision) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + directory.string() + ": " + ec.message());

  const auto open = [&](const char* name) {
    std::ofstream f(directory / name, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::IoError, "cannot write " + (directory / name).string());
    return f;
  };
  const auto v = [precision](double x) { return format_value(x, precision); };

  std::ofstream density = open("density.csv");
  density << "time,site,n,dn_dt,lstar_n,residual_raw,residual_corrected\n";
  for (const auto& rep : reports)
    for (std::size_t r = 0; r < rep.site_density.size(); ++r)
      density << v(rep.time) << ',' << r + 1 << ',' << v(rep.site_density[r]) << ',' << v(rep.site_dn_dt[r])
              << ',' << v(rep.site_lstar_density[r]) << ',' << v(rep.residual_raw[r]) << ','
              << v(rep.residual_corrected[r]) << '\n';

  std::ofstream currents = open("currents.csv");
  currents << "time,bond,j_ham,j_diss,j_total\n";
  for (const auto& rep : reports)
    for (std::size_t b = 0; b < rep.bond_j_ham.size(); ++b)
      currents << v(rep.time) << ',' << b + 1 << ',' << v(rep.bond_j_ham[b]) << ',' << v(rep.bond_j_diss[b])
               << ',' << v(rep.bond_j_ham[b] + rep.bond_j_diss[b]) << '\n';

  if (!density || !currents) throw Error(ErrorCode::IoError, "write failed in " + directory.string());
}

void run_simulate(const Config& cfg, const std::filesystem::path& out_dir) {
  const Model model = assemble_model(cfg);
  const ComplexMatrix rho0 = initial_state(cfg.run.initial_state, model, cfg.base_dir);
  const Trajectory traj = evolve(model.generator, rho0, cfg.run.t_final, cfg.run.dt);
  write_reports(continuity_report(model.generator, model.ops, model.engine, traj), out_dir, cfg.output.precision);
}

void run_steady(const Config& cfg, const std::filesystem::path& out_dir) {
  const Model model = assemble_model(cfg);
  Trajectory traj;
  traj.times.push_back(0.0);
  try {
    traj.states.push_back(steady_state(model.generator));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateKernel) throw;
    const ComplexMatrix rho0 = initial_state(cfg.run.initial_state, model, cfg.base_dir);
    try {
      traj.states.push_back(stationary_limit(model.generator, rho0));
    } catch (const Error& limit) {
      throw Error(ErrorCode::DegenerateKernel, std::string(e.what()) + "; " + limit.what());
    }
    log_warning(std::string(e.what()) + "; reporting the long-time limit of run.initial_state instead");
  }
  write_reports(continuity_report(model.generator, model.ops, model.engine, traj), out_dir, cfg.output.precision);
}

std::string CheckResult::summary_line() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", measured == 0.0 ? 0.0 : measured);
  return "CHECK " + name + " measured=" + buf + " threshold=" + threshold + (pass ? " PASS" : " FAIL");
}

std::vector<CheckResult> run_verify(const Config& cfg, const std::string& suite) {
  const bool all = suite == "all";
  if (!all && suite != "continuity" && suite != "oracle" && suite != "prelindblad")
    throw Error(ErrorCode::InvalidArgument, "unknown suite '" + suite + "'");
  if ((all || suite == "oracle" || suite == "prelindblad") && !is_pointwise(cfg.bath))
    throw Error(ErrorCode::Incompatible, "suite '" + suite + "' needs a pointwise-evaluable bath, got '" +
                                             cfg.bath_type + "'");

  const Model model = assemble_model(cfg);
  const ComplexMatrix rho0 = initial_state(cfg.run.initial_state, model, cfg.base_dir);
  std::vector<CheckResult> out;
  if (all || suite == "continuity") continuity_suite(cfg, model, rho0, out);
  if (all || suite == "oracle") oracle_suite(model, rho0, out);
  if (all || suite == "prelindblad") prelindblad_suite(model, out);
  return out;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::PositivityLost:
      return 2;
    case ErrorCode::Incompatible:
      return 3;
    default:
      return 1;
  }
}

}  // namespace lindcur
