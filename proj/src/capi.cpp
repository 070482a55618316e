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

#include "lindcur/lindcur.h"

#include <algorithm>
#include <exception>
#include <memory>
#include <string>

#include "lindcur/workflows.hpp"

struct lcur_config {
  lindcur::Config cfg;
  std::string output_directory;
};

struct lcur_model {
  explicit lcur_model(lindcur::Model m) : model(std::move(m)) {}
  lindcur::Model model;
};

namespace {

thread_local std::string last_error;

template <class F>
lcur_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return LCUR_OK;
  } catch (const lindcur::Error& e) {
    last_error = e.what();
    return static_cast<lcur_status>(e.code());
  } catch (const std::exception& e) {
    last_error = e.what();
    return LCUR_INTERNAL;
  } catch (...) {
    last_error = "unknown exception";
    return LCUR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw lindcur::Error(lindcur::ErrorCode::InvalidArgument, what);
}

lindcur::ComplexMatrix read_matrix(const double* data, std::size_t len, int n) {
  const auto nn = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  if (data == nullptr || len != 2 * nn)
    throw lindcur::Error(lindcur::ErrorCode::DimensionMismatch, "density matrix buffer must hold 2*n*n doubles");
  lindcur::ComplexMatrix m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const auto k = 2 * (static_cast<std::size_t>(j) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i));
      m(i, j) = lindcur::Complex(data[k], data[k + 1]);
    }
  return m;
}

void write_matrix(const lindcur::ComplexMatrix& m, double* data, std::size_t len) {
  const auto n = static_cast<std::size_t>(m.rows());
  if (data == nullptr || len != 2 * n * n)
    throw lindcur::Error(lindcur::ErrorCode::DimensionMismatch, "density matrix buffer must hold 2*n*n doubles");
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const auto k = 2 * (static_cast<std::size_t>(j) * n + static_cast<std::size_t>(i));
      data[k] = m(i, j).real();
      data[k + 1] = m(i, j).imag();
    }
}

void write_values(const std::vector<double>& v, double* out, std::size_t out_len) {
  if (out == nullptr || out_len != v.size())
    throw lindcur::Error(lindcur::ErrorCode::LengthMismatch,
                         "output buffer must hold " + std::to_string(v.size()) + " values");
  std::copy(v.begin(), v.end(), out);
}

}  // namespace

extern "C" {

const char* lcur_version(void) { return "1.0.0"; }

const char* lcur_status_name(lcur_status status) {
  if (status == LCUR_OK) return "Ok";
  if (status == LCUR_INTERNAL) return "Internal";
  if (status < LCUR_NOT_HERMITIAN || status > LCUR_INCOMPATIBLE) return "Unknown";
  return lindcur::error_code_name(static_cast<lindcur::ErrorCode>(status)).data();
}

const char* lcur_last_error_message(void) { return last_error.c_str(); }

int lcur_exit_code(lcur_status status) {
  if (status == LCUR_OK) return 0;
  if (status == LCUR_INTERNAL) return 1;
  return lindcur::exit_code_for(static_cast<lindcur::ErrorCode>(status));
}

lcur_status lcur_config_load(const char* path, lcur_config** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "lcur_config_load: null argument");
    *out = nullptr;
    auto c = std::make_unique<lcur_config>();
    c->cfg = lindcur::parse_config(path);
    c->output_directory = c->cfg.output.directory.string();
    *out = c.release();
  });
}

lcur_status lcur_config_parse(const char* json_text, const char* base_dir, lcur_config** out) {
  return guarded([&] {
    require(json_text != nullptr && out != nullptr, "lcur_config_parse: null argument");
    *out = nullptr;
    auto c = std::make_unique<lcur_config>();
    c->cfg = lindcur::parse_config_text(json_text, base_dir != nullptr ? base_dir : ".");
    c->output_directory = c->cfg.output.directory.string();
    *out = c.release();
  });
}

void lcur_config_destroy(lcur_config* cfg) { delete cfg; }

const char* lcur_config_output_directory(const lcur_config* cfg) {
  return cfg != nullptr ? cfg->output_directory.c_str() : "";
}

lcur_status lcur_simulate(const lcur_config* cfg, const char* out_dir) {
  return guarded([&] {
    require(cfg != nullptr, "lcur_simulate: null config");
    lindcur::run_simulate(cfg->cfg, out_dir != nullptr ? std::filesystem::path(out_dir) : cfg->cfg.output.directory);
  });
}

lcur_status lcur_steady(const lcur_config* cfg, const char* out_dir) {
  return guarded([&] {
    require(cfg != nullptr, "lcur_steady: null config");
    lindcur::run_steady(cfg->cfg, out_dir != nullptr ? std::filesystem::path(out_dir) : cfg->cfg.output.directory);
  });
}

lcur_status lcur_verify(const lcur_config* cfg, const char* suite, lcur_line_fn on_line, void* user,
                        int* all_passed) {
  return guarded([&] {
    require(cfg != nullptr && suite != nullptr, "lcur_verify: null argument");
    const auto results = lindcur::run_verify(cfg->cfg, suite);
    bool ok = true;
    for (const auto& r : results) {
      ok = ok && r.pass;
      if (on_line != nullptr) on_line(r.summary_line().c_str(), user);
    }
    if (all_passed != nullptr) *all_passed = ok ? 1 : 0;
  });
}

lcur_status lcur_model_create(const lcur_config* cfg, lcur_model** out) {
  return guarded([&] {
    require(cfg != nullptr && out != nullptr, "lcur_model_create: null argument");
    *out = nullptr;
    *out = new lcur_model(lindcur::assemble_model(cfg->cfg));
  });
}

void lcur_model_destroy(lcur_model* model) { delete model; }

int lcur_model_sites(const lcur_model* model) { return model != nullptr ? model->model.ops.n_sites() : 0; }

lcur_status lcur_model_steady_state(const lcur_model* model, double* rho, size_t len) {
  return guarded([&] {
    require(model != nullptr, "lcur_model_steady_state: null model");
    write_matrix(lindcur::steady_state(model->model.generator), rho, len);
  });
}

lcur_status lcur_model_initial_state(const lcur_model* model, const lcur_config* cfg, double* rho, size_t len) {
  return guarded([&] {
    require(model != nullptr && cfg != nullptr, "lcur_model_initial_state: null argument");
    write_matrix(lindcur::initial_state(cfg->cfg.run.initial_state, model->model, cfg->cfg.base_dir), rho, len);
  });
}

lcur_status lcur_model_jd_expectation(const lcur_model* model, const double* rho, size_t len, double* out,
                                      size_t out_len) {
  return guarded([&] {
    require(model != nullptr, "lcur_model_jd_expectation: null model");
    const auto m = read_matrix(rho, len, model->model.ops.n_sites());
    write_values(lindcur::jd_expectation(model->model.engine, m), out, out_len);
  });
}

lcur_status lcur_model_jd_cumulative(const lcur_model* model, const double* rho, size_t len, double* out,
                                     size_t out_len) {
  return guarded([&] {
    require(model != nullptr, "lcur_model_jd_cumulative: null model");
    const auto m = read_matrix(rho, len, model->model.ops.n_sites());
    write_values(lindcur::jd_cumulative_1d(model->model.generator, model->model.ops, m), out, out_len);
  });
}

lcur_status lcur_model_lstar_expectation(const lcur_model* model, const double* rho, size_t len, double* out,
                                         size_t out_len) {
  return guarded([&] {
    require(model != nullptr, "lcur_model_lstar_expectation: null model");
    const auto m = read_matrix(rho, len, model->model.ops.n_sites());
    std::vector<double> v;
    for (const auto& a : lindcur::lstar_density(model->model.generator, model->model.ops))
      v.push_back(lindcur::trace_product(a, m).real());
    write_values(v, out, out_len);
  });
}

lcur_status lcur_model_divergence_check(const lcur_model* model, double* relative) {
  return guarded([&] {
    require(model != nullptr && relative != nullptr, "lcur_model_divergence_check: null argument");
    *relative =
        lindcur::divergence_identity_check(model->model.engine, model->model.generator, model->model.ops).relative();
  });
}

}  // extern "C"
