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

#include "lindcur/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lindcur/error.hpp"

namespace lindcur {

namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::ValidationError, field + ": " + why);
}

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) invalid(where, "expected an object");
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) known = known || item.key() == key;
    if (!known) invalid(where.empty() ? item.key() : where + "." + item.key(), "unknown key");
  }
}

const json* member(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double number(const json& obj, const char* key, const std::string& field) {
  const json* v = member(obj, key);
  if (!v) invalid(field, "required");
  if (!v->is_number()) invalid(field, "expected a number");
  const double x = v->get<double>();
  if (!std::isfinite(x)) invalid(field, "must be finite");
  return x;
}

std::optional<double> optional_number(const json& obj, const char* key, const std::string& field) {
  if (!member(obj, key)) return std::nullopt;
  return number(obj, key, field);
}

std::string string(const json& obj, const char* key, const std::string& field) {
  const json* v = member(obj, key);
  if (!v) invalid(field, "required");
  if (!v->is_string()) invalid(field, "expected a string");
  return v->get<std::string>();
}

std::vector<double> number_array(const json& obj, const char* key, const std::string& field) {
  const json* v = member(obj, key);
  if (!v) invalid(field, "required");
  if (!v->is_array()) invalid(field, "expected an array");
  std::vector<double> out;
  for (const auto& x : *v) {
    if (!x.is_number()) invalid(field, "expected numbers");
    out.push_back(x.get<double>());
    if (!std::isfinite(out.back())) invalid(field, "must be finite");
  }
  return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

void parse_model(const json& j, Config& cfg) {
  only_keys(j, "model", {"n_sites", "hopping", "potential", "coupling"});
  const json* n = member(j, "n_sites");
  if (!n) invalid("model.n_sites", "required");
  if (!n->is_number_integer()) invalid("model.n_sites", "expected an integer");
  cfg.model.n_sites = n->get<int>();
  if (cfg.model.n_sites < 2) invalid("model.n_sites", "must be >= 2");
  cfg.model.hopping = number(j, "hopping", "model.hopping");
  if (!(cfg.model.hopping > 0.0)) invalid("model.hopping", "must be > 0");
  const auto sites = static_cast<std::size_t>(cfg.model.n_sites);
  if (member(j, "potential")) {
    cfg.model.potential = number_array(j, "potential", "model.potential");
    if (cfg.model.potential.size() != sites) invalid("model.potential", "must have n_sites entries");
  } else {
    cfg.model.potential.assign(sites, 0.0);
  }
  cfg.model.coupling = number_array(j, "coupling", "model.coupling");
  if (cfg.model.coupling.size() != sites) invalid("model.coupling", "must have n_sites entries");
}

void parse_bath(const json& j, Config& cfg) {
  only_keys(j, "bath", {"type", "gamma", "kappa", "omega0", "file"});
  cfg.bath_type = string(j, "type", "bath.type");
  if (cfg.bath_type == "exponential") {
    ExponentialKernel k;
    k.gamma = number(j, "gamma", "bath.gamma");
    k.kappa = number(j, "kappa", "bath.kappa");
    k.omega0 = optional_number(j, "omega0", "bath.omega0").value_or(0.0);
    if (member(j, "file")) invalid("bath.file", "only valid for tabulated baths");
    if (k.gamma < 0.0) invalid("bath.gamma", "must be >= 0");
    if (!(k.kappa > 0.0)) invalid("bath.kappa", "must be > 0");
    cfg.bath = k;
  } else if (cfg.bath_type == "white") {
    WhiteNoiseKernel k;
    k.gamma = number(j, "gamma", "bath.gamma");
    if (k.gamma < 0.0) invalid("bath.gamma", "must be >= 0");
    for (const char* key : {"kappa", "omega0", "file"})
      if (member(j, key)) invalid(std::string("bath.") + key, "not valid for white-noise baths");
    cfg.bath = k;
  } else if (cfg.bath_type == "tabulated") {
    const auto file = resolve(cfg.base_dir, string(j, "file", "bath.file"));
    if (!std::filesystem::exists(file)) invalid("bath.file", "file not found: " + file.string());
    for (const char* key : {"gamma", "kappa", "omega0"})
      if (member(j, key)) invalid(std::string("bath.") + key, "not valid for tabulated baths");
    try {
      cfg.bath = load_tabulated_kernel(file);
    } catch (const Error& e) {
      invalid("bath.file", e.what());
    }
  } else {
    invalid("bath.type", "expected \"exponential\", \"white\" or \"tabulated\"");
  }
}

void parse_run(const json& j, Config& cfg) {
  only_keys(j, "run", {"t_final", "dt", "initial_state"});
  if (member(j, "t_final")) cfg.run.t_final = number(j, "t_final", "run.t_final");
  if (member(j, "dt")) cfg.run.dt = number(j, "dt", "run.dt");
  if (member(j, "initial_state")) cfg.run.initial_state = string(j, "initial_state", "run.initial_state");
  if (cfg.run.t_final < 0.0) invalid("run.t_final", "must be >= 0");
  if (!(cfg.run.dt > 0.0)) invalid("run.dt", "must be > 0");

  const std::string& s = cfg.run.initial_state;
  if (s == "ground" || s == "mixed") return;
  if (s.rfind("site:", 0) == 0) {
    const std::string digits = s.substr(5);
    int site = 0;
    std::istringstream in(digits);
    if (digits.empty() || !(in >> site) || !in.eof() || site < 1 || site > cfg.model.n_sites)
      invalid("run.initial_state", "site index must be in 1..n_sites");
    return;
  }
  if (s.rfind("file:", 0) == 0) {
    const auto file = resolve(cfg.base_dir, s.substr(5));
    if (!std::filesystem::exists(file)) invalid("run.initial_state", "file not found: " + file.string());
    cfg.run.initial_state = "file:" + file.string();
    return;
  }
  invalid("run.initial_state", "expected ground, mixed, site:<k> or file:<path>");
}

void parse_rest(const json& root, Config& cfg) {
  if (const json* j = member(root, "spectral")) {
    only_keys(*j, "spectral", {"freq_tol"});
    cfg.freq_tol = optional_number(*j, "freq_tol", "spectral.freq_tol");
    if (cfg.freq_tol && !(*cfg.freq_tol > 0.0)) invalid("spectral.freq_tol", "must be > 0");
  }
  if (const json* j = member(root, "tolerances")) {
    only_keys(*j, "tolerances", {"positivity", "conservation"});
    if (member(*j, "positivity")) cfg.tolerances.positivity = number(*j, "positivity", "tolerances.positivity");
    if (member(*j, "conservation"))
      cfg.tolerances.conservation = number(*j, "conservation", "tolerances.conservation");
    if (cfg.tolerances.positivity < 0.0) invalid("tolerances.positivity", "must be >= 0");
    if (!(cfg.tolerances.conservation > 0.0)) invalid("tolerances.conservation", "must be > 0");
  }
  if (const json* j = member(root, "output")) {
    only_keys(*j, "output", {"directory", "precision"});
    if (member(*j, "directory")) cfg.output.directory = resolve(cfg.base_dir, string(*j, "directory", "output.directory"));
    if (const json* p = member(*j, "precision")) {
      if (!p->is_number_integer()) invalid("output.precision", "expected an integer");
      cfg.output.precision = p->get<int>();
      if (cfg.output.precision < 1 || cfg.output.precision > 17) invalid("output.precision", "must be in 1..17");
    }
  }
}

}  // namespace

Config parse_config_text(const std::string& text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(column) +
                                           ": " + e.what());
  }

  Config cfg;
  cfg.base_dir = base_dir;
  cfg.output.directory = base_dir;
  only_keys(root, "", {"model", "bath", "run", "spectral", "tolerances", "output"});
  const json* model = member(root, "model");
  if (!model) invalid("model", "required");
  parse_model(*model, cfg);
  const json* bath = member(root, "bath");
  if (!bath) invalid("bath", "required");
  parse_bath(*bath, cfg);
  if (const json* run = member(root, "run")) parse_run(*run, cfg);
  parse_rest(root, cfg);
  return cfg;
}

Config parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  auto base = path.parent_path();
  if (base.empty()) base = ".";
  return parse_config_text(text.str(), base);
}

}  // namespace lindcur
