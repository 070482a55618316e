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

#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "lindcur/lindcur.h"

namespace {

int fail(lcur_status status) {
  std::string msg = lcur_last_error_message();
  for (char& c : msg)
    if (c == '\n' || c == '\r') c = ' ';
  std::fprintf(stderr, "ERROR %s: %s\n", lcur_status_name(status), msg.c_str());
  return lcur_exit_code(status);
}

struct ConfigHandle {
  lcur_config* ptr = nullptr;
  ~ConfigHandle() { lcur_config_destroy(ptr); }
};

void print_line(const char* line, void*) {
  std::fputs(line, stdout);
  std::fputc('\n', stdout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dissipative currents of lattice open quantum systems"};
  app.set_version_flag("--version", lcur_version());
  app.require_subcommand(1);

  std::string config_path, out_dir, suite = "all";
  auto* simulate = app.add_subcommand("simulate", "Evolve the configured state and write density/current CSVs");
  auto* steady = app.add_subcommand("steady", "Write density/current CSVs for the stationary state");
  auto* verify = app.add_subcommand("verify", "Run a verification suite and print one CHECK line per check");
  for (auto* sub : {simulate, steady, verify})
    sub->add_option("--config", config_path, "JSON configuration")->required();
  for (auto* sub : {simulate, steady})
    sub->add_option("--out", out_dir, "Output directory (defaults to output.directory)");
  verify->add_option("--suite", suite, "continuity, oracle, prelindblad or all")
      ->check(CLI::IsMember({"continuity", "oracle", "prelindblad", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::string msg = e.what();
    for (char& c : msg)
      if (c == '\n') c = ' ';
    std::fprintf(stderr, "ERROR Usage: %s\n", msg.c_str());
    return 1;
  }

  ConfigHandle cfg;
  if (lcur_status s = lcur_config_load(config_path.c_str(), &cfg.ptr); s != LCUR_OK) return fail(s);
  const char* out = out_dir.empty() ? nullptr : out_dir.c_str();

  if (*simulate) {
    if (lcur_status s = lcur_simulate(cfg.ptr, out); s != LCUR_OK) return fail(s);
    return 0;
  }
  if (*steady) {
    if (lcur_status s = lcur_steady(cfg.ptr, out); s != LCUR_OK) return fail(s);
    return 0;
  }
  int all_passed = 0;
  if (lcur_status s = lcur_verify(cfg.ptr, suite.c_str(), print_line, nullptr, &all_passed); s != LCUR_OK)
    return fail(s);
  std::fflush(stdout);
  return all_passed ? 0 : 1;
}
