// Copyright 2026 The fqharmonic Authors.
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


#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "fqharmonic/error.hpp"
#include "fqharmonic/runner.hpp"

namespace {

void add_common(CLI::App* app, fqh::RunConfig& cfg, std::string& format,
                std::string& out, bool& no_timing) {
  app->add_option("--q", cfg.q, "field orders, comma separated")->delimiter(',');
  app->add_option("--d", cfg.d, "dimensions, comma separated")->delimiter(',');
  app->add_option("--m", cfg.m, "scheme parameter m");
  app->add_option("--j", cfg.j, "sphere radius");
  app->add_option("--kind", cfg.kind, "para | sphere-odd | sphere-even | zero-sphere");
  app->add_option("--rsize", cfg.rsize, "number of radii in a sharp construction");
  app->add_option("--trials", cfg.trials, "random instances per check");
  app->add_option("--seed", cfg.seed, "64-bit seed");
  app->add_option("--ctest", cfg.c_test, "test constant for implicit-constant bounds");
  app->add_option("--qmax", cfg.qmax, "largest q for the gauss suite");
  app->add_option("--threads", cfg.threads, "worker threads, 0 for all cores");
  app->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--out", out, "write the report to this path");
  app->add_flag("--no-timing", no_timing, "omit elapsed_ms");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fqlab: exact finite-field harmonic analysis checks"};
  app.require_subcommand(1);
  fqh::RunConfig cfg;
  std::string format = "json";
  std::string out;
  bool no_timing = false;

  CLI::App* verify = app.add_subcommand("verify", "run the checks of one module");
  verify->add_option("target", cfg.target, "gauss | fourier | energy | scheme | distance | extension | sharp")
      ->required();
  add_common(verify, cfg, format, out, no_timing);

  CLI::App* construct = app.add_subcommand("construct", "export a construction");
  std::string what;
  construct->add_option("what", what, "sharp")->required()->check(CLI::IsMember({"sharp"}));
  add_common(construct, cfg, format, out, no_timing);

  CLI::App* sweep = app.add_subcommand("sweep", "run one module over a q x d grid");
  cfg.target = "distance";
  sweep->add_option("--target", cfg.target, "module to sweep");
  add_common(sweep, cfg, format, out, no_timing);

  CLI::App* report = app.add_subcommand("report", "run a small default job for every module");
  add_common(report, cfg, format, out, no_timing);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (verify->parsed()) cfg.command = "verify";
  if (construct->parsed()) {
    cfg.command = "construct";
    cfg.target = "sharp";
  }
  if (sweep->parsed()) cfg.command = "sweep";
  if (report->parsed()) cfg.command = "report";

  fqh::Report rep;
  try {
    rep = fqh::run(cfg);
  } catch (const fqh::Error& e) {
    std::cerr << "fqlab: " << e.what() << "\n";
    return 2;
  }
  const std::string text = format == "csv" ? fqh::to_csv(rep, !no_timing)
                                           : fqh::to_json(rep, !no_timing).dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(out);
    if (!file) {
      std::cerr << "fqlab: cannot write " << out << "\n";
      return 2;
    }
    file << text;
  }
  return fqh::exit_code(rep);
}
