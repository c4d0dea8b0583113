/*
 * Copyright 2026 The paramhd Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include <CLI11.hpp>

#include "paramhd/paramhd.h"

namespace {

double exponent(const std::string& text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  const double v = std::stod(text, &used);
  if (used != text.size()) throw CLI::ValidationError("exponent", "not a number: " + text);
  return v;
}

int report(pmhd_status status) {
  if (status != PMHD_OK && *pmhd_last_error())
    std::fprintf(stderr, "paramhd: %s\n", pmhd_last_error());
  return pmhd_exit_code(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Littlewood-Paley toolkit and ideal MHD solver"};
  cli.require_subcommand(1);
  cli.set_version_flag("--version", pmhd_version());

  std::string config, ids, field, out_dir, p_text = "2", q_text = "2";
  double s = 0.0;
  bool homogeneous = false;

  auto* simulate = cli.add_subcommand("simulate", "run the MHD solver and record diagnostics");
  simulate->add_option("--config", config, "run manifest")->required();
  auto* picard = cli.add_subcommand("picard", "run the linear iteration scheme");
  picard->add_option("--config", config, "run manifest")->required();
  auto* verify = cli.add_subcommand("verify", "run the inequality harness");
  verify->add_option("--config", config, "run manifest")->required();
  verify->add_option("--ids", ids, "comma separated inequality ids");
  auto* norm = cli.add_subcommand("norm", "Triebel-Lizorkin norm of a snapshot");
  norm->add_option("--field", field, "snapshot file")->required();
  norm->add_option("--s", s, "smoothness")->required();
  norm->add_option("--p", p_text, "integrability (number or inf)")->required();
  norm->add_option("--q", q_text, "summability (number or inf)")->required();
  norm->add_flag("--homogeneous", homogeneous, "homogeneous norm");
  auto* decompose = cli.add_subcommand("decompose", "write one snapshot per dyadic block");
  decompose->add_option("--field", field, "snapshot file")->required();
  decompose->add_option("--out", out_dir, "output directory")->required();

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*simulate) return report(pmhd_run("simulate", config.c_str(), nullptr));
  if (*picard) return report(pmhd_run("picard", config.c_str(), nullptr));
  if (*verify) return report(pmhd_run("verify", config.c_str(), ids.empty() ? nullptr : ids.c_str()));
  if (*norm) {
    double p = 0.0, q = 0.0;
    try {
      p = exponent(p_text);
      q = exponent(q_text);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "paramhd: bad exponent: %s\n", e.what());
      return 2;
    }
    char* json = nullptr;
    const pmhd_status st = pmhd_norm_record(field.c_str(), s, p, q, homogeneous ? 1 : 0, &json);
    if (st == PMHD_OK) {
      std::printf("%s\n", json);
      pmhd_string_free(json);
    }
    return report(st);
  }
  if (*decompose) return report(pmhd_decompose(field.c_str(), out_dir.c_str()));
  return 2;
}
