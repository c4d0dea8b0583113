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

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "paramhd/function_spaces.hpp"

namespace paramhd {

/// Run manifest. Text form: one `key = value` per line, `#` starts a comment,
/// lists are comma separated, norm specs are `s/p/q/homogeneous` or
/// `s/p/q/inhomogeneous`. Unknown keys and malformed values are validation
/// errors.
struct RunConfig {
  std::string command;  // empty when the file does not name one

  int dim = 2;
  int n = 64;
  std::string init = "taylor_green";
  double amplitude = 1.0;
  double perturb = 0.0;
  double beta = 3.0;
  double kmin = 1.0;
  double kmax = 8.0;
  std::uint64_t seed = 1;

  double dt = 1e-3;
  double t_end = 1.0;
  int cadence = 10;
  std::vector<NormSpec> norms;
  std::vector<double> snapshot_times;
  std::string output_dir = "run";

  double picard_s = 2.5;
  double picard_p = 2.0;
  double picard_q = 2.0;
  int picard_n_max = 7;

  std::vector<std::string> verify_ids;
  int verify_trials = 200;
  std::vector<int> verify_resolutions = {64, 128};
  double verify_s = 1.5;
  double verify_p = 2.0;
  double verify_q = 2.0;
  bool verify_homogeneous = true;
  int verify_k = 1;
  std::string verify_family = "random";
  double verify_kmax = 10.0;
  double verify_beta = 3.0;
  double verify_scale = 1.0;

  /// Keys present in the source, with normalized values.
  std::map<std::string, std::string> entries;

  /// Number of time steps, t_end / dt.
  long steps() const;

  /// Checks that apply to `command` (simulate, picard or verify); throws
  /// validation errors naming the offending key.
  void validate_for(const std::string& command) const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Present keys in sorted order with normalized values.
std::string serialize_config(const RunConfig& config);

/// Parses a `key = value` assignment list given on the command line (for
/// overrides), merged on top of `config`.
void apply_override(RunConfig& config, const std::string& key, const std::string& value);

std::vector<std::string> config_keys();

}  // namespace paramhd
