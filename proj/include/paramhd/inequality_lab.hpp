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
#include <string>
#include <vector>

#include "paramhd/random_fields.hpp"

namespace paramhd {

struct InequalityParams {
  double s = 1.5;
  double p = 2.0;
  double q = 2.0;
  bool homogeneous = true;
  int dim = 2;
  int n = 64;
  int trials = 200;
  std::uint64_t seed = 1;
  /// Derivative order for bernstein and deriv-equiv.
  int k = 1;
  /// Multiplies every test field; reports are invariant under it.
  double scale = 1.0;
  /// Test-field family: "random" for every id, plus "single-mode"
  /// (bernstein), "constant-g" (product) and "constant-f" (commutators and
  /// term-I..IV).
  std::string family = "random";
  RandomFieldSpec field{1.0, 3.0, 1.0, 10.0};
};

struct InequalityReport {
  std::string id;
  InequalityParams params;
  std::vector<double> ratios;
  double max_ratio = 0.0;
  /// Set by stability_sweep: max_ratio here over max_ratio at the previous N.
  double growth_factor = 0.0;
  bool has_growth = false;

  bool finite() const;
};

const std::vector<std::string>& inequality_ids();

/// Throws invalid_argument for unknown ids and for parameters outside the
/// inequality's hypotheses.
InequalityReport run_inequality(const std::string& id, const InequalityParams& params);

struct StabilitySweep {
  std::string id;
  std::vector<int> resolutions;
  std::vector<InequalityReport> reports;
  double max_growth = 0.0;
  double threshold = 0.0;

  bool passed() const;
};

/// 1.05 for bernstein, 1.2 otherwise.
double default_growth_threshold(const std::string& id);

StabilitySweep stability_sweep(const std::string& id, const InequalityParams& params,
                               const std::vector<int>& resolutions);

std::string report_json(const InequalityReport& report);
std::string sweep_json(const StabilitySweep& sweep);
/// Header "id,s,p,q,d,N,trials,seed,max_ratio,growth_factor" plus one row per report.
std::string summary_csv(const std::vector<InequalityReport>& reports);

}  // namespace paramhd
