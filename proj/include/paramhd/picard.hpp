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

#include <vector>

#include "paramhd/function_spaces.hpp"
#include "paramhd/mhd.hpp"

namespace paramhd {

struct PicardIterate {
  int n = 0;
  /// sup over the time grid of ||z^(n) - z^(n-1)|| for z+ plus z-; NaN at n = 0.
  double difference_norm = 0.0;
  /// z^(n) at the final time.
  ElsasserState final_state;
};

/// Linear transport iterates on a shared step grid over [0, T]. Iterate 0 is
/// the zero pair; iterate n >= 1 starts from S_{n+1} of the initial data
/// (identity once the index passes j_max + 1) and is advected by iterate n-1.
struct PicardRun {
  NormSpec difference_spec;
  double T = 0.0;
  double dt = 0.0;
  int steps = 0;
  std::vector<PicardIterate> iterates;
  /// max over iterates and steps of dt / (0.5 h / max |advector|).
  double max_cfl_ratio = 0.0;

  /// Entry n-2 is difference_norm(n) / difference_norm(n-1), n >= 2.
  std::vector<double> ratios() const;
};

/// Largest accepted n_max for a grid: j_max + 1.
int picard_max_iterations(const Grid& grid);

/// Differences are measured in the inhomogeneous F^{s-1}_{p,q} norm, which
/// needs s > 1.
PicardRun picard_iterate(const Field& z0_plus, const Field& z0_minus, double s, double p,
                         double q, double T, double dt, int n_max);

}  // namespace paramhd
