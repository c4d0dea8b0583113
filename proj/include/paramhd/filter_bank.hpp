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

#include <span>
#include <vector>

#include "paramhd/grid.hpp"

namespace paramhd {

/// Radial low-pass profile: 1 on [0,1], 0 on [4/3, inf), C-infinity between.
double chi_profile(double r);

/// Annulus profile chi(r/2) - chi(r), supported in [1, 8/3].
double phi_profile(double r);

/// Littlewood-Paley multipliers sampled on a grid's frequency lattice.
///
/// block(j) is phi(2^-j |xi|) for j in [j0, j_max]; low_pass(j) is
/// chi(2^-j |xi|) for j in [j0, j_max + 1]. low_pass(j0) keeps only the mean
/// mode and low_pass(j_max + 1) is the identity on the lattice.
class FilterBank {
 public:
  int j0() const { return j0_; }
  int j_max() const { return j_max_; }

  std::span<const double> block(int j) const;
  std::span<const double> low_pass(int j) const;

  /// Discrete l1 norm of the convolution kernel of block(j); bounds
  /// ||Delta_j f||_inf / ||f||_inf on the grid.
  double kernel_l1(int j) const;
  /// max_j kernel_l1(j).
  double kernel_constant() const;

 private:
  friend FilterBank make_filter_bank(const Grid& grid);

  int j0_ = -1;
  int j_max_ = 0;
  std::vector<std::vector<double>> blocks_;
  std::vector<std::vector<double>> low_pass_;
  std::vector<double> kernel_l1_;
};

/// Rejects N < 16. Deterministic: equal grids give bit-identical banks.
FilterBank make_filter_bank(const Grid& grid);

}  // namespace paramhd
