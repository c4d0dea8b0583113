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

#include "paramhd/filter_bank.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "paramhd/error.hpp"

namespace paramhd {

namespace {

double bump(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

}  // namespace

double chi_profile(double r) {
  if (r <= 1.0) return 1.0;
  if (r >= 4.0 / 3.0) return 0.0;
  const double t = 3.0 * (r - 1.0);
  const double off = bump(t);
  const double on = bump(1.0 - t);
  return on / (on + off);
}

double phi_profile(double r) { return chi_profile(0.5 * r) - chi_profile(r); }

std::span<const double> FilterBank::block(int j) const {
  require(j >= j0_ && j <= j_max_, ErrorCode::out_of_range,
          "dyadic block index " + std::to_string(j) + " outside [" + std::to_string(j0_) +
              ", " + std::to_string(j_max_) + "]");
  return blocks_[j - j0_];
}

std::span<const double> FilterBank::low_pass(int j) const {
  require(j >= j0_ && j <= j_max_ + 1, ErrorCode::out_of_range,
          "low-pass index " + std::to_string(j) + " outside [" + std::to_string(j0_) +
              ", " + std::to_string(j_max_ + 1) + "]");
  return low_pass_[j - j0_];
}

double FilterBank::kernel_l1(int j) const {
  block(j);
  return kernel_l1_[j - j0_];
}

double FilterBank::kernel_constant() const {
  return *std::max_element(kernel_l1_.begin(), kernel_l1_.end());
}

FilterBank make_filter_bank(const Grid& grid) {
  require(grid.n() >= 16, ErrorCode::invalid_argument,
          "filter bank needs at least 16 points per axis");
  FilterBank bank;
  bank.j0_ = grid.j0();
  bank.j_max_ = grid.j_max();
  const std::size_t modes = grid.modes();
  const auto radii = grid.radii();

  for (int j = bank.j0_; j <= bank.j_max_ + 1; ++j) {
    const double scale = std::ldexp(1.0, -j);
    std::vector<double> chi(modes);
    for (std::size_t m = 0; m < modes; ++m) chi[m] = chi_profile(scale * radii[m]);
    bank.low_pass_.push_back(std::move(chi));
  }
  // phi_j = chi_{j+1} - chi_j reproduces phi(2^-j r) exactly since both sides
  // evaluate the same chi samples.
  for (int j = bank.j0_; j <= bank.j_max_; ++j) {
    const auto& lo = bank.low_pass_[j - bank.j0_];
    const auto& hi = bank.low_pass_[j + 1 - bank.j0_];
    std::vector<double> phi(modes);
    for (std::size_t m = 0; m < modes; ++m) phi[m] = hi[m] - lo[m];
    bank.blocks_.push_back(std::move(phi));
  }

  std::vector<Complex> spectrum(modes);
  std::vector<double> kernel(grid.points());
  const double norm = 1.0 / static_cast<double>(grid.points());
  for (const auto& phi : bank.blocks_) {
    for (std::size_t m = 0; m < modes; ++m) spectrum[m] = phi[m];
    grid.inverse(spectrum.data(), kernel.data());
    double l1 = 0.0;
    for (double v : kernel) l1 += std::abs(v);
    bank.kernel_l1_.push_back(l1 * norm);
  }
  return bank;
}

}  // namespace paramhd
