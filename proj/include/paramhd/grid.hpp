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

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace paramhd {

using Complex = std::complex<double>;

class FilterBank;
class Grid;
using GridPtr = std::shared_ptr<const Grid>;

/// Periodic grid on [0, 2pi)^d with N points per axis.
///
/// Physical samples are stored row-major with the last axis fastest. Fourier
/// coefficients use the real-to-complex half layout: the last axis holds
/// wavenumbers 0..N/2 and every other axis holds 0..N/2, -N/2+1..-1.
/// Coefficients are normalized so that f(x) = sum_xi fhat(xi) e^{i xi.x}.
class Grid {
 public:
  static GridPtr create(int dim, int n);

  ~Grid();
  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  int dim() const { return dim_; }
  int n() const { return n_; }
  std::size_t points() const { return points_; }
  std::size_t modes() const { return modes_; }
  double spacing() const;

  int j0() const { return -1; }
  int j_max() const { return j_max_; }

  /// Largest |xi_i| kept by the 2/3 rule.
  int dealias_cutoff() const { return (n_ - 1) / 3; }

  int wavenumber(std::size_t mode, int axis) const {
    return wavenumbers_[mode * dim_ + axis];
  }
  /// Wavenumber used by odd-order multipliers; zero on the Nyquist plane.
  double derivative_wavenumber(std::size_t mode, int axis) const {
    return derivative_wavenumbers_[mode * dim_ + axis];
  }
  double radius(std::size_t mode) const { return radii_[mode]; }
  std::span<const double> radii() const { return radii_; }
  bool retained(std::size_t mode) const { return retained_[mode] != 0; }
  /// 2 for modes whose conjugate partner is not stored, 1 otherwise.
  double parseval_weight(std::size_t mode) const { return weights_[mode]; }

  /// Storage slot of lattice point xi; `conjugate` is set when the stored
  /// coefficient is the conjugate of fhat(xi).
  std::size_t mode_index(std::span<const int> xi, bool& conjugate) const;

  double coordinate(std::size_t point, int axis) const;

  /// Normalized forward transform: out[m] = N^{-d} sum_x in[x] e^{-i xi.x}.
  void forward(const double* in, Complex* out) const;
  /// Inverse transform; `in` is left untouched.
  void inverse(const Complex* in, double* out) const;

  const FilterBank& filter_bank() const { return *filter_bank_; }

  bool same_shape(const Grid& other) const {
    return dim_ == other.dim_ && n_ == other.n_;
  }

 private:
  Grid(int dim, int n);

  int dim_;
  int n_;
  int j_max_;
  std::size_t points_;
  std::size_t modes_;
  std::vector<int> wavenumbers_;
  std::vector<double> derivative_wavenumbers_;
  std::vector<double> radii_;
  std::vector<unsigned char> retained_;
  std::vector<double> weights_;
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
  std::unique_ptr<const FilterBank> filter_bank_;
};

}  // namespace paramhd
