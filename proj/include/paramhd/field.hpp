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

#include <memory>
#include <span>
#include <vector>

#include "paramhd/grid.hpp"

namespace paramhd {

/// Fourier coefficients of an m-component real field, component-major.
struct Spectrum {
  GridPtr grid;
  int components = 1;
  std::vector<Complex> coeffs;

  Spectrum() = default;
  Spectrum(GridPtr g, int m);

  std::span<Complex> component(int c);
  std::span<const Complex> component(int c) const;
};

/// Scalar or vector field sampled on a periodic grid.
///
/// Values are immutable once constructed. A field built from a spectrum keeps
/// those coefficients so spectrum() does not transform again.
class Field {
 public:
  Field() = default;
  Field(GridPtr grid, int components);
  Field(GridPtr grid, int components, std::vector<double> values, bool solenoidal = false);

  static Field from_spectrum(Spectrum spectrum, bool solenoidal = false);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  int components() const { return components_; }
  bool solenoidal() const { return solenoidal_; }
  bool empty() const { return !grid_; }

  std::span<const double> values() const { return values_; }
  std::span<const double> component(int c) const;

  Spectrum spectrum() const;
  bool has_cached_spectrum() const { return static_cast<bool>(spectrum_); }

  Field with_solenoidal_flag(bool flag) const;

 private:
  GridPtr grid_;
  int components_ = 1;
  std::vector<double> values_;
  bool solenoidal_ = false;
  std::shared_ptr<const Spectrum> spectrum_;
};

Spectrum transform(const GridPtr& grid, std::span<const double> values, int components);
std::vector<double> inverse_transform(const Spectrum& spectrum);

/// Physical samples of one component.
std::vector<double> physical(const Grid& grid, std::span<const Complex> coeffs);

/// Writes fhat(xi) and the Hermitian partner fhat(-xi) = conj(fhat(xi)).
void set_mode(Spectrum& s, int component, std::span<const int> xi, Complex value);
Complex get_mode(const Spectrum& s, int component, std::span<const int> xi);

void require_same_grid(const Grid& a, const Grid& b);

}  // namespace paramhd
