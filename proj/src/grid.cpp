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

#include "paramhd/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "paramhd/error.hpp"
#include "paramhd/filter_bank.hpp"

namespace paramhd {

namespace {

// FFTW planning is not thread safe; execution with the new-array API is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

int signed_wavenumber(int index, int n) { return index <= n / 2 ? index : index - n; }

}  // namespace

GridPtr Grid::create(int dim, int n) {
  require(dim == 2 || dim == 3, ErrorCode::invalid_argument,
          "grid dimension must be 2 or 3, got " + std::to_string(dim));
  require(n >= 16 && is_power_of_two(n), ErrorCode::invalid_argument,
          "points per axis must be a power of two >= 16, got " + std::to_string(n));
  std::shared_ptr<Grid> grid(new Grid(dim, n));
  grid->filter_bank_ = std::make_unique<const FilterBank>(make_filter_bank(*grid));
  return grid;
}

Grid::Grid(int dim, int n) : dim_(dim), n_(n) {
  j_max_ = static_cast<int>(std::ceil(std::log2(n / 2.0)));
  points_ = 1;
  for (int a = 0; a < dim; ++a) points_ *= static_cast<std::size_t>(n);
  const int half = n / 2 + 1;
  modes_ = points_ / n * half;

  wavenumbers_.resize(modes_ * dim);
  derivative_wavenumbers_.resize(modes_ * dim);
  radii_.resize(modes_);
  retained_.resize(modes_);
  weights_.resize(modes_);
  const int cutoff = dealias_cutoff();
  for (std::size_t m = 0; m < modes_; ++m) {
    std::size_t rest = m;
    int idx[3] = {0, 0, 0};
    idx[dim - 1] = static_cast<int>(rest % half);
    rest /= half;
    for (int a = dim - 2; a >= 0; --a) {
      idx[a] = static_cast<int>(rest % n);
      rest /= n;
    }
    double r2 = 0.0;
    bool keep = true;
    for (int a = 0; a < dim; ++a) {
      const int k = a == dim - 1 ? idx[a] : signed_wavenumber(idx[a], n);
      wavenumbers_[m * dim + a] = k;
      derivative_wavenumbers_[m * dim + a] = std::abs(k) == n / 2 ? 0.0 : k;
      r2 += static_cast<double>(k) * k;
      keep = keep && std::abs(k) <= cutoff;
    }
    radii_[m] = std::sqrt(r2);
    retained_[m] = keep ? 1 : 0;
    const int last = idx[dim - 1];
    weights_[m] = (last == 0 || last == n / 2) ? 1.0 : 2.0;
  }

  std::vector<int> dims(dim, n);
  std::lock_guard lock(planner_mutex());
  double* real = fftw_alloc_real(points_);
  fftw_complex* spec = fftw_alloc_complex(modes_);
  forward_plan_ = fftw_plan_dft_r2c(dim, dims.data(), real, spec,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
  inverse_plan_ = fftw_plan_dft_c2r(dim, dims.data(), spec, real,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_DESTROY_INPUT);
  fftw_free(real);
  fftw_free(spec);
}

Grid::~Grid() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

double Grid::spacing() const { return 2.0 * std::numbers::pi / n_; }

std::size_t Grid::mode_index(std::span<const int> xi, bool& conjugate) const {
  require(static_cast<int>(xi.size()) == dim_, ErrorCode::invalid_argument,
          "lattice point has wrong dimension");
  int k[3] = {0, 0, 0};
  for (int a = 0; a < dim_; ++a) {
    require(std::abs(xi[a]) <= n_ / 2, ErrorCode::out_of_range,
            "lattice point outside the grid's frequency range");
    k[a] = xi[a];
  }
  conjugate = k[dim_ - 1] < 0;
  if (conjugate) {
    for (int a = 0; a < dim_; ++a) k[a] = -k[a];
  }
  const int half = n_ / 2 + 1;
  std::size_t index = 0;
  for (int a = 0; a < dim_ - 1; ++a) {
    const int wrapped = ((k[a] % n_) + n_) % n_;
    index = index * n_ + wrapped;
  }
  index = index * half + k[dim_ - 1];
  return index;
}

double Grid::coordinate(std::size_t point, int axis) const {
  std::size_t stride = 1;
  for (int a = dim_ - 1; a > axis; --a) stride *= n_;
  return spacing() * static_cast<double>((point / stride) % n_);
}

void Grid::forward(const double* in, Complex* out) const {
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), const_cast<double*>(in),
                       reinterpret_cast<fftw_complex*>(out));
  const double scale = 1.0 / static_cast<double>(points_);
  for (std::size_t m = 0; m < modes_; ++m) out[m] *= scale;
}

void Grid::inverse(const Complex* in, double* out) const {
  thread_local std::vector<Complex> scratch;
  scratch.assign(in, in + modes_);
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_),
                       reinterpret_cast<fftw_complex*>(scratch.data()), out);
}

}  // namespace paramhd
