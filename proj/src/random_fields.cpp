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

#include "paramhd/random_fields.hpp"

#include <cmath>
#include <random>
#include <string>

#include "paramhd/error.hpp"
#include "paramhd/spectral_ops.hpp"

namespace paramhd {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

// Representative of each +-xi pair: first nonzero coordinate positive.
bool canonical(const int* xi, int d) {
  for (int a = 0; a < d; ++a) {
    if (xi[a] > 0) return true;
    if (xi[a] < 0) return false;
  }
  return false;
}

Spectrum random_spectrum(const GridPtr& grid, int components, const RandomFieldSpec& spec,
                         std::uint64_t seed) {
  const int d = grid->dim();
  const int box = static_cast<int>(std::floor(spec.kmax));
  require(spec.kmax >= spec.kmin && spec.kmin >= 0.0, ErrorCode::invalid_argument,
          "random field band needs 0 <= kmin <= kmax");
  require(box <= grid->dealias_cutoff(), ErrorCode::invalid_argument,
          "random field band kmax=" + std::to_string(spec.kmax) +
              " exceeds the dealiased range of N=" + std::to_string(grid->n()));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Spectrum s(grid, components);
  int xi[3] = {-box, -box, -box};
  if (d == 2) xi[2] = 0;
  while (true) {
    double r2 = 0.0;
    for (int a = 0; a < d; ++a) r2 += static_cast<double>(xi[a]) * xi[a];
    const double r = std::sqrt(r2);
    if (canonical(xi, d) && r >= spec.kmin && r <= spec.kmax && r > 0.0) {
      const double sd = spec.amplitude * std::pow(r, -spec.beta) / std::sqrt(2.0);
      for (int c = 0; c < components; ++c) {
        const double re = normal(rng);
        const double im = normal(rng);
        set_mode(s, c, std::span<const int>(xi, d), Complex(sd * re, sd * im));
      }
    }
    int a = d - 1;
    while (a >= 0 && xi[a] == box) {
      xi[a] = -box;
      --a;
    }
    if (a < 0) break;
    ++xi[a];
  }
  return s;
}

}  // namespace

Field random_scalar(const GridPtr& grid, const RandomFieldSpec& spec, std::uint64_t seed) {
  return Field::from_spectrum(random_spectrum(grid, 1, spec, seed));
}

Field random_vector(const GridPtr& grid, int components, const RandomFieldSpec& spec,
                    std::uint64_t seed) {
  return Field::from_spectrum(random_spectrum(grid, components, spec, seed));
}

Field random_solenoidal(const GridPtr& grid, const RandomFieldSpec& spec, std::uint64_t seed) {
  Spectrum s = random_spectrum(grid, grid->dim(), spec, seed);
  spectral::leray_in_place(s);
  return Field::from_spectrum(std::move(s), true);
}

}  // namespace paramhd
