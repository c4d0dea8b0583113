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

#include "paramhd/field.hpp"

namespace paramhd {

/// Seeded band-limited random data. Coefficients are drawn per lattice point
/// in a fixed enumeration that does not depend on N, so the same seed gives the
/// same continuous field on every grid that resolves the band.
struct RandomFieldSpec {
  double amplitude = 1.0;
  /// Spectral decay |xi|^-beta of the coefficient standard deviation.
  double beta = 3.0;
  /// Lattice radii kept: kmin <= |xi| <= kmax.
  double kmin = 1.0;
  double kmax = 8.0;
};

Field random_scalar(const GridPtr& grid, const RandomFieldSpec& spec, std::uint64_t seed);
/// Leray-projected random vector field, flagged solenoidal.
Field random_solenoidal(const GridPtr& grid, const RandomFieldSpec& spec, std::uint64_t seed);
/// m-component random field without projection.
Field random_vector(const GridPtr& grid, int components, const RandomFieldSpec& spec,
                    std::uint64_t seed);

/// splitmix64 step; used to derive independent per-trial seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace paramhd
