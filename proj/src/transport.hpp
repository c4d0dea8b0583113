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
#include "paramhd/mhd.hpp"

namespace paramhd::detail {

// z+ components followed by z- components, each grid.modes() long.
using Packed = std::vector<Complex>;

Packed pack(const ElsasserState& state);
ElsasserState unpack(const GridPtr& grid, const Packed& z, double t);

// Physical samples of the packed pair, same ordering, each grid.points() long.
std::vector<double> physical_pair(const Grid& grid, const Packed& z);

// out = d/dt of the pair under transport by the given physical advectors:
//   dz+/dt = -P(a+ . grad z+),  dz-/dt = -P(a- . grad z-)
// with P the Leray projection. With `nonlinear`, a+ = z-, a- = z+ are taken
// from z itself, the shared pressure gradient is subtracted before the
// projection, and the advector arguments are ignored.
void transport_rhs(const Grid& grid, std::span<const double> a_plus,
                   std::span<const double> a_minus, const Packed& z, Packed& out,
                   bool nonlinear);

// Grid max of the Euclidean magnitude of a d-vector stored component-major.
double max_speed(const Grid& grid, std::span<const double> v);

}  // namespace paramhd::detail

namespace paramhd::detail {

// Cubic Lagrange weights for sampling a series stored at t_i = i * spacing,
// i = 0..count-1, at time tau. Uses the four nodes around tau, shifted inward
// at the ends; fewer nodes when count < 4. Returns the number of nodes used.
int time_weights(double tau, double spacing, int count, int (&index)[4], double (&weight)[4]);

}  // namespace paramhd::detail
