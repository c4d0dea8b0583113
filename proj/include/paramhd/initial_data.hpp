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
#include <utility>

#include "paramhd/field.hpp"
#include "paramhd/random_fields.hpp"

namespace paramhd {

/// (u, b) pairs; every field is solenoidal and inside the dealiased band.
using VelocityMagnetic = std::pair<Field, Field>;

/// u = A(-cos x1 sin x2, sin x1 cos x2) in 2D, A(sin x cos y cos z,
/// -cos x sin y cos z, 0) in 3D; b = 0. A nonzero `perturb` adds a seeded
/// random solenoidal field of that amplitude (kmax 4), which breaks the 2D
/// steady state.
VelocityMagnetic taylor_green(const GridPtr& grid, double amplitude = 1.0, double perturb = 0.0,
                              std::uint64_t seed = 0);

/// u = b, a random solenoidal field.
VelocityMagnetic alfven_state(const GridPtr& grid, const RandomFieldSpec& spec,
                              std::uint64_t seed);

/// u = A(-sin x2, sin x1), b = A(-sin x2, sin 2x1); 3D embeds the planar
/// field with zero third component.
VelocityMagnetic orszag_tang(const GridPtr& grid, double amplitude = 1.0);

/// Independent random solenoidal u and b.
VelocityMagnetic random_pair(const GridPtr& grid, const RandomFieldSpec& spec,
                             std::uint64_t seed);

}  // namespace paramhd
