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

#include "paramhd/field.hpp"

namespace paramhd {

/// Velocity snapshots at t_i = i * dt. A single snapshot is a steady field.
struct VelocityHistory {
  double dt = 0.0;
  std::vector<Field> snapshots;
};

/// Flow map X(alpha, t) over the points alpha of a label grid.
struct TrajectoryMap {
  GridPtr labels;
  double t = 0.0;
  /// Unwrapped positions, component-major (axis a at a * points + i).
  std::vector<double> positions;
  Field det_jacobian;

  /// Position reduced to [0, 2pi).
  double wrapped(std::size_t point, int axis) const;
  double max_volume_defect() const;
};

/// RK4 on dX/dt = v(X, t) with v evaluated off-grid by trigonometric
/// interpolation and cubic interpolation in time between snapshots.
/// det grad X comes from spectral differentiation of X - alpha.
TrajectoryMap trajectory_map(const VelocityHistory& history, const GridPtr& labels, double T,
                             double dt);

}  // namespace paramhd
