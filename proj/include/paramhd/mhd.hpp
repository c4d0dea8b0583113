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

#include <utility>

#include "paramhd/field.hpp"

namespace paramhd {

/// Ideal MHD state in Elsasser variables z+ = u + b, z- = u - b.
struct ElsasserState {
  Field z_plus;
  Field z_minus;
  double t = 0.0;

  const Grid& grid() const { return z_plus.grid(); }
  const GridPtr& grid_ptr() const { return z_plus.grid_ptr(); }
};

/// Checks both fields are d-vectors on one grid and solenoidal.
ElsasserState make_state(const Field& z_plus, const Field& z_minus, double t = 0.0);

ElsasserState to_elsasser(const Field& u, const Field& b, double t = 0.0);
std::pair<Field, Field> from_elsasser(const ElsasserState& state);

/// pi = (-Delta)^{-1} d_i d_j (z-_i z+_j), so pihat = -xi_i xi_j (z-_i z+_j)^ / |xi|^2.
Field pressure(const ElsasserState& state);
Field pressure_gradient(const ElsasserState& state);

/// (-(z-.grad)z+ - grad pi, -(z+.grad)z- - grad pi), Leray-scrubbed.
std::pair<Field, Field> mhd_tendency(const ElsasserState& state);

/// 0.5 h / max(|z+|, |z-|); infinite for the zero state.
double cfl_limit(const ElsasserState& state);

struct StepReport {
  double dt_limit = 0.0;
  bool cfl_violated = false;
};

/// One classical RK4 step. A dt above cfl_limit is flagged in `report`.
ElsasserState step(const ElsasserState& state, double dt, StepReport* report = nullptr);

double energy(const ElsasserState& state);
double cross_helicity(const ElsasserState& state);

}  // namespace paramhd
