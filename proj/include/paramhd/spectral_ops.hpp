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

#include <array>
#include <span>
#include <vector>

#include "paramhd/field.hpp"

namespace paramhd {

using MultiIndex = std::array<int, 3>;

/// Delta_j f for j in [j0, j_max]; out-of-range j throws.
Field dyadic_block(const Field& f, int j);
/// S_j f for j in [j0, j_max + 1].
Field low_pass(const Field& f, int j);

/// Multiplies fhat by (i xi)^alpha, |alpha| <= 4. Odd powers vanish on the
/// Nyquist plane of their axis.
Field spectral_derivative(const Field& f, const MultiIndex& alpha);

/// Scalar -> d-vector.
Field gradient(const Field& f);
/// m-component field -> d*m components, entry (i, c) = d_i f_c at index i*m + c.
Field gradient_tensor(const Field& v);
Field divergence(const Field& v);
/// 2D: scalar d1 v2 - d2 v1. 3D: vector curl.
Field curl(const Field& v);

/// Riesz transform R_l: multiplier i xi_l / |xi|, mean mode set to zero.
Field riesz(const Field& f, int axis);

/// Removes the gradient part; output flagged solenoidal. Idempotent.
Field leray_project(const Field& v);

/// max_xi |xi . vhat| / max_xi |vhat| (0 for the zero field).
double solenoidal_residual(const Field& v);

/// Returns v flagged solenoidal if it already is, or passes the 1e-10
/// residual test; throws not_solenoidal otherwise.
Field require_solenoidal(const Field& v, const char* what);

/// 2/3-rule truncation.
Field dealias(const Field& f);

/// Dealiased pointwise product; a scalar times an m-component field is
/// applied componentwise.
Field multiply(const Field& a, const Field& b);

Field add(const Field& a, const Field& b);
Field subtract(const Field& a, const Field& b);
Field scale(const Field& a, double c);
/// Componentwise mean over the grid.
std::vector<double> mean(const Field& f);

namespace spectral {

Spectrum multiply_by(const Spectrum& s, std::span<const double> multiplier);
void multiply_in_place(Spectrum& s, std::span<const double> multiplier);
void truncate(Spectrum& s);
void truncate(const Grid& grid, std::span<Complex> coeffs);

/// Derivative d_axis of one component.
std::vector<Complex> derivative(const Grid& grid, std::span<const Complex> coeffs, int axis);

/// Forward transform of a physical product followed by 2/3 truncation.
std::vector<Complex> product_spectrum(const Grid& grid, std::span<const double> values);

void leray_in_place(Spectrum& v);

}  // namespace spectral

}  // namespace paramhd
