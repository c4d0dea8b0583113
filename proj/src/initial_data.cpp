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

#include "paramhd/initial_data.hpp"

#include <cmath>

#include "paramhd/error.hpp"
#include "paramhd/function_spaces.hpp"
#include "paramhd/spectral_ops.hpp"

namespace paramhd {

namespace {

template <class F>
Field sample(const GridPtr& grid, F&& f) {
  const int d = grid->dim();
  const std::size_t points = grid->points();
  std::vector<double> v(d * points);
  double x[3] = {0.0, 0.0, 0.0};
  double out[3];
  for (std::size_t p = 0; p < points; ++p) {
    for (int a = 0; a < d; ++a) x[a] = grid->coordinate(p, a);
    f(x, out);
    for (int a = 0; a < d; ++a) v[a * points + p] = out[a];
  }
  // The closed forms are exactly divergence free; the projection only removes
  // round-off and sets the flag.
  return leray_project(Field(grid, d, std::move(v)));
}

}  // namespace

VelocityMagnetic taylor_green(const GridPtr& grid, double amplitude, double perturb,
                              std::uint64_t seed) {
  const int d = grid->dim();
  Field u = sample(grid, [&](const double* x, double* o) {
    if (d == 2) {
      o[0] = -amplitude * std::cos(x[0]) * std::sin(x[1]);
      o[1] = amplitude * std::sin(x[0]) * std::cos(x[1]);
    } else {
      o[0] = amplitude * std::sin(x[0]) * std::cos(x[1]) * std::cos(x[2]);
      o[1] = -amplitude * std::cos(x[0]) * std::sin(x[1]) * std::cos(x[2]);
      o[2] = 0.0;
    }
  });
  if (perturb != 0.0) {
    RandomFieldSpec spec;
    spec.kmax = 4.0;
    spec.beta = 2.0;
    const Field r = random_solenoidal(grid, spec, seed);
    const double rmax = lp_norm(r, infinity);
    u = leray_project(add(u, scale(r, perturb / rmax)));
  }
  return {u, Field(grid, d).with_solenoidal_flag(true)};
}

VelocityMagnetic alfven_state(const GridPtr& grid, const RandomFieldSpec& spec,
                              std::uint64_t seed) {
  const Field u = random_solenoidal(grid, spec, seed);
  return {u, u};
}

VelocityMagnetic orszag_tang(const GridPtr& grid, double amplitude) {
  Field u = sample(grid, [&](const double* x, double* o) {
    o[0] = -amplitude * std::sin(x[1]);
    o[1] = amplitude * std::sin(x[0]);
    o[2] = 0.0;
  });
  Field b = sample(grid, [&](const double* x, double* o) {
    o[0] = -amplitude * std::sin(x[1]);
    o[1] = amplitude * std::sin(2.0 * x[0]);
    o[2] = 0.0;
  });
  return {u, b};
}

VelocityMagnetic random_pair(const GridPtr& grid, const RandomFieldSpec& spec,
                             std::uint64_t seed) {
  return {random_solenoidal(grid, spec, mix_seed(seed, 0)),
          random_solenoidal(grid, spec, mix_seed(seed, 1))};
}

}  // namespace paramhd
