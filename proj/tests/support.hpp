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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "paramhd/field.hpp"

namespace testing {

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

inline double l2(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s / static_cast<double>(a.size()));
}

inline double l2_diff(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s / static_cast<double>(a.size()));
}

// Samples f(x) on the grid; f fills `out` with `m` components.
template <class F>
paramhd::Field sample(const paramhd::GridPtr& g, int m, F&& f, bool solenoidal = false) {
  std::vector<double> v(m * g->points());
  double x[3] = {0, 0, 0};
  double o[8];
  for (std::size_t p = 0; p < g->points(); ++p) {
    for (int a = 0; a < g->dim(); ++a) x[a] = g->coordinate(p, a);
    f(x, o);
    for (int c = 0; c < m; ++c) v[c * g->points() + p] = o[c];
  }
  return paramhd::Field(g, m, std::move(v), solenoidal);
}

}  // namespace testing
