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

#include "paramhd/picard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "paramhd/error.hpp"
#include "paramhd/filter_bank.hpp"
#include "paramhd/spectral_ops.hpp"
#include "transport.hpp"

namespace paramhd {

namespace {

using detail::Packed;
using Trajectory = std::vector<std::vector<double>>;

double pair_norm(const GridPtr& grid, const std::vector<double>& a, const std::vector<double>& b,
                 const NormSpec& spec) {
  const int d = grid->dim();
  const std::size_t half = d * grid->points();
  double total = 0.0;
  for (int s = 0; s < 2; ++s) {
    std::vector<double> diff(half);
    for (std::size_t i = 0; i < half; ++i) diff[i] = a[s * half + i] - b[s * half + i];
    total += tl_norm(Field(grid, d, std::move(diff)), spec);
  }
  return total;
}

void advectors_at(const Trajectory& traj, double tau, double dt, std::size_t half,
                  std::vector<double>& out) {
  int idx[4];
  double w[4];
  const int used = detail::time_weights(tau, dt, static_cast<int>(traj.size()), idx, w);
  out.assign(2 * half, 0.0);
  for (int a = 0; a < used; ++a) {
    const auto& v = traj[idx[a]];
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += w[a] * v[i];
  }
}

}  // namespace

std::vector<double> PicardRun::ratios() const {
  std::vector<double> out;
  for (std::size_t n = 2; n < iterates.size(); ++n)
    out.push_back(iterates[n].difference_norm / iterates[n - 1].difference_norm);
  return out;
}

int picard_max_iterations(const Grid& grid) { return grid.j_max() + 1; }

PicardRun picard_iterate(const Field& z0_plus, const Field& z0_minus, double s, double p,
                         double q, double T, double dt, int n_max) {
  const ElsasserState z0 = make_state(z0_plus, z0_minus);
  const GridPtr& grid = z0.grid_ptr();
  const Grid& g = *grid;
  const int limit = picard_max_iterations(g);
  require(n_max >= 1 && n_max <= limit, ErrorCode::out_of_range,
          "n_max must satisfy 1 <= n_max <= j_max + 1 = " + std::to_string(limit) + ", got " +
              std::to_string(n_max));
  require(T > 0.0 && dt > 0.0, ErrorCode::invalid_argument, "T and dt must be positive");
  const long steps = std::lround(T / dt);
  require(steps >= 1 && std::abs(steps * dt - T) <= 1e-9 * T, ErrorCode::invalid_argument,
          "T must be an integer multiple of dt");

  PicardRun run;
  run.difference_spec = NormSpec{s - 1.0, p, q, false};
  run.difference_spec.validate();
  run.T = T;
  run.dt = dt;
  run.steps = static_cast<int>(steps);

  const int d = g.dim();
  const std::size_t half = d * g.points();
  const FilterBank& bank = g.filter_bank();
  const Packed z0_packed = detail::pack(z0);

  Trajectory prev(steps + 1, std::vector<double>(2 * half, 0.0));
  {
    PicardIterate zero;
    zero.n = 0;
    zero.difference_norm = std::numeric_limits<double>::quiet_NaN();
    zero.final_state = detail::unpack(grid, Packed(z0_packed.size(), 0.0), T);
    run.iterates.push_back(std::move(zero));
  }

  const double h = g.spacing();
  for (int n = 1; n <= n_max; ++n) {
    const int j = std::min(n + 1, bank.j_max() + 1);
    Packed z = z0_packed;
    const auto chi = bank.low_pass(j);
    for (std::size_t c = 0; c < 2 * static_cast<std::size_t>(d); ++c)
      for (std::size_t m = 0; m < g.modes(); ++m) z[c * g.modes() + m] *= chi[m];

    Trajectory cur;
    cur.reserve(steps + 1);
    cur.push_back(detail::physical_pair(g, z));
    double sup = pair_norm(grid, cur[0], prev[0], run.difference_spec);

    Packed k1, k2, k3, k4, tmp(z.size());
    std::vector<double> adv;
    auto rhs = [&](double tau, const Packed& state, Packed& out) {
      advectors_at(prev, tau, dt, half, adv);
      // z+ is carried by the previous z-, z- by the previous z+.
      const std::span<const double> a(adv);
      detail::transport_rhs(g, a.subspan(half, half), a.subspan(0, half), state, out, false);
    };
    for (long i = 0; i < steps; ++i) {
      const double t = i * dt;
      const double vmax = std::max(detail::max_speed(g, std::span(prev[i]).subspan(0, half)),
                                   detail::max_speed(g, std::span(prev[i]).subspan(half, half)));
      run.max_cfl_ratio = std::max(run.max_cfl_ratio, dt * vmax / (0.5 * h));
      rhs(t, z, k1);
      for (std::size_t a = 0; a < z.size(); ++a) tmp[a] = z[a] + 0.5 * dt * k1[a];
      rhs(t + 0.5 * dt, tmp, k2);
      for (std::size_t a = 0; a < z.size(); ++a) tmp[a] = z[a] + 0.5 * dt * k2[a];
      rhs(t + 0.5 * dt, tmp, k3);
      for (std::size_t a = 0; a < z.size(); ++a) tmp[a] = z[a] + dt * k3[a];
      rhs(t + dt, tmp, k4);
      for (std::size_t a = 0; a < z.size(); ++a)
        z[a] += dt / 6.0 * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a]);
      cur.push_back(detail::physical_pair(g, z));
      sup = std::max(sup, pair_norm(grid, cur.back(), prev[i + 1], run.difference_spec));
    }

    PicardIterate it;
    it.n = n;
    it.difference_norm = sup;
    it.final_state = detail::unpack(grid, z, T);
    run.iterates.push_back(std::move(it));
    prev = std::move(cur);
  }
  return run;
}

}  // namespace paramhd
