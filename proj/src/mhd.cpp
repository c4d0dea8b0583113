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

#include "paramhd/mhd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "paramhd/error.hpp"
#include "paramhd/function_spaces.hpp"
#include "paramhd/spectral_ops.hpp"
#include "transport.hpp"

namespace paramhd {

namespace detail {

Packed pack(const ElsasserState& state) {
  const Grid& g = state.grid();
  const int d = g.dim();
  const std::size_t modes = g.modes();
  Packed z(2 * d * modes);
  const Spectrum sp = state.z_plus.spectrum();
  const Spectrum sm = state.z_minus.spectrum();
  for (int c = 0; c < d; ++c) {
    std::copy_n(sp.component(c).begin(), modes, z.begin() + c * modes);
    std::copy_n(sm.component(c).begin(), modes, z.begin() + (d + c) * modes);
  }
  for (int c = 0; c < 2 * d; ++c)
    spectral::truncate(g, std::span<Complex>(z.data() + c * modes, modes));
  return z;
}

ElsasserState unpack(const GridPtr& grid, const Packed& z, double t) {
  const int d = grid->dim();
  const std::size_t modes = grid->modes();
  Spectrum sp(grid, d), sm(grid, d);
  std::copy_n(z.begin(), d * modes, sp.coeffs.begin());
  std::copy_n(z.begin() + d * modes, d * modes, sm.coeffs.begin());
  ElsasserState out;
  out.z_plus = Field::from_spectrum(std::move(sp), true);
  out.z_minus = Field::from_spectrum(std::move(sm), true);
  out.t = t;
  return out;
}

std::vector<double> physical_pair(const Grid& grid, const Packed& z) {
  const int d = grid.dim();
  std::vector<double> out(2 * d * grid.points());
  for (int c = 0; c < 2 * d; ++c)
    grid.inverse(z.data() + c * grid.modes(), out.data() + c * grid.points());
  return out;
}

double max_speed(const Grid& grid, std::span<const double> v) {
  return lp_norm(v, grid.points(), grid.dim(), infinity);
}

namespace {

void leray(const Grid& g, Complex* v) {
  const int d = g.dim();
  const std::size_t modes = g.modes();
  for (std::size_t m = 0; m < modes; ++m) {
    double k2 = 0.0;
    Complex dot = 0.0;
    for (int a = 0; a < d; ++a) {
      const double k = g.derivative_wavenumber(m, a);
      k2 += k * k;
      dot += k * v[a * modes + m];
    }
    if (k2 == 0.0) continue;
    dot /= k2;
    for (int a = 0; a < d; ++a) v[a * modes + m] -= g.derivative_wavenumber(m, a) * dot;
  }
}

}  // namespace

void transport_rhs(const Grid& g, std::span<const double> a_plus,
                   std::span<const double> a_minus, const Packed& z, Packed& out,
                   bool nonlinear) {
  const int d = g.dim();
  const std::size_t modes = g.modes();
  const std::size_t points = g.points();
  std::vector<double> own;
  if (nonlinear) {
    own = physical_pair(g, z);
    a_plus = std::span<const double>(own.data() + d * points, d * points);
    a_minus = std::span<const double>(own.data(), d * points);
  }
  out.assign(2 * d * modes, 0.0);

  // grads[s][j * d + c] = d_j z^s_c
  std::vector<std::vector<double>> grads[2];
  std::vector<Complex> buf(modes);
  std::vector<double> work(points);
  for (int s = 0; s < 2; ++s) {
    const std::span<const double> adv = s == 0 ? a_plus : a_minus;
    grads[s].assign(d * d, std::vector<double>(points));
    for (int c = 0; c < d; ++c) {
      const Complex* zc = z.data() + (s * d + c) * modes;
      for (int j = 0; j < d; ++j) {
        for (std::size_t m = 0; m < modes; ++m)
          buf[m] = Complex(0.0, g.derivative_wavenumber(m, j)) * zc[m];
        g.inverse(buf.data(), grads[s][j * d + c].data());
      }
      std::fill(work.begin(), work.end(), 0.0);
      for (int j = 0; j < d; ++j) {
        const double* aj = adv.data() + j * points;
        const double* gj = grads[s][j * d + c].data();
        for (std::size_t x = 0; x < points; ++x) work[x] += aj[x] * gj[x];
      }
      const auto nhat = spectral::product_spectrum(g, work);
      Complex* oc = out.data() + (s * d + c) * modes;
      for (std::size_t m = 0; m < modes; ++m) oc[m] = -nhat[m];
    }
  }

  if (nonlinear) {
    // -Delta pi = d_j z-_i d_i z+_j
    std::fill(work.begin(), work.end(), 0.0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const double* a = grads[1][j * d + i].data();
        const double* b = grads[0][i * d + j].data();
        for (std::size_t x = 0; x < points; ++x) work[x] += a[x] * b[x];
      }
    auto pihat = spectral::product_spectrum(g, work);
    for (std::size_t m = 0; m < modes; ++m) {
      double k2 = 0.0;
      for (int a = 0; a < d; ++a) k2 += g.derivative_wavenumber(m, a) * g.derivative_wavenumber(m, a);
      pihat[m] = k2 == 0.0 ? Complex(0.0) : pihat[m] / k2;
    }
    for (int s = 0; s < 2; ++s)
      for (int c = 0; c < d; ++c) {
        Complex* oc = out.data() + (s * d + c) * modes;
        for (std::size_t m = 0; m < modes; ++m)
          oc[m] -= Complex(0.0, g.derivative_wavenumber(m, c)) * pihat[m];
      }
  }
  leray(g, out.data());
  leray(g, out.data() + d * modes);
}

}  // namespace detail

ElsasserState make_state(const Field& z_plus, const Field& z_minus, double t) {
  require_same_grid(z_plus.grid(), z_minus.grid());
  const int d = z_plus.grid().dim();
  require(z_plus.components() == d && z_minus.components() == d, ErrorCode::invalid_argument,
          "Elsasser fields must be d-vectors");
  ElsasserState s;
  s.z_plus = require_solenoidal(z_plus, "z+");
  s.z_minus = require_solenoidal(z_minus, "z-");
  s.t = t;
  return s;
}

ElsasserState to_elsasser(const Field& u, const Field& b, double t) {
  require_same_grid(u.grid(), b.grid());
  const Field us = require_solenoidal(u, "velocity");
  const Field bs = require_solenoidal(b, "magnetic field");
  return make_state(add(us, bs), subtract(us, bs), t);
}

std::pair<Field, Field> from_elsasser(const ElsasserState& state) {
  const Field u = scale(add(state.z_plus, state.z_minus), 0.5);
  const Field b = scale(subtract(state.z_plus, state.z_minus), 0.5);
  return {u.with_solenoidal_flag(true), b.with_solenoidal_flag(true)};
}

Field pressure(const ElsasserState& state) {
  const Grid& g = state.grid();
  const int d = g.dim();
  const std::size_t modes = g.modes();
  std::vector<Complex> pihat(modes, 0.0);
  std::vector<double> prod(g.points());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      auto a = state.z_minus.component(i);
      auto b = state.z_plus.component(j);
      for (std::size_t x = 0; x < prod.size(); ++x) prod[x] = a[x] * b[x];
      const auto ph = spectral::product_spectrum(g, prod);
      for (std::size_t m = 0; m < modes; ++m)
        pihat[m] -= g.derivative_wavenumber(m, i) * g.derivative_wavenumber(m, j) * ph[m];
    }
  for (std::size_t m = 0; m < modes; ++m) {
    double k2 = 0.0;
    for (int a = 0; a < d; ++a) k2 += g.derivative_wavenumber(m, a) * g.derivative_wavenumber(m, a);
    pihat[m] = k2 == 0.0 ? Complex(0.0) : pihat[m] / k2;
  }
  Spectrum s(state.grid_ptr(), 1);
  s.coeffs = std::move(pihat);
  return Field::from_spectrum(std::move(s));
}

Field pressure_gradient(const ElsasserState& state) { return gradient(pressure(state)); }

std::pair<Field, Field> mhd_tendency(const ElsasserState& state) {
  const detail::Packed z = detail::pack(state);
  detail::Packed out;
  detail::transport_rhs(state.grid(), {}, {}, z, out, true);
  ElsasserState r = detail::unpack(state.grid_ptr(), out, state.t);
  return {std::move(r.z_plus), std::move(r.z_minus)};
}

double cfl_limit(const ElsasserState& state) {
  const double vmax = std::max(lp_norm(state.z_plus, infinity), lp_norm(state.z_minus, infinity));
  if (vmax == 0.0) return std::numeric_limits<double>::infinity();
  return 0.5 * state.grid().spacing() / vmax;
}

ElsasserState step(const ElsasserState& state, double dt, StepReport* report) {
  require(dt > 0.0 && std::isfinite(dt), ErrorCode::invalid_argument, "time step must be > 0");
  const Grid& g = state.grid();
  StepReport r;
  r.dt_limit = cfl_limit(state);
  r.cfl_violated = dt > r.dt_limit;
  if (report) *report = r;

  const detail::Packed z = detail::pack(state);
  const std::size_t n = z.size();
  detail::Packed k1, k2, k3, k4, tmp(n);
  detail::transport_rhs(g, {}, {}, z, k1, true);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = z[i] + 0.5 * dt * k1[i];
  detail::transport_rhs(g, {}, {}, tmp, k2, true);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = z[i] + 0.5 * dt * k2[i];
  detail::transport_rhs(g, {}, {}, tmp, k3, true);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = z[i] + dt * k3[i];
  detail::transport_rhs(g, {}, {}, tmp, k4, true);
  for (std::size_t i = 0; i < n; ++i)
    tmp[i] = z[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return detail::unpack(state.grid_ptr(), tmp, state.t + dt);
}

double energy(const ElsasserState& state) {
  const double p = lp_norm(state.z_plus, 2.0);
  const double m = lp_norm(state.z_minus, 2.0);
  return 0.5 * (p * p + m * m);
}

double cross_helicity(const ElsasserState& state) {
  const double p = lp_norm(state.z_plus, 2.0);
  const double m = lp_norm(state.z_minus, 2.0);
  return 0.25 * (p * p - m * m);
}

}  // namespace paramhd

namespace paramhd::detail {

int time_weights(double tau, double spacing, int count, int (&index)[4], double (&weight)[4]) {
  const int nodes = std::min(count, 4);
  const double x = tau / spacing;
  int first = static_cast<int>(std::floor(x)) - (nodes - 1) / 2;
  first = std::clamp(first, 0, count - nodes);
  for (int a = 0; a < nodes; ++a) {
    index[a] = first + a;
    double w = 1.0;
    for (int b = 0; b < nodes; ++b)
      if (b != a) w *= (x - (first + b)) / static_cast<double>(a - b);
    weight[a] = w;
  }
  // Exactly on a node: use it alone so grid times reproduce stored values.
  const double r = std::round(x);
  if (std::abs(x - r) < 1e-12 && r >= 0 && r < count) {
    index[0] = static_cast<int>(r);
    weight[0] = 1.0;
    return 1;
  }
  return nodes;
}

}  // namespace paramhd::detail
