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

#include "paramhd/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "paramhd/error.hpp"
#include "paramhd/spectral_ops.hpp"
#include "transport.hpp"

namespace paramhd {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Nonzero Fourier modes of one snapshot, ready for pointwise evaluation.
struct SparseField {
  int dim = 0;
  int kmax = 0;
  std::vector<int> xi;        // dim per mode
  std::vector<double> weight;  // 2 when the conjugate partner is implicit
  std::vector<Complex> coeff;  // dim per mode

  explicit SparseField(const Field& v) : dim(v.grid().dim()) {
    const Grid& g = v.grid();
    const Spectrum s = v.spectrum();
    double peak = 0.0;
    for (const Complex& c : s.coeffs) peak = std::max(peak, std::abs(c));
    const double cut = peak * 1e-15;
    for (std::size_t m = 0; m < g.modes(); ++m) {
      bool keep = false;
      bool nyquist = false;
      for (int a = 0; a < dim; ++a) {
        keep = keep || std::abs(s.component(a)[m]) > cut;
        nyquist = nyquist || std::abs(g.wavenumber(m, a)) == g.n() / 2;
      }
      if (!keep || nyquist) continue;
      for (int a = 0; a < dim; ++a) {
        xi.push_back(g.wavenumber(m, a));
        kmax = std::max(kmax, std::abs(g.wavenumber(m, a)));
        coeff.push_back(s.component(a)[m]);
      }
      weight.push_back(g.parseval_weight(m));
    }
  }

  void evaluate(const double* x, double* out, std::vector<Complex>& table) const {
    const int width = 2 * kmax + 1;
    table.resize(dim * width);
    for (int a = 0; a < dim; ++a) {
      const Complex e(std::cos(x[a]), std::sin(x[a]));
      Complex* row = table.data() + a * width + kmax;
      row[0] = 1.0;
      for (int k = 1; k <= kmax; ++k) {
        row[k] = row[k - 1] * e;
        row[-k] = std::conj(row[k]);
      }
    }
    for (int a = 0; a < dim; ++a) out[a] = 0.0;
    for (std::size_t m = 0; m < weight.size(); ++m) {
      Complex phase = 1.0;
      for (int a = 0; a < dim; ++a) phase *= table[a * width + kmax + xi[m * dim + a]];
      for (int a = 0; a < dim; ++a)
        out[a] += weight[m] * (coeff[m * dim + a] * phase).real();
    }
  }
};

}  // namespace

double TrajectoryMap::wrapped(std::size_t point, int axis) const {
  const double x = positions[axis * labels->points() + point];
  double r = std::fmod(x, two_pi);
  if (r < 0.0) r += two_pi;
  return r;
}

double TrajectoryMap::max_volume_defect() const {
  double worst = 0.0;
  for (double v : det_jacobian.values()) worst = std::max(worst, std::abs(v - 1.0));
  return worst;
}

TrajectoryMap trajectory_map(const VelocityHistory& history, const GridPtr& labels, double T,
                             double dt) {
  require(!history.snapshots.empty(), ErrorCode::invalid_argument, "empty velocity history");
  require(T >= 0.0 && dt > 0.0, ErrorCode::invalid_argument, "need T >= 0 and dt > 0");
  const int d = labels->dim();
  for (const Field& v : history.snapshots) {
    require(v.grid().dim() == d && v.components() == d, ErrorCode::invalid_argument,
            "velocity snapshots must be d-vectors on a grid of the label dimension");
  }
  const int count = static_cast<int>(history.snapshots.size());
  require(count == 1 || history.dt > 0.0, ErrorCode::invalid_argument,
          "velocity history needs a positive spacing");
  require(count == 1 || T <= (count - 1) * history.dt * (1.0 + 1e-12),
          ErrorCode::out_of_range, "trajectory time exceeds the velocity history");

  std::vector<SparseField> sparse;
  for (const Field& v : history.snapshots) sparse.emplace_back(v);

  const std::size_t points = labels->points();
  TrajectoryMap map;
  map.labels = labels;
  map.positions.resize(d * points);
  for (std::size_t p = 0; p < points; ++p)
    for (int a = 0; a < d; ++a) map.positions[a * points + p] = labels->coordinate(p, a);

  const long steps = std::lround(std::ceil(T / dt - 1e-12));
  const double h = steps > 0 ? T / static_cast<double>(steps) : 0.0;

  std::vector<Complex> table;
  auto velocity = [&](double tau, const double* x, double* out) {
    if (count == 1) {
      sparse[0].evaluate(x, out, table);
      return;
    }
    int idx[4];
    double w[4];
    const int used = detail::time_weights(tau, history.dt, count, idx, w);
    double tmp[3];
    for (int a = 0; a < d; ++a) out[a] = 0.0;
    for (int k = 0; k < used; ++k) {
      sparse[idx[k]].evaluate(x, tmp, table);
      for (int a = 0; a < d; ++a) out[a] += w[k] * tmp[a];
    }
  };

  for (std::size_t p = 0; p < points; ++p) {
    double x[3], k1[3], k2[3], k3[3], k4[3], y[3];
    for (int a = 0; a < d; ++a) x[a] = map.positions[a * points + p];
    for (long i = 0; i < steps; ++i) {
      const double t = i * h;
      velocity(t, x, k1);
      for (int a = 0; a < d; ++a) y[a] = x[a] + 0.5 * h * k1[a];
      velocity(t + 0.5 * h, y, k2);
      for (int a = 0; a < d; ++a) y[a] = x[a] + 0.5 * h * k2[a];
      velocity(t + 0.5 * h, y, k3);
      for (int a = 0; a < d; ++a) y[a] = x[a] + h * k3[a];
      velocity(t + h, y, k4);
      for (int a = 0; a < d; ++a) x[a] += h / 6.0 * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a]);
    }
    for (int a = 0; a < d; ++a) map.positions[a * points + p] = x[a];
  }
  map.t = T;

  // X = alpha + D with D periodic.
  std::vector<double> disp(d * points);
  for (std::size_t p = 0; p < points; ++p)
    for (int a = 0; a < d; ++a)
      disp[a * points + p] = map.positions[a * points + p] - labels->coordinate(p, a);
  const Field grad = gradient_tensor(Field(labels, d, std::move(disp)));
  std::vector<double> det(points);
  for (std::size_t p = 0; p < points; ++p) {
    // J[a][i] = delta_ai + d_i D_a, stored by gradient_tensor at i * d + a.
    double J[3][3];
    for (int a = 0; a < d; ++a)
      for (int i = 0; i < d; ++i)
        J[a][i] = (a == i ? 1.0 : 0.0) + grad.component(i * d + a)[p];
    if (d == 2) {
      det[p] = J[0][0] * J[1][1] - J[0][1] * J[1][0];
    } else {
      det[p] = J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
               J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
               J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
    }
  }
  map.det_jacobian = Field(labels, 1, std::move(det));
  return map;
}

}  // namespace paramhd
