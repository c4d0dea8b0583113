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

#include "paramhd/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "paramhd/error.hpp"
#include "paramhd/filter_bank.hpp"

namespace paramhd {

namespace spectral {

Spectrum multiply_by(const Spectrum& s, std::span<const double> multiplier) {
  Spectrum out = s;
  multiply_in_place(out, multiplier);
  return out;
}

void multiply_in_place(Spectrum& s, std::span<const double> multiplier) {
  const std::size_t modes = s.grid->modes();
  for (int c = 0; c < s.components; ++c) {
    auto comp = s.component(c);
    for (std::size_t m = 0; m < modes; ++m) comp[m] *= multiplier[m];
  }
}

void truncate(const Grid& grid, std::span<Complex> coeffs) {
  for (std::size_t m = 0; m < grid.modes(); ++m)
    if (!grid.retained(m)) coeffs[m] = 0.0;
}

void truncate(Spectrum& s) {
  for (int c = 0; c < s.components; ++c) truncate(*s.grid, s.component(c));
}

std::vector<Complex> derivative(const Grid& grid, std::span<const Complex> coeffs, int axis) {
  std::vector<Complex> out(grid.modes());
  for (std::size_t m = 0; m < grid.modes(); ++m)
    out[m] = Complex(0.0, grid.derivative_wavenumber(m, axis)) * coeffs[m];
  return out;
}

std::vector<Complex> product_spectrum(const Grid& grid, std::span<const double> values) {
  std::vector<Complex> out(grid.modes());
  grid.forward(values.data(), out.data());
  truncate(grid, out);
  return out;
}

void leray_in_place(Spectrum& v) {
  const Grid& g = *v.grid;
  const int d = g.dim();
  require(v.components == d, ErrorCode::invalid_argument,
          "Leray projection needs a d-component field");
  for (std::size_t m = 0; m < g.modes(); ++m) {
    double k2 = 0.0;
    for (int a = 0; a < d; ++a) k2 += g.derivative_wavenumber(m, a) * g.derivative_wavenumber(m, a);
    if (k2 == 0.0) continue;
    Complex dot = 0.0;
    for (int a = 0; a < d; ++a) dot += g.derivative_wavenumber(m, a) * v.component(a)[m];
    dot /= k2;
    for (int a = 0; a < d; ++a) v.component(a)[m] -= g.derivative_wavenumber(m, a) * dot;
  }
}

}  // namespace spectral

namespace {

Field apply_multiplier(const Field& f, std::span<const double> multiplier) {
  Spectrum s = f.spectrum();
  spectral::multiply_in_place(s, multiplier);
  return Field::from_spectrum(std::move(s), f.solenoidal());
}

Field scalar_from(const GridPtr& grid, std::vector<Complex> coeffs) {
  Spectrum s(grid, 1);
  s.coeffs = std::move(coeffs);
  return Field::from_spectrum(std::move(s));
}

}  // namespace

Field dyadic_block(const Field& f, int j) {
  return apply_multiplier(f, f.grid().filter_bank().block(j));
}

Field low_pass(const Field& f, int j) {
  return apply_multiplier(f, f.grid().filter_bank().low_pass(j));
}

Field spectral_derivative(const Field& f, const MultiIndex& alpha) {
  const Grid& g = f.grid();
  int order = 0;
  for (int a = 0; a < 3; ++a) {
    require(alpha[a] >= 0, ErrorCode::invalid_argument, "negative derivative order");
    require(a < g.dim() || alpha[a] == 0, ErrorCode::invalid_argument,
            "derivative along an axis the grid does not have");
    order += alpha[a];
  }
  require(order <= 4, ErrorCode::invalid_argument,
          "derivative order " + std::to_string(order) + " exceeds 4");
  Spectrum s = f.spectrum();
  for (std::size_t m = 0; m < g.modes(); ++m) {
    Complex factor = 1.0;
    for (int a = 0; a < g.dim(); ++a) {
      if (alpha[a] == 0) continue;
      const double k = alpha[a] % 2 == 1 ? g.derivative_wavenumber(m, a)
                                         : static_cast<double>(g.wavenumber(m, a));
      factor *= std::pow(Complex(0.0, k), alpha[a]);
    }
    for (int c = 0; c < s.components; ++c) s.component(c)[m] *= factor;
  }
  return Field::from_spectrum(std::move(s));
}

Field gradient(const Field& f) {
  require(f.components() == 1, ErrorCode::invalid_argument, "gradient needs a scalar field");
  return gradient_tensor(f);
}

Field gradient_tensor(const Field& v) {
  const Grid& g = v.grid();
  const int d = g.dim();
  const int m = v.components();
  const Spectrum s = v.spectrum();
  Spectrum out(v.grid_ptr(), d * m);
  for (int i = 0; i < d; ++i)
    for (int c = 0; c < m; ++c) {
      auto dst = out.component(i * m + c);
      auto src = s.component(c);
      for (std::size_t k = 0; k < g.modes(); ++k)
        dst[k] = Complex(0.0, g.derivative_wavenumber(k, i)) * src[k];
    }
  return Field::from_spectrum(std::move(out));
}

Field divergence(const Field& v) {
  const Grid& g = v.grid();
  require(v.components() == g.dim(), ErrorCode::invalid_argument,
          "divergence needs a d-component field");
  const Spectrum s = v.spectrum();
  std::vector<Complex> out(g.modes());
  for (int a = 0; a < g.dim(); ++a) {
    auto src = s.component(a);
    for (std::size_t k = 0; k < g.modes(); ++k)
      out[k] += Complex(0.0, g.derivative_wavenumber(k, a)) * src[k];
  }
  return scalar_from(v.grid_ptr(), std::move(out));
}

Field curl(const Field& v) {
  const Grid& g = v.grid();
  const int d = g.dim();
  require(v.components() == d, ErrorCode::invalid_argument, "curl needs a d-component field");
  const Spectrum s = v.spectrum();
  auto dd = [&](int axis, int comp) { return spectral::derivative(g, s.component(comp), axis); };
  if (d == 2) {
    auto a = dd(0, 1);
    auto b = dd(1, 0);
    for (std::size_t k = 0; k < g.modes(); ++k) a[k] -= b[k];
    return scalar_from(v.grid_ptr(), std::move(a));
  }
  Spectrum out(v.grid_ptr(), 3);
  for (int c = 0; c < 3; ++c) {
    const int p = (c + 1) % 3;
    const int q = (c + 2) % 3;
    auto a = dd(p, q);
    auto b = dd(q, p);
    auto dst = out.component(c);
    for (std::size_t k = 0; k < g.modes(); ++k) dst[k] = a[k] - b[k];
  }
  return Field::from_spectrum(std::move(out));
}

Field riesz(const Field& f, int axis) {
  const Grid& g = f.grid();
  require(f.components() == 1, ErrorCode::invalid_argument, "Riesz transform needs a scalar");
  require(axis >= 0 && axis < g.dim(), ErrorCode::out_of_range, "Riesz axis out of range");
  Spectrum s = f.spectrum();
  auto comp = s.component(0);
  for (std::size_t m = 0; m < g.modes(); ++m) {
    double k2 = 0.0;
    for (int a = 0; a < g.dim(); ++a)
      k2 += g.derivative_wavenumber(m, a) * g.derivative_wavenumber(m, a);
    if (k2 == 0.0) {
      comp[m] = 0.0;
      continue;
    }
    comp[m] *= Complex(0.0, g.derivative_wavenumber(m, axis) / std::sqrt(k2));
  }
  return Field::from_spectrum(std::move(s));
}

Field leray_project(const Field& v) {
  Spectrum s = v.spectrum();
  spectral::leray_in_place(s);
  return Field::from_spectrum(std::move(s), true);
}

double solenoidal_residual(const Field& v) {
  const Grid& g = v.grid();
  require(v.components() == g.dim(), ErrorCode::invalid_argument,
          "solenoidal check needs a d-component field");
  const Spectrum s = v.spectrum();
  double worst = 0.0;
  double largest = 0.0;
  for (std::size_t m = 0; m < g.modes(); ++m) {
    Complex dot = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      dot += g.derivative_wavenumber(m, a) * s.component(a)[m];
      largest = std::max(largest, std::abs(s.component(a)[m]));
    }
    worst = std::max(worst, std::abs(dot));
  }
  return largest == 0.0 ? 0.0 : worst / largest;
}

Field require_solenoidal(const Field& v, const char* what) {
  require(v.components() == v.grid().dim(), ErrorCode::not_solenoidal,
          std::string(what) + " must be a d-component vector field");
  if (v.solenoidal()) return v;
  const double r = solenoidal_residual(v);
  require(r <= 1e-10, ErrorCode::not_solenoidal,
          std::string(what) + " is not solenoidal (residual " + std::to_string(r) + ")");
  return v.with_solenoidal_flag(true);
}

Field dealias(const Field& f) {
  Spectrum s = f.spectrum();
  spectral::truncate(s);
  return Field::from_spectrum(std::move(s), f.solenoidal());
}

Field multiply(const Field& a, const Field& b) {
  require_same_grid(a.grid(), b.grid());
  const Field& scalar = a.components() == 1 ? a : b;
  const Field& other = a.components() == 1 ? b : a;
  require(scalar.components() == 1, ErrorCode::invalid_argument,
          "multiply needs at least one scalar factor");
  const Grid& g = a.grid();
  Spectrum ss = scalar.spectrum();
  spectral::truncate(ss);
  const auto sp = physical(g, ss.component(0));
  Spectrum os = other.spectrum();
  spectral::truncate(os);
  Spectrum out(a.grid_ptr(), other.components());
  std::vector<double> prod(g.points());
  for (int c = 0; c < other.components(); ++c) {
    const auto op = physical(g, os.component(c));
    for (std::size_t x = 0; x < g.points(); ++x) prod[x] = sp[x] * op[x];
    auto spec = spectral::product_spectrum(g, prod);
    std::copy(spec.begin(), spec.end(), out.component(c).begin());
  }
  return Field::from_spectrum(std::move(out));
}

namespace {

Field combine(const Field& a, const Field& b, double sign) {
  require_same_grid(a.grid(), b.grid());
  require(a.components() == b.components(), ErrorCode::invalid_argument,
          "component counts differ");
  std::vector<double> v(a.values().begin(), a.values().end());
  auto bv = b.values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += sign * bv[i];
  return Field(a.grid_ptr(), a.components(), std::move(v), a.solenoidal() && b.solenoidal());
}

}  // namespace

Field add(const Field& a, const Field& b) { return combine(a, b, 1.0); }
Field subtract(const Field& a, const Field& b) { return combine(a, b, -1.0); }

Field scale(const Field& a, double c) {
  std::vector<double> v(a.values().begin(), a.values().end());
  for (double& x : v) x *= c;
  return Field(a.grid_ptr(), a.components(), std::move(v), a.solenoidal());
}

std::vector<double> mean(const Field& f) {
  std::vector<double> out(f.components(), 0.0);
  for (int c = 0; c < f.components(); ++c) {
    double sum = 0.0;
    for (double x : f.component(c)) sum += x;
    out[c] = sum / static_cast<double>(f.grid().points());
  }
  return out;
}

}  // namespace paramhd
