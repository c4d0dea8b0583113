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

#include "paramhd/field.hpp"

#include <string>

#include "paramhd/error.hpp"

namespace paramhd {

Spectrum::Spectrum(GridPtr g, int m)
    : grid(std::move(g)), components(m), coeffs(grid->modes() * m) {}

std::span<Complex> Spectrum::component(int c) {
  return {coeffs.data() + c * grid->modes(), grid->modes()};
}

std::span<const Complex> Spectrum::component(int c) const {
  return {coeffs.data() + c * grid->modes(), grid->modes()};
}

Field::Field(GridPtr grid, int components)
    : grid_(std::move(grid)), components_(components) {
  require(grid_ != nullptr, ErrorCode::invalid_argument, "field needs a grid");
  require(components >= 1, ErrorCode::invalid_argument, "field needs >= 1 component");
  values_.assign(grid_->points() * components, 0.0);
}

Field::Field(GridPtr grid, int components, std::vector<double> values, bool solenoidal)
    : grid_(std::move(grid)),
      components_(components),
      values_(std::move(values)),
      solenoidal_(solenoidal) {
  require(grid_ != nullptr, ErrorCode::invalid_argument, "field needs a grid");
  require(components >= 1, ErrorCode::invalid_argument, "field needs >= 1 component");
  require(values_.size() == grid_->points() * components, ErrorCode::invalid_argument,
          "field value count " + std::to_string(values_.size()) + " does not match grid");
  require(!solenoidal || components == grid_->dim(), ErrorCode::invalid_argument,
          "only d-component fields can be solenoidal");
}

Field Field::from_spectrum(Spectrum spectrum, bool solenoidal) {
  Field f(spectrum.grid, spectrum.components, inverse_transform(spectrum), solenoidal);
  f.spectrum_ = std::make_shared<const Spectrum>(std::move(spectrum));
  return f;
}

std::span<const double> Field::component(int c) const {
  require(c >= 0 && c < components_, ErrorCode::out_of_range, "component index out of range");
  return {values_.data() + c * grid_->points(), grid_->points()};
}

Spectrum Field::spectrum() const {
  if (spectrum_) return *spectrum_;
  return transform(grid_, values_, components_);
}

Field Field::with_solenoidal_flag(bool flag) const {
  Field f = *this;
  require(!flag || components_ == grid_->dim(), ErrorCode::invalid_argument,
          "only d-component fields can be solenoidal");
  f.solenoidal_ = flag;
  return f;
}

Spectrum transform(const GridPtr& grid, std::span<const double> values, int components) {
  require(values.size() == grid->points() * components, ErrorCode::invalid_argument,
          "value count does not match grid");
  Spectrum s(grid, components);
  for (int c = 0; c < components; ++c)
    grid->forward(values.data() + c * grid->points(), s.component(c).data());
  return s;
}

std::vector<double> inverse_transform(const Spectrum& s) {
  const Grid& g = *s.grid;
  std::vector<double> out(g.points() * s.components);
  for (int c = 0; c < s.components; ++c)
    g.inverse(s.component(c).data(), out.data() + c * g.points());
  return out;
}

std::vector<double> physical(const Grid& grid, std::span<const Complex> coeffs) {
  std::vector<double> out(grid.points());
  grid.inverse(coeffs.data(), out.data());
  return out;
}

void set_mode(Spectrum& s, int component, std::span<const int> xi, Complex value) {
  const Grid& g = *s.grid;
  auto comp = s.component(component);
  bool conj = false;
  const std::size_t idx = g.mode_index(xi, conj);
  comp[idx] = conj ? std::conj(value) : value;
  if (xi[g.dim() - 1] == 0) {
    int neg[3];
    for (int a = 0; a < g.dim(); ++a) neg[a] = -xi[a];
    bool c2 = false;
    const std::size_t partner = g.mode_index(std::span<const int>(neg, g.dim()), c2);
    comp[partner] = std::conj(value);
    if (partner == idx) comp[idx] = Complex(value.real(), 0.0);
  }
}

Complex get_mode(const Spectrum& s, int component, std::span<const int> xi) {
  bool conj = false;
  const std::size_t idx = s.grid->mode_index(xi, conj);
  const Complex v = s.component(component)[idx];
  return conj ? std::conj(v) : v;
}

void require_same_grid(const Grid& a, const Grid& b) {
  require(a.same_shape(b), ErrorCode::grid_mismatch,
          "fields live on different grids (" + std::to_string(a.dim()) + "D N=" +
              std::to_string(a.n()) + " vs " + std::to_string(b.dim()) + "D N=" +
              std::to_string(b.n()) + ")");
}

}  // namespace paramhd
