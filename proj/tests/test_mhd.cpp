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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "paramhd/error.hpp"
#include "paramhd/function_spaces.hpp"
#include "paramhd/initial_data.hpp"
#include "paramhd/mhd.hpp"
#include "paramhd/picard.hpp"
#include "paramhd/random_fields.hpp"
#include "paramhd/spectral_ops.hpp"
#include "paramhd/trajectory.hpp"
#include "support.hpp"

using namespace paramhd;
using testing::max_abs;
using testing::max_abs_diff;
using testing::sample;

namespace {

const RandomFieldSpec kSmooth{0.5, 3.0, 1.0, 8.0};

Field comp(const Field& v, int c) {
  return Field(v.grid_ptr(), 1, {v.component(c).begin(), v.component(c).end()});
}

// (a . grad) b, built component by component.
Field advect(const Field& a, const Field& b) {
  const int d = a.grid().dim();
  std::vector<double> out(d * a.grid().points(), 0.0);
  for (int c = 0; c < d; ++c) {
    Field acc(a.grid_ptr(), 1);
    for (int i = 0; i < d; ++i) {
      MultiIndex alpha{0, 0, 0};
      alpha[i] = 1;
      acc = add(acc, multiply(comp(a, i), spectral_derivative(comp(b, c), alpha)));
    }
    std::copy(acc.values().begin(), acc.values().end(), out.begin() + c * a.grid().points());
  }
  return Field(a.grid_ptr(), d, std::move(out));
}

// Velocity-form Euler: du/dt = -(u.grad u) - grad p with -Lap p = d_i d_j (u_i u_j).
Field euler_oracle(const Field& u) {
  const GridPtr& g = u.grid_ptr();
  const int d = g->dim();
  Field src(g, 1);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      MultiIndex alpha{0, 0, 0};
      alpha[i] += 1;
      alpha[j] += 1;
      src = add(src, spectral_derivative(multiply(comp(u, i), comp(u, j)), alpha));
    }
  Spectrum ps = src.spectrum();
  for (std::size_t m = 1; m < g->modes(); ++m) ps.coeffs[m] /= g->radius(m) * g->radius(m);
  ps.coeffs[0] = 0.0;
  Field p = Field::from_spectrum(ps);
  return scale(add(advect(u, u), gradient(p)), -1.0);
}

Field rk4_euler(const Field& u, double dt) {
  Field k1 = euler_oracle(u);
  Field k2 = euler_oracle(add(u, scale(k1, dt / 2)));
  Field k3 = euler_oracle(add(u, scale(k2, dt / 2)));
  Field k4 = euler_oracle(add(u, scale(k3, dt)));
  Field inc = add(add(k1, scale(k2, 2.0)), add(scale(k3, 2.0), k4));
  return add(u, scale(inc, dt / 6));
}

double state_diff(const ElsasserState& a, const ElsasserState& b) {
  return std::max(max_abs_diff(a.z_plus.values(), b.z_plus.values()),
                  max_abs_diff(a.z_minus.values(), b.z_minus.values()));
}

ElsasserState advance(ElsasserState s, double dt, int steps) {
  for (int i = 0; i < steps; ++i) s = step(s, dt);
  return s;
}

ElsasserState zero_state(const GridPtr& g) {
  Field z = Field(g, g->dim()).with_solenoidal_flag(true);
  return make_state(z, z);
}

}  // namespace

TEST_CASE("Elsasser change of variables") {
  auto g = Grid::create(2, 32);
  auto [u, b] = random_pair(g, kSmooth, 1);
  auto s = to_elsasser(u, b);
  auto [u2, b2] = from_elsasser(s);
  CHECK(max_abs_diff(u2.values(), u.values()) <= 1e-14);
  CHECK(max_abs_diff(b2.values(), b.values()) <= 1e-14);

  Field zero = Field(g, 2).with_solenoidal_flag(true);
  auto e = to_elsasser(u, zero);
  CHECK(max_abs_diff(e.z_plus.values(), u.values()) == 0.0);
  CHECK(max_abs_diff(e.z_minus.values(), u.values()) == 0.0);
  auto a = to_elsasser(u, u);
  CHECK(max_abs(a.z_minus.values()) == 0.0);
}

TEST_CASE("Elsasser inputs are validated") {
  auto g = Grid::create(2, 32);
  auto [u, b] = random_pair(g, kSmooth, 2);
  Field rough = random_vector(g, 2, kSmooth, 3);
  CHECK_THROWS_AS(to_elsasser(rough, b), Error);
  auto h = Grid::create(2, 16);
  auto [uh, bh] = random_pair(h, RandomFieldSpec{0.5, 3, 1, 5}, 2);
  CHECK_THROWS_AS(to_elsasser(u, bh), Error);
  CHECK_THROWS_AS(make_state(comp(u, 0), comp(b, 0)), Error);
}

TEST_CASE("pressure solves its Poisson equation") {
  for (auto [dim, n] : {std::pair{2, 32}, std::pair{3, 16}}) {
    auto g = Grid::create(dim, n);
    RandomFieldSpec spec{0.5, 3.0, 1.0, double(g->dealias_cutoff())};
    auto [u, b] = random_pair(g, spec, 4);
    auto s = to_elsasser(u, b);
    Field pi = pressure(s);
    // d_i d_j (z-_i z+_j)
    Field src(g, 1);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        MultiIndex alpha{0, 0, 0};
        alpha[i] += 1;
        alpha[j] += 1;
        src = add(src, spectral_derivative(multiply(comp(s.z_minus, i), comp(s.z_plus, j)), alpha));
      }
    Field lap(g, 1);
    for (int i = 0; i < dim; ++i) {
      MultiIndex alpha{0, 0, 0};
      alpha[i] = 2;
      lap = add(lap, spectral_derivative(pi, alpha));
    }
    CHECK(lp_norm(add(lap, src), 2.0) <= 1e-10 * lp_norm(src, 2.0));

    // advection plus pressure gradient is solenoidal
    Field total = add(advect(s.z_minus, s.z_plus), pressure_gradient(s));
    CHECK(solenoidal_residual(total) <= 1e-10);
  }
}

TEST_CASE("constant z- gives no pressure") {
  auto g = Grid::create(2, 32);
  Field zp = random_solenoidal(g, kSmooth, 5);
  Field zm = sample(
      g, 2,
      [](const double*, double* o) {
        o[0] = 0.3;
        o[1] = -1.1;
      },
      true);
  auto s = make_state(zp, zm);
  CHECK(max_abs(pressure_gradient(s).values()) <= 1e-12);
}

TEST_CASE("Alfven and zero states are steady") {
  auto g = Grid::create(2, 32);
  auto [u, b] = alfven_state(g, kSmooth, 6);
  auto s = to_elsasser(u, b);
  auto [tp, tm] = mhd_tendency(s);
  CHECK(max_abs(tp.values()) <= 1e-14);
  CHECK(max_abs(tm.values()) <= 1e-14);
  auto s1 = step(s, 1e-2);
  CHECK(state_diff(s1, s) <= 1e-12);
  CHECK(s1.t == doctest::Approx(1e-2));

  auto z = zero_state(g);
  auto [zp, zm] = mhd_tendency(z);
  CHECK(max_abs(zp.values()) == 0.0);
  CHECK(max_abs(zm.values()) == 0.0);
  CHECK(std::isinf(cfl_limit(z)));
  CHECK(state_diff(step(z, 0.1), z) == 0.0);
}

TEST_CASE("b = 0 tendency matches a velocity-form Euler oracle") {
  for (auto [dim, n] : {std::pair{2, 32}, std::pair{3, 16}}) {
    auto g = Grid::create(dim, n);
    auto [u, b] = taylor_green(g, 1.0, dim == 2 ? 0.1 : 0.0, 3);
    auto s = to_elsasser(u, b);
    auto [tp, tm] = mhd_tendency(s);
    Field want = euler_oracle(u);
    CHECK(max_abs_diff(tp.values(), want.values()) <= 1e-10);
    CHECK(max_abs_diff(tm.values(), want.values()) <= 1e-10);
    CHECK(solenoidal_residual(tp) <= 1e-10);
  }
}

TEST_CASE("unperturbed 2D Taylor-Green is a steady Euler state") {
  auto g = Grid::create(2, 32);
  auto [u, b] = taylor_green(g);
  auto [tp, tm] = mhd_tendency(to_elsasser(u, b));
  CHECK(max_abs(tp.values()) <= 1e-13);
}

TEST_CASE("one step agrees with an independent Euler RK4 step") {
  auto g = Grid::create(2, 32);
  auto [u, b] = taylor_green(g, 1.0, 0.2, 9);
  const double dt = 0.01;
  auto s1 = step(to_elsasser(u, b), dt);
  Field want = rk4_euler(u, dt);
  CHECK(max_abs_diff(s1.z_plus.values(), want.values()) <= 1e-10);
  CHECK(max_abs_diff(s1.z_minus.values(), want.values()) <= 1e-10);
}

TEST_CASE("RK4 convergence order") {
  auto g = Grid::create(2, 32);
  auto [u, b] = random_pair(g, RandomFieldSpec{1.0, 3.0, 1.0, 6.0}, 10);
  auto s0 = to_elsasser(u, b);
  const double T = 0.2;
  ElsasserState sol[3];
  for (int r = 0; r < 3; ++r) {
    const int steps = 10 << r;
    sol[r] = advance(s0, T / steps, steps);
  }
  double e1 = state_diff(sol[0], sol[1]);
  double e2 = state_diff(sol[1], sol[2]);
  double order = std::log2(e1 / e2);
  MESSAGE("observed order " << order);
  CHECK(order >= 3.8);
}

TEST_CASE("steps stay solenoidal and report CFL violations") {
  auto g = Grid::create(2, 32);
  auto [u, b] = orszag_tang(g);
  auto s = to_elsasser(u, b);
  const double limit = cfl_limit(s);
  CHECK(limit == doctest::Approx(0.5 * g->spacing() / 2.0).epsilon(0.05));
  StepReport report;
  auto s1 = step(s, 0.5 * limit, &report);
  CHECK_FALSE(report.cfl_violated);
  CHECK(report.dt_limit == doctest::Approx(limit));
  CHECK(solenoidal_residual(s1.z_plus) <= 1e-10);
  CHECK(solenoidal_residual(s1.z_minus) <= 1e-10);
  step(s, 2.0 * limit, &report);
  CHECK(report.cfl_violated);
  CHECK_THROWS_AS(step(s, 0.0), Error);
  CHECK_THROWS_AS(step(s, -1e-3), Error);
}

TEST_CASE("energy and cross helicity") {
  auto g = Grid::create(2, 64);
  auto [u, b] = orszag_tang(g);
  auto s = to_elsasser(u, b);
  // <|u|^2> = 1/2 + 1/2, <|b|^2> = 1/2 + 1/2; <u.b> = 1/2
  CHECK(energy(s) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(cross_helicity(s) == doctest::Approx(0.5).epsilon(1e-14));
  const double e0 = energy(s), h0 = cross_helicity(s);
  auto s1 = advance(s, 2e-3, 50);
  CHECK(std::abs(energy(s1) - e0) <= 1e-8 * e0);
  CHECK(std::abs(cross_helicity(s1) - h0) <= 1e-8 * e0);
}

TEST_CASE("Picard first iterate is frozen low-pass data") {
  auto g = Grid::create(2, 32);
  auto [u, b] = random_pair(g, kSmooth, 11);
  auto s0 = to_elsasser(u, b);
  PicardRun run = picard_iterate(s0.z_plus, s0.z_minus, 2.5, 2, 2, 0.05, 0.01, 1);
  REQUIRE(run.iterates.size() == 2u);
  CHECK(run.steps == 5);
  CHECK(std::isnan(run.iterates[0].difference_norm));
  CHECK(max_abs(run.iterates[0].final_state.z_plus.values()) == 0.0);
  const auto& z1 = run.iterates[1].final_state;
  CHECK(max_abs_diff(z1.z_plus.values(), low_pass(s0.z_plus, 2).values()) <= 1e-14);
  CHECK(max_abs_diff(z1.z_minus.values(), low_pass(s0.z_minus, 2).values()) <= 1e-14);
  double want = tl_norm(low_pass(s0.z_plus, 2), run.difference_spec) +
                tl_norm(low_pass(s0.z_minus, 2), run.difference_spec);
  CHECK(run.iterates[1].difference_norm == doctest::Approx(want).epsilon(1e-12));
  CHECK(run.difference_spec == NormSpec{1.5, 2, 2, false});
  CHECK(run.ratios().empty());
}

TEST_CASE("Picard iterates contract on a coarse grid") {
  auto g = Grid::create(2, 32);
  auto [u, b] = random_pair(g, RandomFieldSpec{0.5, 4.0, 1.0, 8.0}, 42);
  auto s0 = to_elsasser(u, b);
  const int n_max = picard_max_iterations(*g);
  CHECK(n_max == g->j_max() + 1);
  PicardRun run = picard_iterate(s0.z_plus, s0.z_minus, 2.5, 2, 2, 0.1, 0.005, n_max);
  auto r = run.ratios();
  REQUIRE(r.size() == static_cast<std::size_t>(n_max - 1));
  for (double v : r) CHECK(v < 1.0);
  CHECK(run.max_cfl_ratio < 1.0);
}

TEST_CASE("Picard argument checks") {
  auto g = Grid::create(2, 32);
  auto [u, b] = random_pair(g, kSmooth, 12);
  auto s0 = to_elsasser(u, b);
  auto code = [&](int n_max, double s, double T, double dt) {
    try {
      picard_iterate(s0.z_plus, s0.z_minus, s, 2, 2, T, dt, n_max);
    } catch (const Error& e) {
      return static_cast<int>(e.code());
    }
    return -1;
  };
  CHECK(code(0, 2.5, 0.1, 0.01) == static_cast<int>(ErrorCode::out_of_range));
  CHECK(code(picard_max_iterations(*g) + 1, 2.5, 0.1, 0.01) == static_cast<int>(ErrorCode::out_of_range));
  CHECK(code(2, 2.5, 0.1, 0.03) == static_cast<int>(ErrorCode::invalid_argument));
  CHECK(code(2, 2.5, -0.1, 0.01) == static_cast<int>(ErrorCode::invalid_argument));
  CHECK(code(2, 1.0, 0.1, 0.01) == static_cast<int>(ErrorCode::invalid_argument));
}

TEST_CASE("trajectories of zero and constant velocity") {
  auto g = Grid::create(2, 16);
  VelocityHistory zero{0.0, {Field(g, 2).with_solenoidal_flag(true)}};
  TrajectoryMap m = trajectory_map(zero, g, 1.0, 0.1);
  for (std::size_t p = 0; p < g->points(); ++p)
    for (int a = 0; a < 2; ++a) CHECK(m.positions[a * g->points() + p] == doctest::Approx(g->coordinate(p, a)));
  CHECK(m.max_volume_defect() <= 1e-14);

  Field c = sample(
      g, 2,
      [](const double*, double* o) {
        o[0] = 0.3;
        o[1] = -0.7;
      },
      true);
  VelocityHistory steady{0.0, {c}};
  const double T = 2.0;
  TrajectoryMap mc = trajectory_map(steady, g, T, 0.05);
  const double two_pi = 2.0 * std::numbers::pi;
  double worst = 0.0;
  for (std::size_t p = 0; p < g->points(); ++p) {
    double x = std::fmod(g->coordinate(p, 0) + 0.3 * T, two_pi);
    double y = std::fmod(g->coordinate(p, 1) - 0.7 * T + two_pi, two_pi);
    worst = std::max(worst, std::abs(mc.wrapped(p, 0) - x));
    worst = std::max(worst, std::abs(mc.wrapped(p, 1) - y));
  }
  CHECK(worst <= 1e-12);
  CHECK(mc.max_volume_defect() <= 1e-12);
}

TEST_CASE("shear-flow trajectories") {
  auto g = Grid::create(2, 32);
  Field v = sample(
      g, 2,
      [](const double* x, double* o) {
        o[0] = std::sin(x[1]);
        o[1] = 0.0;
      },
      true);
  VelocityHistory h{0.0, {v}};
  const double T = 1.0;
  TrajectoryMap m = trajectory_map(h, g, T, 0.01);
  double worst = 0.0;
  for (std::size_t p = 0; p < g->points(); ++p) {
    double a1 = g->coordinate(p, 0), a2 = g->coordinate(p, 1);
    worst = std::max(worst, std::abs(m.positions[p] - (a1 + T * std::sin(a2))));
    worst = std::max(worst, std::abs(m.positions[g->points() + p] - a2));
  }
  CHECK(worst <= 1e-12);
  CHECK(m.max_volume_defect() <= 1e-12);
}

TEST_CASE("time-dependent history is volume preserving") {
  auto g = Grid::create(2, 32);
  auto [u, b] = random_pair(g, RandomFieldSpec{0.3, 4.0, 1.0, 4.0}, 13);
  auto s = to_elsasser(u, b);
  VelocityHistory h{0.02, {}};
  for (int i = 0; i <= 10; ++i) {
    h.snapshots.push_back(s.z_minus);
    if (i < 10) s = step(s, h.dt);
  }
  TrajectoryMap m = trajectory_map(h, g, 0.2, 0.01);
  CHECK(m.max_volume_defect() <= 1e-4);
  CHECK_THROWS_AS(trajectory_map(h, g, 0.5, 0.01), Error);
  CHECK_THROWS_AS(trajectory_map(VelocityHistory{}, g, 0.1, 0.01), Error);
}
