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
#include <random>

#include "paramhd/error.hpp"
#include "paramhd/filter_bank.hpp"
#include "paramhd/function_spaces.hpp"
#include "paramhd/random_fields.hpp"
#include "paramhd/spectral_ops.hpp"
#include "support.hpp"

using namespace paramhd;
using testing::max_abs;
using testing::max_abs_diff;
using testing::sample;

namespace {

const RandomFieldSpec kRandom{1.0, 2.0, 1.0, 5.0};

// Full-band data, Nyquist included.
Field noise(const GridPtr& g, int m, std::uint32_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(m * g->points());
  for (double& x : v) x = u(rng);
  return Field(g, m, std::move(v));
}

Field partition_sum(const Field& f) {
  const Grid& g = f.grid();
  Field acc = low_pass(f, g.j0());
  for (int j = g.j0(); j <= g.j_max(); ++j) acc = add(acc, dyadic_block(f, j));
  return acc;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::io;
}

}  // namespace

TEST_CASE("grid shape and dyadic range") {
  auto g = Grid::create(2, 64);
  CHECK(g->j0() == -1);
  CHECK(g->j_max() == 5);
  CHECK(g->points() == 64u * 64u);
  CHECK(g->modes() == 64u * 33u);
  CHECK(Grid::create(3, 16)->j_max() == 3);
  CHECK(Grid::create(2, 16)->dealias_cutoff() == 5);

  CHECK(code_of([] { Grid::create(2, 8); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { Grid::create(2, 48); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { Grid::create(4, 16); }) == ErrorCode::invalid_argument);
}

TEST_CASE("transform round trip and coefficient normalization") {
  auto g = Grid::create(3, 16);
  Field f = random_scalar(g, kRandom, 3);
  Spectrum s = f.spectrum();
  auto back = inverse_transform(s);
  CHECK(max_abs_diff(back, f.values()) <= 1e-13 * max_abs(f.values()));

  Field c = sample(g, 1, [](const double* x, double* o) { o[0] = 2.0 * std::cos(x[0]); });
  int xi[3] = {1, 0, 0};
  CHECK(std::abs(get_mode(c.spectrum(), 0, xi) - Complex(1.0, 0.0)) < 1e-14);
  int nxi[3] = {-1, 0, 0};
  CHECK(std::abs(get_mode(c.spectrum(), 0, nxi) - Complex(1.0, 0.0)) < 1e-14);
}

TEST_CASE("profile values") {
  CHECK(chi_profile(0.0) == 1.0);
  CHECK(chi_profile(1.0) == 1.0);
  CHECK(chi_profile(4.0 / 3.0) == 0.0);
  CHECK(chi_profile(2.0) == 0.0);
  CHECK(phi_profile(2.0) == 1.0);
  CHECK(phi_profile(0.5) == 0.0);
  CHECK(phi_profile(3.0) == 0.0);
  double prev = 1.0;
  for (double r = 1.0; r <= 1.34; r += 0.01) {
    double v = chi_profile(r);
    CHECK(v <= prev);
    CHECK(v >= 0.0);
    prev = v;
  }
  CHECK(chi_profile(1.1) > 0.0);
  CHECK(chi_profile(1.1) < 1.0);
}

TEST_CASE("filter bank invariants") {
  for (auto [dim, n] : {std::pair{2, 64}, std::pair{3, 16}, std::pair{2, 16}}) {
    auto g = Grid::create(dim, n);
    const FilterBank& fb = g->filter_bank();
    double worst = 0.0;
    for (std::size_t m = 0; m < g->modes(); ++m) {
      double total = fb.low_pass(fb.j0())[m];
      for (int j = fb.j0(); j <= fb.j_max(); ++j) total += fb.block(j)[m];
      worst = std::max(worst, std::abs(total - 1.0));
      for (int j = fb.j0(); j <= fb.j_max(); ++j)
        for (int k = j + 2; k <= fb.j_max(); ++k) CHECK(fb.block(j)[m] * fb.block(k)[m] == 0.0);
      CHECK(fb.low_pass(fb.j_max() + 1)[m] == 1.0);
    }
    CHECK(worst <= 1e-12);
    // zero frequency
    CHECK(fb.low_pass(fb.j0())[0] == 1.0);
    for (int j = fb.j0(); j <= fb.j_max(); ++j) CHECK(fb.block(j)[0] == 0.0);
    // low_pass(j0) keeps only the mean mode
    for (std::size_t m = 1; m < g->modes(); ++m) CHECK(fb.low_pass(fb.j0())[m] == 0.0);
  }
}

TEST_CASE("filter bank is deterministic") {
  auto a = Grid::create(2, 32);
  auto b = Grid::create(2, 32);
  for (int j = a->j0(); j <= a->j_max(); ++j) {
    auto x = a->filter_bank().block(j);
    auto y = b->filter_bank().block(j);
    CHECK(std::equal(x.begin(), x.end(), y.begin(), y.end()));
  }
}

TEST_CASE("dyadic block of cos(2 x1)") {
  auto g = Grid::create(2, 32);
  Field f = sample(g, 1, [](const double* x, double* o) { o[0] = std::cos(2 * x[0]); });
  for (int j = g->j0(); j <= g->j_max(); ++j) {
    Field d = dyadic_block(f, j);
    if (j == 0)
      CHECK(max_abs_diff(d.values(), f.values()) <= 1e-14);
    else
      CHECK(max_abs(d.values()) <= 1e-14);
  }
}

TEST_CASE("constants: blocks vanish and low passes fix them") {
  auto g = Grid::create(2, 32);
  Field c = sample(g, 1, [](const double*, double* o) { o[0] = 2.5; });
  for (int j = g->j0(); j <= g->j_max(); ++j) CHECK(max_abs(dyadic_block(c, j).values()) <= 1e-14);
  for (int j = g->j0(); j <= g->j_max() + 1; ++j)
    CHECK(max_abs_diff(low_pass(c, j).values(), c.values()) <= 1e-14);
}

TEST_CASE("low pass examples") {
  auto g = Grid::create(2, 32);
  Field f = sample(g, 1, [](const double* x, double* o) { o[0] = std::cos(8 * x[0]); });
  CHECK(max_abs(low_pass(f, 1).values()) <= 1e-14);
  Field r = noise(g, 1, 11);
  Field top = low_pass(r, g->j_max() + 1);
  CHECK(max_abs_diff(top.values(), r.values()) <= 1e-12 * max_abs(r.values()));
}

TEST_CASE("out-of-range shells are errors") {
  auto g = Grid::create(2, 16);
  Field f = random_scalar(g, kRandom, 1);
  CHECK(code_of([&] { dyadic_block(f, g->j0() - 1); }) == ErrorCode::out_of_range);
  CHECK(code_of([&] { dyadic_block(f, g->j_max() + 1); }) == ErrorCode::out_of_range);
  CHECK(code_of([&] { low_pass(f, g->j_max() + 2); }) == ErrorCode::out_of_range);
  CHECK_NOTHROW(low_pass(f, g->j_max() + 1));
}

TEST_CASE("partition of unity on random data") {
  for (auto [dim, n] : {std::pair{2, 64}, std::pair{3, 16}}) {
    auto g = Grid::create(dim, n);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      Field f = noise(g, 1, seed);
      Field s = partition_sum(f);
      CHECK(max_abs_diff(s.values(), f.values()) <= 1e-12 * max_abs(f.values()));
    }
  }
}

TEST_CASE("disjoint blocks annihilate each other") {
  auto g = Grid::create(2, 64);
  Field f = noise(g, 1, 9);
  for (int j = g->j0(); j <= g->j_max(); ++j)
    for (int k = j + 2; k <= g->j_max(); ++k)
      CHECK(max_abs(dyadic_block(dyadic_block(f, k), j).values()) == 0.0);
}

TEST_CASE("support of S_{k-1}f Delta_k f products") {
  auto g = Grid::create(2, 128);
  Field f = random_scalar(g, RandomFieldSpec{1.0, 1.0, 0.0, 42.0}, 4);
  const double scale = max_abs(f.values()) * max_abs(f.values());
  for (int k = g->j0() + 1; k <= g->j_max(); ++k) {
    Field prod = multiply(low_pass(f, k - 1), dyadic_block(f, k));
    for (int j = g->j0(); j <= g->j_max(); ++j) {
      if (std::abs(j - k) < 5) continue;
      CHECK(max_abs(dyadic_block(prod, j).values()) <= 1e-10 * scale);
    }
  }
}

TEST_CASE("spectral derivatives") {
  auto g = Grid::create(2, 32);
  Field s = sample(g, 1, [](const double* x, double* o) { o[0] = std::sin(x[0]); });
  Field ds = spectral_derivative(s, {1, 0, 0});
  Field c = sample(g, 1, [](const double* x, double* o) { o[0] = std::cos(x[0]); });
  CHECK(max_abs_diff(ds.values(), c.values()) <= 1e-12);

  Field k = sample(g, 1, [](const double*, double* o) { o[0] = 3.0; });
  CHECK(max_abs(spectral_derivative(k, {2, 1, 0}).values()) <= 1e-14);

  Field m = sample(g, 1, [](const double* x, double* o) { o[0] = std::sin(2 * x[0]) * std::cos(3 * x[1]); });
  Field d4 = spectral_derivative(m, {2, 2, 0});
  Field want = scale(m, 36.0);
  CHECK(max_abs_diff(d4.values(), want.values()) <= 1e-11);

  CHECK_THROWS_AS(spectral_derivative(m, {3, 2, 0}), Error);
}

TEST_CASE("divergence of a stream-function field vanishes") {
  auto g = Grid::create(2, 64);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    Field psi = random_scalar(g, kRandom, seed);
    Field d1 = spectral_derivative(psi, {1, 0, 0});
    Field d2 = spectral_derivative(psi, {0, 1, 0});
    std::vector<double> v(2 * g->points());
    for (std::size_t p = 0; p < g->points(); ++p) {
      v[p] = -d2.values()[p];
      v[g->points() + p] = d1.values()[p];
    }
    Field div = divergence(Field(g, 2, v));
    CHECK(max_abs(div.values()) <= 1e-12 * std::max(1.0, max_abs(v)));
  }
}

TEST_CASE("Nyquist plane is zeroed by odd derivatives") {
  auto g = Grid::create(2, 16);
  Field f = sample(g, 1, [](const double* x, double* o) { o[0] = std::cos(8 * x[0]); });
  CHECK(max_abs(spectral_derivative(f, {1, 0, 0}).values()) <= 1e-14);
  Field f2 = spectral_derivative(f, {2, 0, 0});
  CHECK(max_abs_diff(f2.values(), scale(f, -64.0).values()) <= 1e-11);
}

TEST_CASE("Riesz transforms") {
  auto g = Grid::create(2, 32);
  Field c = sample(g, 1, [](const double* x, double* o) { o[0] = std::cos(x[0]); });
  Field ms = sample(g, 1, [](const double* x, double* o) { o[0] = -std::sin(x[0]); });
  CHECK(max_abs_diff(riesz(c, 0).values(), ms.values()) <= 1e-12);

  Field k = sample(g, 1, [](const double*, double* o) { o[0] = 1.7; });
  CHECK(max_abs(riesz(k, 1).values()) <= 1e-14);

  auto g3 = Grid::create(3, 16);
  Field f = add(random_scalar(g3, kRandom, 2),
                sample(g3, 1, [](const double*, double* o) { o[0] = 0.3; }));
  Field acc = riesz(riesz(f, 0), 0);
  acc = add(acc, riesz(riesz(f, 1), 1));
  acc = add(acc, riesz(riesz(f, 2), 2));
  double mu = mean(f)[0];
  std::vector<double> want(f.values().begin(), f.values().end());
  for (double& w : want) w = -(w - mu);
  // Nyquist-plane modes carry a zeroed odd symbol; the random band stays below it.
  CHECK(max_abs_diff(acc.values(), want) <= 1e-12 * max_abs(f.values()));
}

TEST_CASE("Leray projection") {
  auto g = Grid::create(3, 16);
  Field psi = random_scalar(g, kRandom, 5);
  Field grad = gradient(psi);
  CHECK(max_abs(leray_project(grad).values()) <= 1e-12 * max_abs(grad.values()));

  Field v = random_solenoidal(g, kRandom, 6);
  Field pv = leray_project(v);
  CHECK(max_abs_diff(pv.values(), v.values()) <= 1e-12 * max_abs(v.values()));

  Field w = random_vector(g, 3, kRandom, 7);
  Field once = leray_project(w);
  Field twice = leray_project(once);
  CHECK(once.solenoidal());
  CHECK(max_abs_diff(once.values(), twice.values()) <= 1e-12 * max_abs(once.values()));
  CHECK(solenoidal_residual(once) <= 1e-10);
  CHECK(solenoidal_residual(w) > 1e-3);
  CHECK_THROWS_AS(require_solenoidal(w, "w"), Error);
  CHECK_NOTHROW(require_solenoidal(once.with_solenoidal_flag(false), "once"));
}

TEST_CASE("cached spectrum agrees with the forward transform") {
  auto g = Grid::create(2, 32);
  Field v = random_solenoidal(g, kRandom, 8);
  REQUIRE(v.has_cached_spectrum());
  Spectrum cached = v.spectrum();
  Spectrum fresh = transform(g, v.values(), v.components());
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < cached.coeffs.size(); ++i) {
    num = std::max(num, std::abs(cached.coeffs[i] - fresh.coeffs[i]));
    den = std::max(den, std::abs(fresh.coeffs[i]));
  }
  CHECK(num <= 1e-12 * den);
}

TEST_CASE("dealiased products") {
  auto g = Grid::create(2, 32);
  Field a = sample(g, 1, [](const double* x, double* o) { o[0] = std::cos(3 * x[0]); });
  Field want = sample(g, 1, [](const double* x, double* o) { o[0] = 0.5 * (1 + std::cos(6 * x[0])); });
  CHECK(max_abs_diff(multiply(a, a).values(), want.values()) <= 1e-14);

  // cos(6 x1)^2 would need |xi| = 12 > 10: only the mean survives
  Field b = sample(g, 1, [](const double* x, double* o) { o[0] = std::cos(6 * x[0]); });
  Field half = sample(g, 1, [](const double*, double* o) { o[0] = 0.5; });
  CHECK(max_abs_diff(multiply(b, b).values(), half.values()) <= 1e-14);
}

TEST_CASE("Parseval") {
  for (auto [dim, n] : {std::pair{2, 64}, std::pair{3, 16}}) {
    auto g = Grid::create(dim, n);
    Field f = noise(g, dim, 12);
    double phys = lp_norm(f, 2.0);
    double four = parseval_norm(f);
    CHECK(std::abs(phys - four) <= 1e-12 * four);
  }
}

TEST_CASE("random fields are seeded and resolution independent") {
  auto coarse = Grid::create(2, 32);
  auto fine = Grid::create(2, 64);
  Field a = random_scalar(coarse, kRandom, 77);
  Field b = random_scalar(fine, kRandom, 77);
  Field c = random_scalar(coarse, kRandom, 77);
  Field d = random_scalar(coarse, kRandom, 78);
  CHECK(max_abs_diff(a.values(), c.values()) == 0.0);
  CHECK(max_abs_diff(a.values(), d.values()) > 1e-3);
  double worst = 0.0;
  for (int i = 0; i < 32; ++i)
    for (int k = 0; k < 32; ++k)
      worst = std::max(worst, std::abs(a.values()[i * 32 + k] - b.values()[(2 * i) * 64 + 2 * k]));
  CHECK(worst <= 1e-12 * max_abs(a.values()));
  CHECK(std::abs(mean(a)[0]) <= 1e-14);
}

TEST_CASE("Bernstein constant is stable across shells and grids") {
  std::vector<double> constants;
  for (int n : {64, 128}) {
    auto g = Grid::create(2, n);
    for (int j = 1; j <= g->j_max() - 1; ++j) {
      double worst = 0.0;
      for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        Field f = low_pass(random_scalar(g, RandomFieldSpec{1.0, 0.0, 0.0, double(g->dealias_cutoff())}, seed), j);
        Field df = spectral_derivative(f, {1, 0, 0});
        worst = std::max(worst, lp_norm(df, 2.0) / (std::ldexp(1.0, j) * lp_norm(f, 2.0)));
      }
      constants.push_back(worst);
    }
  }
  for (double c : constants) {
    CHECK(c <= 4.0 / 3.0 + 1e-12);
    CHECK(c >= 0.2);
  }
}

TEST_CASE("mode accessors keep the Hermitian partner") {
  auto g = Grid::create(2, 16);
  Spectrum s(g, 1);
  int xi[2] = {3, -2};
  set_mode(s, 0, xi, Complex(1.0, 2.0));
  int nxi[2] = {-3, 2};
  CHECK(get_mode(s, 0, xi) == Complex(1.0, 2.0));
  CHECK(get_mode(s, 0, nxi) == Complex(1.0, -2.0));
  Field f = Field::from_spectrum(s);
  Field want = sample(g, 1, [](const double* x, double* o) {
    o[0] = 2.0 * std::cos(3 * x[0] - 2 * x[1]) - 4.0 * std::sin(3 * x[0] - 2 * x[1]);
  });
  CHECK(max_abs_diff(f.values(), want.values()) <= 1e-13);
}

TEST_CASE("field arithmetic requires matching grids") {
  Field a = random_scalar(Grid::create(2, 16), kRandom, 1);
  Field b = random_scalar(Grid::create(2, 32), kRandom, 1);
  CHECK(code_of([&] { add(a, b); }) == ErrorCode::grid_mismatch);
}
