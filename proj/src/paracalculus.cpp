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

#include "paramhd/paracalculus.hpp"

#include <algorithm>
#include <string>

#include "paramhd/error.hpp"
#include "paramhd/filter_bank.hpp"
#include "paramhd/spectral_ops.hpp"

namespace paramhd {

namespace {

using Values = std::vector<double>;
using Coeffs = std::vector<Complex>;

Values to_physical(const Grid& g, std::span<const Complex> c, std::span<const double> mult) {
  Coeffs buf(g.modes());
  for (std::size_t m = 0; m < g.modes(); ++m) buf[m] = c[m] * mult[m];
  Values out(g.points());
  g.inverse(buf.data(), out.data());
  return out;
}

Values to_physical(const Grid& g, std::span<const Complex> c) {
  Values out(g.points());
  g.inverse(c.data(), out.data());
  return out;
}

void accumulate_product(Values& acc, const Values& a, const Values& b) {
  for (std::size_t x = 0; x < acc.size(); ++x) acc[x] += a[x] * b[x];
}

Values product_of(std::span<const double> a, std::span<const double> b) {
  Values out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

bool all_zero(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

Coeffs truncated_component(const Spectrum& s, int c) {
  Coeffs out(s.component(c).begin(), s.component(c).end());
  spectral::truncate(*s.grid, out);
  return out;
}

Field scalar_field(const GridPtr& grid, Coeffs coeffs) {
  Spectrum s(grid, 1);
  s.coeffs = std::move(coeffs);
  return Field::from_spectrum(std::move(s));
}

// Sum of Delta_{j-1}, Delta_j, Delta_{j+1} restricted to the available range.
Values widened_block(const FilterBank& bank, int j) {
  Values out(bank.block(j).begin(), bank.block(j).end());
  for (int n : {j - 1, j + 1}) {
    if (n < bank.j0() || n > bank.j_max()) continue;
    auto b = bank.block(n);
    for (std::size_t m = 0; m < out.size(); ++m) out[m] += b[m];
  }
  return out;
}

void require_scalars(const Field& u, const Field& v) {
  require_same_grid(u.grid(), v.grid());
  require(u.components() == 1 && v.components() == 1, ErrorCode::invalid_argument,
          "paraproduct operands must be scalar fields");
}

}  // namespace

Field paraproduct(const Field& u, const Field& v) {
  require_scalars(u, v);
  const Grid& g = u.grid();
  const FilterBank& bank = g.filter_bank();
  const Coeffs uh = truncated_component(u.spectrum(), 0);
  const Coeffs vh = truncated_component(v.spectrum(), 0);
  Values acc(g.points(), 0.0);
  for (int j = bank.j0() + 1; j <= bank.j_max(); ++j)
    accumulate_product(acc, to_physical(g, uh, bank.low_pass(j - 1)),
                       to_physical(g, vh, bank.block(j)));
  return scalar_field(u.grid_ptr(), spectral::product_spectrum(g, acc));
}

Field remainder(const Field& u, const Field& v) {
  require_scalars(u, v);
  const Grid& g = u.grid();
  const FilterBank& bank = g.filter_bank();
  const Coeffs uh = truncated_component(u.spectrum(), 0);
  const Coeffs vh = truncated_component(v.spectrum(), 0);
  Values acc(g.points(), 0.0);
  for (int j = bank.j0(); j <= bank.j_max(); ++j)
    accumulate_product(acc, to_physical(g, uh, bank.block(j)),
                       to_physical(g, vh, widened_block(bank, j)));
  return scalar_field(u.grid_ptr(), spectral::product_spectrum(g, acc));
}

Field base_cross_terms(const Field& u, const Field& v) {
  require_scalars(u, v);
  const Grid& g = u.grid();
  const FilterBank& bank = g.filter_bank();
  const Coeffs uh = truncated_component(u.spectrum(), 0);
  const Coeffs vh = truncated_component(v.spectrum(), 0);
  const Values ub = to_physical(g, uh, bank.low_pass(bank.j0()));
  const Values vb = to_physical(g, vh, bank.low_pass(bank.j0()));
  const Values u0 = to_physical(g, uh, bank.block(bank.j0()));
  const Values v0 = to_physical(g, vh, bank.block(bank.j0()));
  Values acc(g.points(), 0.0);
  accumulate_product(acc, ub, vb);
  accumulate_product(acc, ub, v0);
  accumulate_product(acc, u0, vb);
  return scalar_field(u.grid_ptr(), spectral::product_spectrum(g, acc));
}

namespace {

struct Operands {
  std::vector<Coeffs> f;                // truncated f_i
  std::vector<std::vector<Coeffs>> dg;  // dg[c][i]: truncated d_i g_c
};

Operands prepare(const Field& f, const Field& g) {
  require_same_grid(f.grid(), g.grid());
  const Grid& grid = f.grid();
  const int d = grid.dim();
  Operands ops;
  const Spectrum fs = f.spectrum();
  for (int i = 0; i < d; ++i) ops.f.push_back(truncated_component(fs, i));
  const Spectrum gs = g.spectrum();
  for (int c = 0; c < g.components(); ++c) {
    const Coeffs gc = truncated_component(gs, c);
    std::vector<Coeffs> grads;
    for (int i = 0; i < d; ++i) grads.push_back(spectral::derivative(grid, gc, i));
    ops.dg.push_back(std::move(grads));
  }
  return ops;
}

void check_k(const Grid& g, int k) {
  require(k >= g.j0() && k <= g.j_max(), ErrorCode::out_of_range,
          "commutator shell " + std::to_string(k) + " outside [" + std::to_string(g.j0()) +
              ", " + std::to_string(g.j_max()) + "]");
}

Field assemble(const GridPtr& grid, std::vector<Coeffs>& comps) {
  Spectrum s(grid, static_cast<int>(comps.size()));
  for (std::size_t c = 0; c < comps.size(); ++c)
    std::copy(comps[c].begin(), comps[c].end(), s.component(static_cast<int>(c)).begin());
  return Field::from_spectrum(std::move(s));
}

}  // namespace

std::vector<Field> commutator_all(const Field& f_in, const Field& g) {
  const Field f = require_solenoidal(f_in, "advecting field");
  const Grid& grid = f.grid();
  const FilterBank& bank = grid.filter_bank();
  const int d = grid.dim();
  const Operands ops = prepare(f, g);
  std::vector<Values> fphys;
  for (int i = 0; i < d; ++i) fphys.push_back(to_physical(grid, ops.f[i]));

  const int shells = bank.j_max() - bank.j0() + 1;
  std::vector<std::vector<Coeffs>> out(shells);
  for (int c = 0; c < g.components(); ++c) {
    Values adv(grid.points(), 0.0);
    std::vector<Values> dgphys;
    for (int i = 0; i < d; ++i) {
      dgphys.push_back(to_physical(grid, ops.dg[c][i]));
      accumulate_product(adv, fphys[i], dgphys[i]);
    }
    const Coeffs adv_hat = spectral::product_spectrum(grid, adv);
    for (int k = bank.j0(); k <= bank.j_max(); ++k) {
      Values acc(grid.points(), 0.0);
      for (int i = 0; i < d; ++i)
        accumulate_product(acc, fphys[i], to_physical(grid, ops.dg[c][i], bank.block(k)));
      Coeffs r = spectral::product_spectrum(grid, acc);
      auto phi = bank.block(k);
      for (std::size_t m = 0; m < grid.modes(); ++m) r[m] -= phi[m] * adv_hat[m];
      out[k - bank.j0()].push_back(std::move(r));
    }
  }
  std::vector<Field> fields;
  for (auto& comps : out) fields.push_back(assemble(f.grid_ptr(), comps));
  return fields;
}

Field commutator(const Field& f, const Field& g, int k) {
  check_k(f.grid(), k);
  return commutator_all(f, g)[k - f.grid().j0()];
}

Field CommutatorSplit::sum() const { return add(add(I, II), add(III, IV)); }

std::vector<CommutatorSplit> commutator_split_all(const Field& f_in, const Field& g) {
  const Field f = require_solenoidal(f_in, "advecting field");
  const Grid& grid = f.grid();
  const FilterBank& bank = grid.filter_bank();
  const int d = grid.dim();
  const int j0 = bank.j0();
  const int jm = bank.j_max();
  const int shells = jm - j0 + 1;
  const std::size_t modes = grid.modes();
  const Operands ops = prepare(f, g);
  auto in_range = [&](int j) { return j >= j0 && j <= jm; };
  auto idx = [&](int j) { return static_cast<std::size_t>(j - j0); };

  std::vector<Values> widened;
  for (int j = j0; j <= jm; ++j) widened.push_back(widened_block(bank, j));

  // Per-shell physical pieces of f, shared by every g component.
  std::vector<std::vector<Values>> SF(shells), DF(shells), DtF(shells);
  for (int t = j0; t <= jm; ++t)
    for (int i = 0; i < d; ++i) {
      if (t > j0) SF[idx(t)].push_back(to_physical(grid, ops.f[i], bank.low_pass(t - 1)));
      DF[idx(t)].push_back(to_physical(grid, ops.f[i], bank.block(t)));
      DtF[idx(t)].push_back(to_physical(grid, ops.f[i], widened[idx(t)]));
    }

  std::vector<std::vector<Coeffs>> I(shells), II(shells), III(shells), IV(shells);
  for (int c = 0; c < g.components(); ++c) {
    const auto& G = ops.dg[c];
    std::vector<std::vector<Values>> DG(shells);
    std::vector<Coeffs> PA(shells), PB(shells), PC(shells);
    for (int t = j0; t <= jm; ++t) {
      Values pa(grid.points(), 0.0), pb(grid.points(), 0.0), pc(grid.points(), 0.0);
      for (int i = 0; i < d; ++i) {
        DG[idx(t)].push_back(to_physical(grid, G[i], bank.block(t)));
        const Values dtg = to_physical(grid, G[i], widened[idx(t)]);
        accumulate_product(pc, DF[idx(t)][i], dtg);
        if (t > j0) {
          const Values sg = to_physical(grid, G[i], bank.low_pass(t - 1));
          accumulate_product(pa, SF[idx(t)][i], DG[idx(t)][i]);
          accumulate_product(pb, sg, DF[idx(t)][i]);
        }
      }
      PA[idx(t)] = spectral::product_spectrum(grid, pa);
      PB[idx(t)] = spectral::product_spectrum(grid, pb);
      PC[idx(t)] = spectral::product_spectrum(grid, pc);
    }

    for (int k = j0; k <= jm; ++k) {
      auto phi_k = bank.block(k);
      // I, first half: S_{k'-1} f_i Delta_k Delta_{k'} d_i g.
      Values i1(grid.points(), 0.0);
      for (int kp = std::max(j0 + 1, k - 4); kp <= std::min(jm, k + 4); ++kp) {
        const Values mult = product_of(phi_k, bank.block(kp));
        if (all_zero(mult)) continue;
        for (int i = 0; i < d; ++i)
          accumulate_product(i1, SF[idx(kp)][i], to_physical(grid, G[i], mult));
      }
      // II: T_{Delta_k d_i g} f_i + R(Delta_k d_i g, f_i).
      Values i2(grid.points(), 0.0);
      for (int kp = std::max(j0, k - 2); kp <= jm; ++kp) {
        if (kp > j0) {
          const Values mult = product_of(phi_k, bank.low_pass(kp - 1));
          if (!all_zero(mult)) {
            const bool whole = std::equal(mult.begin(), mult.end(), phi_k.begin());
            for (int i = 0; i < d; ++i)
              accumulate_product(i2, whole ? DG[idx(k)][i] : to_physical(grid, G[i], mult),
                                 DF[idx(kp)][i]);
          }
        }
        const Values mult = product_of(phi_k, bank.block(kp));
        if (all_zero(mult)) continue;
        for (int i = 0; i < d; ++i)
          accumulate_product(i2, to_physical(grid, G[i], mult), DtF[idx(kp)][i]);
      }

      Coeffs ci = spectral::product_spectrum(grid, i1);
      Coeffs cii = spectral::product_spectrum(grid, i2);
      Coeffs ciii(modes, 0.0), civ(modes, 0.0);
      for (int kp = k - 4; kp <= k + 4; ++kp) {
        if (!in_range(kp) || kp == j0) continue;
        for (std::size_t m = 0; m < modes; ++m) {
          ci[m] -= phi_k[m] * PA[idx(kp)][m];
          ciii[m] -= phi_k[m] * PB[idx(kp)][m];
        }
      }
      for (int kp = std::max(j0, k - 3); kp <= jm; ++kp)
        for (std::size_t m = 0; m < modes; ++m) civ[m] -= phi_k[m] * PC[idx(kp)][m];

      I[idx(k)].push_back(std::move(ci));
      II[idx(k)].push_back(std::move(cii));
      III[idx(k)].push_back(std::move(ciii));
      IV[idx(k)].push_back(std::move(civ));
    }
  }

  std::vector<CommutatorSplit> out;
  for (int k = j0; k <= jm; ++k) {
    CommutatorSplit s;
    s.k = k;
    s.I = assemble(f.grid_ptr(), I[idx(k)]);
    s.II = assemble(f.grid_ptr(), II[idx(k)]);
    s.III = assemble(f.grid_ptr(), III[idx(k)]);
    s.IV = assemble(f.grid_ptr(), IV[idx(k)]);
    out.push_back(std::move(s));
  }
  return out;
}

CommutatorSplit commutator_split(const Field& f, const Field& g, int k) {
  check_k(f.grid(), k);
  return commutator_split_all(f, g)[k - f.grid().j0()];
}

}  // namespace paramhd
