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

#include <vector>

#include "paramhd/field.hpp"

namespace paramhd {

// Conventions on the finite shell range [j0, j_max]:
//   T_u v  = sum_{j=j0+1}^{j_max} S_{j-1}u Delta_j v
//   R(u,v) = sum_{j=j0}^{j_max} Delta_j u (Delta_{j-1} + Delta_j + Delta_{j+1}) v
//   uv     = T_u v + T_v u + R(u,v) + B(u,v)
//   B(u,v) = S_{j0}u S_{j0}v + S_{j0}u Delta_{j0}v + Delta_{j0}u S_{j0}v
// S_{j0} is the mean mode, so B collects the products the homogeneous sums
// cannot see. All products are dealiased.

Field paraproduct(const Field& u, const Field& v);
Field remainder(const Field& u, const Field& v);
Field base_cross_terms(const Field& u, const Field& v);

/// f . grad(Delta_k g) - Delta_k(f . grad g); g scalar or m-component.
/// f must be solenoidal.
Field commutator(const Field& f, const Field& g, int k);

/// All k in [j0, j_max] at once.
std::vector<Field> commutator_all(const Field& f, const Field& g);

/// The four-term decomposition of [f, Delta_k] . grad g:
///   I   = sum_{|k'-k|<=4} [S_{k'-1}f_i, Delta_k] d_i Delta_{k'} g
///   II  = T_{Delta_k d_i g} f_i + R(Delta_k d_i g, f_i),   k' >= k-2
///   III = -Delta_k sum_{|k'-k|<=4} S_{k'-1} d_i g Delta_{k'} f_i
///   IV  = -Delta_k sum_{k'>=k-3} Delta_{k'} f_i Deltatilde_{k'} d_i g
/// Window terms whose multipliers cannot meet are skipped.
struct CommutatorSplit {
  int k = 0;
  Field I;
  Field II;
  Field III;
  Field IV;

  Field sum() const;
};

CommutatorSplit commutator_split(const Field& f, const Field& g, int k);

/// Split for every k in [j0, j_max]; entry i holds k = j0 + i.
std::vector<CommutatorSplit> commutator_split_all(const Field& f, const Field& g);

}  // namespace paramhd
