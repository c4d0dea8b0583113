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

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "paramhd/field.hpp"

namespace paramhd {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

/// Identifies a Triebel-Lizorkin norm F^s_{p,q} (or its homogeneous version).
struct NormSpec {
  double s = 0.0;
  double p = 2.0;
  double q = 2.0;
  bool homogeneous = true;

  /// (p, q) in (1, inf) x (1, inf] or p = q = inf; inhomogeneous needs s > 0.
  void validate() const;
  std::string label() const;

  friend bool operator==(const NormSpec&, const NormSpec&) = default;
};

/// (mean over grid of |f|^p)^{1/p}, |.| the Euclidean magnitude over
/// components; p = inf gives the grid maximum.
double lp_norm(const Field& f, double p);

/// Same, on raw component-major samples.
double lp_norm(std::span<const double> values, std::size_t points, int components, double p);

/// Homogeneous: || (sum_j (2^{js} |Delta_j f|)^q)^{1/q} ||_p over j in
/// [j0, j_max], sup over j when q = inf. Inhomogeneous adds lp_norm(f, p).
double tl_norm(const Field& f, const NormSpec& spec);

/// || (sum_k (2^{ks} |X_k(x)|)^q)^{1/q} ||_p for a sequence X_{k_first}, ...
double sequence_norm(std::span<const Field> sequence, int k_first, double s, double p,
                     double q);

/// Fourier-side homogeneous Sobolev norm (sum_{xi != 0} |xi|^{2s} |fhat|^2)^{1/2}.
double sobolev_norm(const Field& f, double s);

/// Parseval: (sum_xi |fhat(xi)|^2)^{1/2}.
double parseval_norm(const Field& f);

/// JSON object {"field-id", "s", "p", "q", "homogeneous", "value"}.
std::string norm_record_json(const std::string& field_id, const NormSpec& spec, double value);

/// Discrete Hardy-Littlewood maximal operator on a fixed dyadic radius ladder
/// h * 2^m, m = 0..log2(N/2), plus the degenerate radius. Ball averages use
/// lattice points within Euclidean (periodic) distance r, uniform weights.
class MaximalOperator {
 public:
  explicit MaximalOperator(GridPtr grid);

  /// Pointwise max of ball averages of |f|; vector fields use |f| = Euclidean
  /// magnitude.
  Field apply(const Field& f) const;

  /// Ball average of |f| at ladder index m.
  Field ball_average(const Field& f, int m) const;

  std::span<const double> radii() const { return radii_; }
  const GridPtr& grid() const { return grid_; }

 private:
  std::vector<double> magnitude(const Field& f) const;

  GridPtr grid_;
  std::vector<double> radii_;
  std::vector<std::vector<double>> kernels_;
};

Field maximal_function(const Field& f);

}  // namespace paramhd
