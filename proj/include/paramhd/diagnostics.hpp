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

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "paramhd/function_spaces.hpp"
#include "paramhd/mhd.hpp"

namespace paramhd {

struct DiagnosticsRecord {
  double t = 0.0;
  double energy = 0.0;
  double cross_helicity = 0.0;
  /// Grid max of the Frobenius norm of grad z+ / grad z-.
  double grad_plus_inf = 0.0;
  double grad_minus_inf = 0.0;
  double curl_u_inf = 0.0;
  double curl_b_inf = 0.0;
  /// max(Fdot^0_{inf,inf} of curl u, same for curl b).
  double blowup_integrand = 0.0;
  /// Trapezoid integral of blowup_integrand from the first record.
  double blowup_integral = 0.0;
  /// One value per NormSpec: norm of z+ plus norm of z-.
  std::vector<double> norms;
  /// ||Delta_j curl u||_inf and ||Delta_j curl b||_inf for j = j0..j_max.
  std::vector<double> block_curl_u;
  std::vector<double> block_curl_b;
};

/// Fills every field except blowup_integral, which append_record supplies.
DiagnosticsRecord record(const ElsasserState& state, std::span<const NormSpec> specs);

/// Appends r, setting its running integral from the previous record.
void append_record(std::vector<DiagnosticsRecord>& stream, DiagnosticsRecord r);

struct GronwallFit {
  /// Smallest C >= 0 with Y(t) <= Y(0) exp(C G(t)) at every record, where Y is
  /// the chosen norm and G the trapezoid integral of grad_plus_inf + grad_minus_inf.
  double constant = 0.0;
  /// max_t max(0, Y / envelope - 1) for the fitted C; round-off only.
  double max_violation = 0.0;
  /// min over t > 0 of envelope / Y - 1.
  double min_slack = 0.0;
};

GronwallFit gronwall_check(std::span<const DiagnosticsRecord> stream, std::size_t norm_index);

/// Column names in output order; j0 and j_max fix the per-block columns.
std::vector<std::string> csv_columns(std::span<const NormSpec> specs, int j0, int j_max);

/// Writes "# <title> generated <timestamp>", the header row, and one row per
/// record with %.17g values.
void write_csv(std::ostream& out, std::span<const DiagnosticsRecord> stream,
               std::span<const NormSpec> specs, int j0, int j_max, const std::string& title);

std::string to_json(std::span<const DiagnosticsRecord> stream, std::span<const NormSpec> specs,
                    int j0, int j_max);

/// "%.17g".
std::string format_number(double v);

/// UTC, ISO 8601.
std::string timestamp_now();

}  // namespace paramhd
