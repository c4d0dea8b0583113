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

#include "paramhd/diagnostics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "paramhd/error.hpp"
#include "paramhd/filter_bank.hpp"
#include "paramhd/spectral_ops.hpp"

namespace paramhd {

namespace {

std::vector<double> block_sup(const Field& f) {
  const FilterBank& bank = f.grid().filter_bank();
  std::vector<double> out;
  for (int j = bank.j0(); j <= bank.j_max(); ++j)
    out.push_back(lp_norm(dyadic_block(f, j), infinity));
  return out;
}

}  // namespace

DiagnosticsRecord record(const ElsasserState& state, std::span<const NormSpec> specs) {
  DiagnosticsRecord r;
  r.t = state.t;
  r.energy = energy(state);
  r.cross_helicity = cross_helicity(state);
  r.grad_plus_inf = lp_norm(gradient_tensor(state.z_plus), infinity);
  r.grad_minus_inf = lp_norm(gradient_tensor(state.z_minus), infinity);

  const auto [u, b] = from_elsasser(state);
  const Field wu = curl(u);
  const Field wb = curl(b);
  r.curl_u_inf = lp_norm(wu, infinity);
  r.curl_b_inf = lp_norm(wb, infinity);
  r.block_curl_u = block_sup(wu);
  r.block_curl_b = block_sup(wb);
  const double bu = *std::max_element(r.block_curl_u.begin(), r.block_curl_u.end());
  const double bb = *std::max_element(r.block_curl_b.begin(), r.block_curl_b.end());
  r.blowup_integrand = std::max(bu, bb);

  for (const NormSpec& spec : specs)
    r.norms.push_back(tl_norm(state.z_plus, spec) + tl_norm(state.z_minus, spec));
  return r;
}

void append_record(std::vector<DiagnosticsRecord>& stream, DiagnosticsRecord r) {
  if (stream.empty()) {
    r.blowup_integral = 0.0;
  } else {
    const DiagnosticsRecord& prev = stream.back();
    require(r.t >= prev.t, ErrorCode::invalid_argument, "records must be in time order");
    r.blowup_integral =
        prev.blowup_integral + 0.5 * (r.t - prev.t) * (r.blowup_integrand + prev.blowup_integrand);
  }
  stream.push_back(std::move(r));
}

GronwallFit gronwall_check(std::span<const DiagnosticsRecord> stream, std::size_t norm_index) {
  require(!stream.empty(), ErrorCode::invalid_argument, "Gronwall fit needs at least one record");
  for (const auto& r : stream)
    require(norm_index < r.norms.size(), ErrorCode::out_of_range,
            "norm index outside the recorded norms");
  GronwallFit fit;
  const double y0 = stream.front().norms[norm_index];
  std::vector<double> G(stream.size(), 0.0);
  for (std::size_t i = 1; i < stream.size(); ++i) {
    const auto& a = stream[i - 1];
    const auto& b = stream[i];
    G[i] = G[i - 1] + 0.5 * (b.t - a.t) *
                          (a.grad_plus_inf + a.grad_minus_inf + b.grad_plus_inf + b.grad_minus_inf);
  }
  if (stream.size() == 1 || y0 == 0.0) {
    fit.min_slack = stream.size() == 1 ? 0.0 : std::numeric_limits<double>::infinity();
    if (y0 == 0.0)
      for (const auto& r : stream)
        if (r.norms[norm_index] > 0.0) fit.constant = std::numeric_limits<double>::infinity();
    return fit;
  }
  for (std::size_t i = 1; i < stream.size(); ++i) {
    const double y = stream[i].norms[norm_index];
    const double growth = std::log(y / y0);
    if (growth <= 0.0) continue;
    fit.constant = G[i] > 0.0 ? std::max(fit.constant, growth / G[i])
                              : std::numeric_limits<double>::infinity();
  }
  fit.min_slack = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < stream.size(); ++i) {
    const double y = stream[i].norms[norm_index];
    const double envelope = y0 * std::exp(fit.constant * G[i]);
    fit.max_violation = std::max(fit.max_violation, y / envelope - 1.0);
    fit.min_slack = std::min(fit.min_slack, envelope / y - 1.0);
  }
  return fit;
}

namespace {

// "Fdot[s=1.5,p=2,q=inf]" -> "Fdot_s1.5_p2_qinf", safe inside a CSV header.
std::string column_label(const NormSpec& spec) {
  std::string out;
  for (char c : spec.label()) {
    if (c == '[' || c == ',') out += '_';
    else if (c != '=' && c != ']') out += c;
  }
  return out;
}

}  // namespace

std::vector<std::string> csv_columns(std::span<const NormSpec> specs, int j0, int j_max) {
  std::vector<std::string> cols = {"t",           "energy",           "cross_helicity",
                                   "grad_zplus_inf", "grad_zminus_inf", "curl_u_inf",
                                   "curl_b_inf",  "blowup_integrand", "blowup_integral"};
  for (const NormSpec& s : specs) cols.push_back("norm_" + column_label(s));
  for (int j = j0; j <= j_max; ++j) cols.push_back("block_curl_u_" + std::to_string(j));
  for (int j = j0; j <= j_max; ++j) cols.push_back("block_curl_b_" + std::to_string(j));
  return cols;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string timestamp_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_csv(std::ostream& out, std::span<const DiagnosticsRecord> stream,
               std::span<const NormSpec> specs, int j0, int j_max, const std::string& title) {
  out << "# " << title << " generated " << timestamp_now() << "\n";
  const auto cols = csv_columns(specs, j0, j_max);
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << "\n";
  for (const auto& r : stream) {
    std::vector<double> row = {r.t,          r.energy,         r.cross_helicity,
                               r.grad_plus_inf, r.grad_minus_inf, r.curl_u_inf,
                               r.curl_b_inf, r.blowup_integrand, r.blowup_integral};
    row.insert(row.end(), r.norms.begin(), r.norms.end());
    row.insert(row.end(), r.block_curl_u.begin(), r.block_curl_u.end());
    row.insert(row.end(), r.block_curl_b.begin(), r.block_curl_b.end());
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << "\n";
  }
}

std::string to_json(std::span<const DiagnosticsRecord> stream, std::span<const NormSpec> specs,
                    int j0, int j_max) {
  nlohmann::ordered_json doc;
  doc["columns"] = csv_columns(specs, j0, j_max);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : stream) {
    nlohmann::ordered_json o;
    o["t"] = r.t;
    o["energy"] = r.energy;
    o["cross_helicity"] = r.cross_helicity;
    o["grad_zplus_inf"] = r.grad_plus_inf;
    o["grad_zminus_inf"] = r.grad_minus_inf;
    o["curl_u_inf"] = r.curl_u_inf;
    o["curl_b_inf"] = r.curl_b_inf;
    o["blowup_integrand"] = r.blowup_integrand;
    o["blowup_integral"] = r.blowup_integral;
    nlohmann::ordered_json norms = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < specs.size() && i < r.norms.size(); ++i)
      norms[specs[i].label()] = r.norms[i];
    o["norms"] = norms;
    o["block_curl_u"] = r.block_curl_u;
    o["block_curl_b"] = r.block_curl_b;
    rows.push_back(std::move(o));
  }
  doc["records"] = std::move(rows);
  return doc.dump(2);
}

}  // namespace paramhd
