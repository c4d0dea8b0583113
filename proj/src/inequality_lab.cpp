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

#include "paramhd/inequality_lab.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "paramhd/diagnostics.hpp"
#include "paramhd/error.hpp"
#include "paramhd/filter_bank.hpp"
#include "paramhd/function_spaces.hpp"
#include "paramhd/mhd.hpp"
#include "paramhd/paracalculus.hpp"
#include "paramhd/spectral_ops.hpp"

namespace paramhd {

namespace {

struct Trial {
  GridPtr grid;
  const InequalityParams& params;
  std::uint64_t seed;

  Field scalar(std::uint64_t stream) const {
    return scale(random_scalar(grid, params.field, mix_seed(seed, stream)), params.scale);
  }
  Field solenoidal(std::uint64_t stream) const {
    return scale(random_solenoidal(grid, params.field, mix_seed(seed, stream)), params.scale);
  }
  NormSpec spec() const { return {params.s, params.p, params.q, params.homogeneous}; }
};

double safe_ratio(double lhs, double rhs) {
  if (lhs == 0.0) return 0.0;
  return lhs / rhs;
}

double sup_norm(const Field& f) { return lp_norm(f, infinity); }

// A zero right side means the commutator cancels identically (constant f);
// the left side is then round-off, judged against the cancelled products.
template <class Ref>
double cancelled_ratio(double lhs, double rhs, Ref&& reference) {
  if (rhs == 0.0 && lhs <= 1e-12 * reference()) return 0.0;
  return safe_ratio(lhs, rhs);
}

std::vector<MultiIndex> multi_indices(int d, int k) {
  std::vector<MultiIndex> out;
  for (int a = 0; a <= k; ++a) {
    if (d == 2) {
      out.push_back({a, k - a, 0});
      continue;
    }
    for (int b = 0; b <= k - a; ++b) out.push_back({a, b, k - a - b});
  }
  return out;
}

Field nabla_power(Field f, int k) {
  for (int i = 0; i < k; ++i) f = gradient_tensor(f);
  return f;
}

void hypothesis(bool ok, const std::string& id, const std::string& what) {
  require(ok, ErrorCode::invalid_argument, id + " requires " + what);
}

// --- per-id ratio generators --------------------------------------------

double bernstein(const Trial& t, std::size_t index) {
  const Grid& g = *t.grid;
  const auto& P = t.params;
  const int top = static_cast<int>(std::floor(std::log2(g.dealias_cutoff())));
  Field f;
  int j = 0;
  if (P.family == "single-mode") {
    j = static_cast<int>(index % static_cast<std::size_t>(top + 1));
    std::vector<double> v(g.points());
    for (std::size_t x = 0; x < g.points(); ++x)
      v[x] = P.scale * std::cos(std::ldexp(1.0, j) * g.coordinate(x, 0));
    f = Field(t.grid, 1, std::move(v));
  } else {
    const int band = std::min(top, static_cast<int>(std::floor(std::log2(P.field.kmax))));
    j = static_cast<int>(mix_seed(t.seed, 99) % static_cast<std::uint64_t>(band + 1));
    f = dyadic_block(t.scalar(0), j);
  }
  double sup_p = 0.0, sup_q = 0.0;
  for (const MultiIndex& a : multi_indices(g.dim(), P.k)) {
    const Field df = spectral_derivative(f, a);
    sup_p = std::max(sup_p, lp_norm(df, P.p));
    sup_q = std::max(sup_q, lp_norm(df, P.q));
  }
  const double fp = lp_norm(f, P.p);
  const double scale_fwd = std::ldexp(1.0, j * P.k) *
                           std::pow(2.0, j * g.dim() * (1.0 / P.p - 1.0 / P.q));
  const double forward = safe_ratio(sup_q, scale_fwd * fp);
  const double reverse = safe_ratio(fp, std::ldexp(sup_p, -j * P.k));
  return std::max(forward, reverse);
}

double deriv_equiv(const Trial& t, std::size_t) {
  const auto& P = t.params;
  const Field f = t.scalar(0);
  const NormSpec hi{P.s + P.k, P.p, P.q, true};
  const NormSpec lo{P.s, P.p, P.q, true};
  const double r = safe_ratio(tl_norm(f, hi), tl_norm(nabla_power(f, P.k), lo));
  return r == 0.0 ? 0.0 : std::max(r, 1.0 / r);
}

double product(const Trial& t, std::size_t) {
  const NormSpec spec = t.spec();
  const Field f = t.scalar(0);
  Field g;
  if (t.params.family == "constant-g") {
    g = Field(t.grid, 1, std::vector<double>(t.grid->points(), t.params.scale));
  } else {
    g = t.scalar(1);
  }
  const double lhs = tl_norm(multiply(f, g), spec);
  const double rhs = sup_norm(f) * tl_norm(g, spec) + sup_norm(g) * tl_norm(f, spec);
  return safe_ratio(lhs, rhs);
}

double vector_maximal(const Trial& t, std::size_t) {
  const auto& P = t.params;
  const Field g = t.scalar(0);
  const MaximalOperator M(t.grid);
  const FilterBank& bank = t.grid->filter_bank();
  std::vector<Field> family, maximal;
  for (int j = bank.j0(); j <= bank.j_max(); ++j) {
    family.push_back(dyadic_block(g, j));
    maximal.push_back(M.apply(family.back()));
  }
  return safe_ratio(sequence_norm(maximal, 0, 0.0, P.p, P.q),
                    sequence_norm(family, 0, 0.0, P.p, P.q));
}

double majorant(const Trial& t, std::size_t) {
  const Grid& g = *t.grid;
  const Field f = t.scalar(0);
  const Field Mf = MaximalOperator(t.grid).apply(f);
  const Spectrum fs = f.spectrum();
  std::vector<double> best(g.points(), 0.0);
  std::vector<Complex> buf(g.modes());
  std::vector<double> conv(g.points());
  // Normalized Gaussian: its least decreasing radial majorant is itself, A = 1.
  const double A = 1.0;
  for (double eps = g.spacing(); eps <= 2.0 * std::numbers::pi / 8.0 * (1.0 + 1e-12);
       eps *= 2.0) {
    for (std::size_t m = 0; m < g.modes(); ++m) {
      const double r = g.radius(m);
      buf[m] = fs.coeffs[m] * std::exp(-0.5 * eps * eps * r * r);
    }
    g.inverse(buf.data(), conv.data());
    for (std::size_t x = 0; x < g.points(); ++x) best[x] = std::max(best[x], std::abs(conv[x]));
  }
  double worst = 0.0;
  auto mf = Mf.values();
  for (std::size_t x = 0; x < g.points(); ++x)
    worst = std::max(worst, safe_ratio(best[x], A * mf[x]));
  return worst;
}

struct CommutatorData {
  Field f, g;
};

CommutatorData commutator_fields(const Trial& t) {
  CommutatorData c;
  if (t.params.family == "constant-f") {
    const int d = t.grid->dim();
    std::vector<double> v(d * t.grid->points());
    for (int a = 0; a < d; ++a)
      std::fill_n(v.begin() + a * t.grid->points(), t.grid->points(), t.params.scale * (a + 1));
    c.f = Field(t.grid, d, std::move(v), true);
  } else {
    c.f = t.solenoidal(0);
  }
  c.g = t.solenoidal(1);
  return c;
}

double product_scale(const CommutatorData& c, const NormSpec& spec) {
  return sup_norm(c.f) * tl_norm(gradient_tensor(c.g), spec);
}

double commutator_lhs(const std::vector<Field>& seq, const Trial& t) {
  const auto& P = t.params;
  return sequence_norm(seq, t.grid->j0(), P.s, P.p, P.q);
}

double commutator_a2(const Trial& t, std::size_t) {
  const auto c = commutator_fields(t);
  const NormSpec spec = t.spec();
  const double lhs = commutator_lhs(commutator_all(c.f, c.g), t);
  const double rhs = sup_norm(gradient_tensor(c.f)) * tl_norm(c.g, spec) +
                     sup_norm(gradient_tensor(c.g)) * tl_norm(c.f, spec);
  return cancelled_ratio(lhs, rhs, [&] { return product_scale(c, spec); });
}

double commutator_a3(const Trial& t, std::size_t) {
  const auto c = commutator_fields(t);
  const NormSpec spec = t.spec();
  const Field grad_f = gradient_tensor(c.f);
  const double lhs = commutator_lhs(commutator_all(c.f, c.g), t);
  const double rhs = sup_norm(grad_f) * tl_norm(c.g, spec) + sup_norm(c.g) * tl_norm(grad_f, spec);
  return cancelled_ratio(lhs, rhs, [&] { return product_scale(c, spec); });
}

double split_term(const Trial& t, int which) {
  const auto c = commutator_fields(t);
  const NormSpec spec = t.spec();
  const auto split = commutator_split_all(c.f, c.g);
  std::vector<Field> seq;
  for (const auto& s : split) {
    const Field* terms[] = {&s.I, &s.II, &s.III, &s.IV};
    seq.push_back(*terms[which]);
  }
  const double lhs = commutator_lhs(seq, t);
  double rhs = 0.0;
  if (which == 0 || which == 3) {
    rhs = sup_norm(gradient_tensor(c.f)) * tl_norm(c.g, spec);
  } else {
    rhs = sup_norm(gradient_tensor(c.g)) * tl_norm(c.f, spec);
  }
  return cancelled_ratio(lhs, rhs, [&] { return product_scale(c, spec); });
}

double riesz_bounded(const Trial& t, std::size_t) {
  const NormSpec spec = t.spec();
  const Field f = t.scalar(0);
  const double base = tl_norm(f, spec);
  double worst = 0.0;
  for (int l = 0; l < t.grid->dim(); ++l)
    worst = std::max(worst, safe_ratio(tl_norm(riesz(f, l), spec), base));
  return worst;
}

double pressure_bound(const Trial& t, std::size_t) {
  const NormSpec spec = t.spec();
  const ElsasserState st = make_state(t.solenoidal(0), t.solenoidal(1));
  const double lhs = tl_norm(pressure_gradient(st), spec);
  const double rhs = sup_norm(gradient_tensor(st.z_minus)) * tl_norm(st.z_plus, spec) +
                     sup_norm(gradient_tensor(st.z_plus)) * tl_norm(st.z_minus, spec);
  return safe_ratio(lhs, rhs);
}

using Generator = std::function<double(const Trial&, std::size_t)>;

const std::map<std::string, Generator>& generators() {
  static const std::map<std::string, Generator> table = {
      {"bernstein", bernstein},
      {"deriv-equiv", deriv_equiv},
      {"product", product},
      {"vector-maximal", vector_maximal},
      {"majorant", majorant},
      {"commutator-A2", commutator_a2},
      {"commutator-A3", commutator_a3},
      {"term-I", [](const Trial& t, std::size_t) { return split_term(t, 0); }},
      {"term-II", [](const Trial& t, std::size_t) { return split_term(t, 1); }},
      {"term-III", [](const Trial& t, std::size_t) { return split_term(t, 2); }},
      {"term-IV", [](const Trial& t, std::size_t) { return split_term(t, 3); }},
      {"riesz-bounded", riesz_bounded},
      {"pressure-3.11", pressure_bound},
  };
  return table;
}

void check_hypotheses(const std::string& id, const InequalityParams& P) {
  hypothesis(P.trials >= 1, id, "at least one trial");
  hypothesis(P.dim == 2 || P.dim == 3, id, "d in {2, 3}");
  hypothesis(std::isfinite(P.scale) && P.scale != 0.0, id, "a finite nonzero field scale");
  const std::string& fam = P.family;
  const bool family_ok =
      fam == "random" || (fam == "single-mode" && id == "bernstein") ||
      (fam == "constant-g" && id == "product") ||
      (fam == "constant-f" && (id.rfind("commutator", 0) == 0 || id.rfind("term-", 0) == 0));
  hypothesis(family_ok, id, "a supported test-field family, got '" + fam + "'");

  if (id == "bernstein") {
    hypothesis(P.k >= 1 && P.k <= 4, id, "derivative order 1 <= k <= 4");
    hypothesis(P.p >= 1.0 && P.p <= P.q, id, "1 <= p <= q");
    return;
  }
  if (id == "majorant") return;
  if (id == "vector-maximal") {
    NormSpec{0.0, P.p, P.q, true}.validate();
    return;
  }
  NormSpec{P.s, P.p, P.q, P.homogeneous}.validate();
  if (id == "deriv-equiv") {
    hypothesis(P.k >= 1 && P.k <= 4, id, "derivative order 1 <= k <= 4");
  } else if (id == "product" || id == "commutator-A2" || id == "term-II") {
    hypothesis(P.s > 0.0, id, "s > 0");
  } else if (id == "commutator-A3" || id == "term-IV") {
    hypothesis(P.s > -1.0, id, "s > -1");
  } else if (id == "pressure-3.11") {
    hypothesis(P.s > 1.0, id, "s > 1");
  }
}

std::string exponent(double v) { return std::isinf(v) ? "inf" : format_number(v); }

nlohmann::ordered_json params_json(const InequalityParams& P) {
  auto enc = [](double v) -> nlohmann::ordered_json {
    if (std::isinf(v)) return "inf";
    return v;
  };
  nlohmann::ordered_json j;
  j["s"] = P.s;
  j["p"] = enc(P.p);
  j["q"] = enc(P.q);
  j["homogeneous"] = P.homogeneous;
  j["d"] = P.dim;
  j["N"] = P.n;
  j["trials"] = P.trials;
  j["seed"] = P.seed;
  j["k"] = P.k;
  j["scale"] = P.scale;
  j["family"] = P.family;
  j["field"] = {{"amplitude", P.field.amplitude},
                {"beta", P.field.beta},
                {"kmin", P.field.kmin},
                {"kmax", P.field.kmax}};
  return j;
}

nlohmann::ordered_json report_object(const InequalityReport& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["params"] = params_json(r.params);
  j["max_ratio"] = r.max_ratio;
  if (r.has_growth) {
    j["growth_factor"] = r.growth_factor;
  } else {
    j["growth_factor"] = nullptr;
  }
  j["finite"] = r.finite();
  j["ratios"] = r.ratios;
  return j;
}

}  // namespace

bool InequalityReport::finite() const {
  if (ratios.empty()) return false;
  return std::all_of(ratios.begin(), ratios.end(),
                     [](double r) { return std::isfinite(r) && r >= 0.0; });
}

const std::vector<std::string>& inequality_ids() {
  static const std::vector<std::string> ids = {
      "bernstein",     "deriv-equiv", "product",  "vector-maximal", "majorant",
      "commutator-A2", "commutator-A3", "term-I", "term-II",        "term-III",
      "term-IV",       "riesz-bounded", "pressure-3.11"};
  return ids;
}

InequalityReport run_inequality(const std::string& id, const InequalityParams& params) {
  const auto& table = generators();
  const auto it = table.find(id);
  require(it != table.end(), ErrorCode::invalid_argument, "unknown inequality id '" + id + "'");
  check_hypotheses(id, params);
  const GridPtr grid = Grid::create(params.dim, params.n);

  InequalityReport report;
  report.id = id;
  report.params = params;
  for (int i = 0; i < params.trials; ++i) {
    const Trial trial{grid, params, mix_seed(params.seed, static_cast<std::uint64_t>(i))};
    report.ratios.push_back(it->second(trial, static_cast<std::size_t>(i)));
  }
  report.max_ratio = *std::max_element(report.ratios.begin(), report.ratios.end());
  return report;
}

double default_growth_threshold(const std::string& id) {
  return id == "bernstein" ? 1.05 : 1.2;
}

bool StabilitySweep::passed() const {
  if (reports.size() < 2) return false;
  for (const auto& r : reports)
    if (!r.finite()) return false;
  return max_growth <= threshold;
}

StabilitySweep stability_sweep(const std::string& id, const InequalityParams& params,
                               const std::vector<int>& resolutions) {
  require(resolutions.size() >= 2, ErrorCode::invalid_argument, ">=2 resolutions required");
  StabilitySweep sweep;
  sweep.id = id;
  sweep.resolutions = resolutions;
  sweep.threshold = default_growth_threshold(id);
  for (std::size_t i = 0; i < resolutions.size(); ++i) {
    InequalityParams p = params;
    p.n = resolutions[i];
    InequalityReport r = run_inequality(id, p);
    if (i > 0) {
      const double prev = sweep.reports.back().max_ratio;
      r.growth_factor = prev == 0.0 ? (r.max_ratio == 0.0 ? 1.0 : infinity) : r.max_ratio / prev;
      r.has_growth = true;
      sweep.max_growth = i == 1 ? r.growth_factor : std::max(sweep.max_growth, r.growth_factor);
    }
    sweep.reports.push_back(std::move(r));
  }
  return sweep;
}

std::string report_json(const InequalityReport& report) { return report_object(report).dump(2); }

std::string sweep_json(const StabilitySweep& sweep) {
  nlohmann::ordered_json j;
  j["id"] = sweep.id;
  j["resolutions"] = sweep.resolutions;
  j["threshold"] = sweep.threshold;
  j["max_growth"] = sweep.max_growth;
  j["passed"] = sweep.passed();
  nlohmann::ordered_json reports = nlohmann::ordered_json::array();
  for (const auto& r : sweep.reports) reports.push_back(report_object(r));
  j["reports"] = std::move(reports);
  return j.dump(2);
}

std::string summary_csv(const std::vector<InequalityReport>& reports) {
  std::ostringstream os;
  os << "id,s,p,q,d,N,trials,seed,max_ratio,growth_factor\n";
  for (const auto& r : reports) {
    const auto& P = r.params;
    os << r.id << "," << format_number(P.s) << "," << exponent(P.p) << "," << exponent(P.q) << ","
       << P.dim << "," << P.n << "," << P.trials << "," << P.seed << ","
       << format_number(r.max_ratio) << "," << (r.has_growth ? format_number(r.growth_factor) : "")
       << "\n";
  }
  return os.str();
}

}  // namespace paramhd
