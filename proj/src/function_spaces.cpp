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

#include "paramhd/function_spaces.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "paramhd/error.hpp"
#include "paramhd/filter_bank.hpp"
#include "paramhd/spectral_ops.hpp"

namespace paramhd {

namespace {

std::string format_exponent(double v) {
  if (std::isinf(v)) return "inf";
  std::ostringstream os;
  os << v;
  return os.str();
}

// Accumulates (2^{ks}|X_k|)^q pointwise, or the running max when q = inf.
class ShellAccumulator {
 public:
  ShellAccumulator(std::size_t points, double q) : q_(q), acc_(points, 0.0) {}

  void add(std::span<const double> magnitude, double weight) {
    if (std::isinf(q_)) {
      for (std::size_t x = 0; x < acc_.size(); ++x)
        acc_[x] = std::max(acc_[x], weight * magnitude[x]);
    } else if (q_ == 2.0) {
      for (std::size_t x = 0; x < acc_.size(); ++x) {
        const double v = weight * magnitude[x];
        acc_[x] += v * v;
      }
    } else {
      for (std::size_t x = 0; x < acc_.size(); ++x)
        acc_[x] += std::pow(weight * magnitude[x], q_);
    }
  }

  double finish(double p) {
    if (!std::isinf(q_)) {
      const double inv = 1.0 / q_;
      for (double& v : acc_) v = q_ == 2.0 ? std::sqrt(v) : std::pow(v, inv);
    }
    return lp_norm(acc_, acc_.size(), 1, p);
  }

 private:
  double q_;
  std::vector<double> acc_;
};

void magnitude_of(const Grid& g, const Spectrum& s, std::span<const double> multiplier,
                  std::vector<double>& mag) {
  std::vector<Complex> buf(g.modes());
  std::vector<double> phys(g.points());
  std::fill(mag.begin(), mag.end(), 0.0);
  for (int c = 0; c < s.components; ++c) {
    auto src = s.component(c);
    for (std::size_t m = 0; m < g.modes(); ++m) buf[m] = src[m] * multiplier[m];
    g.inverse(buf.data(), phys.data());
    for (std::size_t x = 0; x < g.points(); ++x) mag[x] += phys[x] * phys[x];
  }
  for (double& v : mag) v = std::sqrt(v);
}

void field_magnitude(const Field& f, std::vector<double>& mag) {
  const std::size_t n = f.grid().points();
  std::fill(mag.begin(), mag.end(), 0.0);
  for (int c = 0; c < f.components(); ++c) {
    auto v = f.component(c);
    for (std::size_t x = 0; x < n; ++x) mag[x] += v[x] * v[x];
  }
  for (double& v : mag) v = std::sqrt(v);
}

}  // namespace

void NormSpec::validate() const {
  const bool finite_pair = p > 1.0 && !std::isinf(p) && q > 1.0;
  const bool sup_pair = std::isinf(p) && std::isinf(q);
  require(finite_pair || sup_pair, ErrorCode::invalid_argument,
          "norm exponents need (p,q) in (1,inf)x(1,inf] or p=q=inf, got p=" +
              format_exponent(p) + " q=" + format_exponent(q));
  require(homogeneous || s > 0.0, ErrorCode::invalid_argument,
          "inhomogeneous Triebel-Lizorkin norm needs s > 0, got s=" + format_exponent(s));
  require(std::isfinite(s), ErrorCode::invalid_argument, "smoothness must be finite");
}

std::string NormSpec::label() const {
  std::ostringstream os;
  os << (homogeneous ? "Fdot" : "F") << "[s=" << format_exponent(s)
     << ",p=" << format_exponent(p) << ",q=" << format_exponent(q) << "]";
  return os.str();
}

double lp_norm(std::span<const double> values, std::size_t points, int components, double p) {
  require(p >= 1.0, ErrorCode::invalid_argument, "Lebesgue exponent must be >= 1");
  double acc = 0.0;
  for (std::size_t x = 0; x < points; ++x) {
    double m2 = 0.0;
    for (int c = 0; c < components; ++c) {
      const double v = values[c * points + x];
      m2 += v * v;
    }
    if (std::isinf(p)) {
      acc = std::max(acc, m2);
    } else if (p == 2.0) {
      acc += m2;
    } else {
      acc += std::pow(m2, 0.5 * p);
    }
  }
  if (std::isinf(p)) return std::sqrt(acc);
  const double avg = acc / static_cast<double>(points);
  return p == 2.0 ? std::sqrt(avg) : std::pow(avg, 1.0 / p);
}

double lp_norm(const Field& f, double p) {
  return lp_norm(f.values(), f.grid().points(), f.components(), p);
}

double tl_norm(const Field& f, const NormSpec& spec) {
  spec.validate();
  const Grid& g = f.grid();
  const FilterBank& bank = g.filter_bank();
  const Spectrum s = f.spectrum();
  ShellAccumulator acc(g.points(), spec.q);
  std::vector<double> mag(g.points());
  for (int j = bank.j0(); j <= bank.j_max(); ++j) {
    magnitude_of(g, s, bank.block(j), mag);
    acc.add(mag, std::pow(2.0, j * spec.s));
  }
  const double hom = acc.finish(spec.p);
  return spec.homogeneous ? hom : hom + lp_norm(f, spec.p);
}

double sequence_norm(std::span<const Field> sequence, int k_first, double s, double p,
                     double q) {
  require(!sequence.empty(), ErrorCode::invalid_argument, "empty sequence");
  const std::size_t points = sequence.front().grid().points();
  ShellAccumulator acc(points, q);
  std::vector<double> mag(points);
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    require_same_grid(sequence[i].grid(), sequence.front().grid());
    field_magnitude(sequence[i], mag);
    acc.add(mag, std::pow(2.0, (k_first + static_cast<int>(i)) * s));
  }
  return acc.finish(p);
}

double sobolev_norm(const Field& f, double s) {
  const Grid& g = f.grid();
  const Spectrum sp = f.spectrum();
  double acc = 0.0;
  for (int c = 0; c < sp.components; ++c) {
    auto comp = sp.component(c);
    for (std::size_t m = 0; m < g.modes(); ++m) {
      const double r = g.radius(m);
      if (r == 0.0) continue;
      acc += g.parseval_weight(m) * std::pow(r, 2.0 * s) * std::norm(comp[m]);
    }
  }
  return std::sqrt(acc);
}

double parseval_norm(const Field& f) {
  const Grid& g = f.grid();
  const Spectrum sp = f.spectrum();
  double acc = 0.0;
  for (int c = 0; c < sp.components; ++c) {
    auto comp = sp.component(c);
    for (std::size_t m = 0; m < g.modes(); ++m) acc += g.parseval_weight(m) * std::norm(comp[m]);
  }
  return std::sqrt(acc);
}

std::string norm_record_json(const std::string& field_id, const NormSpec& spec, double value) {
  auto encode = [](double v) -> nlohmann::json {
    if (std::isinf(v)) return "inf";
    return v;
  };
  nlohmann::ordered_json j;
  j["field-id"] = field_id;
  j["s"] = spec.s;
  j["p"] = encode(spec.p);
  j["q"] = encode(spec.q);
  j["homogeneous"] = spec.homogeneous;
  j["value"] = value;
  return j.dump();
}

MaximalOperator::MaximalOperator(GridPtr grid) : grid_(std::move(grid)) {
  const Grid& g = *grid_;
  const int d = g.dim();
  const int n = g.n();
  std::vector<double> indicator(g.points());
  std::vector<Complex> spec(g.modes());
  for (int radius = 1; radius <= n / 2; radius *= 2) {
    const long r2 = static_cast<long>(radius) * radius;
    double count = 0.0;
    for (std::size_t x = 0; x < g.points(); ++x) {
      std::size_t rest = x;
      long dist2 = 0;
      for (int a = 0; a < d; ++a) {
        int i = static_cast<int>(rest % n);
        rest /= n;
        if (i > n / 2) i -= n;
        dist2 += static_cast<long>(i) * i;
      }
      indicator[x] = dist2 <= r2 ? 1.0 : 0.0;
      count += indicator[x];
    }
    for (double& v : indicator) v /= count;
    g.forward(indicator.data(), spec.data());
    // Convolution with a normalized kernel: (K * f)^ = N^d Khat fhat. K is
    // even, so the multiplier is real.
    std::vector<double> mult(g.modes());
    for (std::size_t m = 0; m < g.modes(); ++m)
      mult[m] = spec[m].real() * static_cast<double>(g.points());
    kernels_.push_back(std::move(mult));
    radii_.push_back(radius * g.spacing());
  }
}

std::vector<double> MaximalOperator::magnitude(const Field& f) const {
  require_same_grid(f.grid(), *grid_);
  std::vector<double> mag(grid_->points());
  field_magnitude(f, mag);
  return mag;
}

Field MaximalOperator::ball_average(const Field& f, int m) const {
  require(m >= 0 && m < static_cast<int>(kernels_.size()), ErrorCode::out_of_range,
          "radius ladder index out of range");
  const Grid& g = *grid_;
  const auto mag = magnitude(f);
  std::vector<Complex> spec(g.modes());
  g.forward(mag.data(), spec.data());
  for (std::size_t k = 0; k < g.modes(); ++k) spec[k] *= kernels_[m][k];
  std::vector<double> out(g.points());
  g.inverse(spec.data(), out.data());
  return Field(grid_, 1, std::move(out));
}

Field MaximalOperator::apply(const Field& f) const {
  const Grid& g = *grid_;
  const auto mag = magnitude(f);
  std::vector<Complex> spec(g.modes());
  g.forward(mag.data(), spec.data());
  std::vector<double> best = mag;
  std::vector<Complex> buf(g.modes());
  std::vector<double> avg(g.points());
  for (const auto& kernel : kernels_) {
    for (std::size_t k = 0; k < g.modes(); ++k) buf[k] = spec[k] * kernel[k];
    g.inverse(buf.data(), avg.data());
    for (std::size_t x = 0; x < g.points(); ++x) best[x] = std::max(best[x], avg[x]);
  }
  return Field(grid_, 1, std::move(best));
}

Field maximal_function(const Field& f) { return MaximalOperator(f.grid_ptr()).apply(f); }

}  // namespace paramhd
