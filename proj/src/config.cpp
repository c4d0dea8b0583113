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

#include "paramhd/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "paramhd/error.hpp"
#include "paramhd/grid.hpp"
#include "paramhd/inequality_lab.hpp"
#include "paramhd/picard.hpp"

namespace paramhd {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& key, const std::string& what) {
  fail(ErrorCode::validation, "config key '" + key + "': " + what);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  if (v == "inf" || v == "+inf") return infinity;
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty() || !std::isfinite(out))
    bad(key, "expected a number, got '" + v + "'");
  return out;
}

long long to_int(const std::string& key, const std::string& v) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
    bad(key, "expected an integer, got '" + v + "'");
  return out;
}

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  bad(key, "expected true or false, got '" + v + "'");
}

std::string one_of(const std::string& key, const std::string& v,
                   std::initializer_list<const char*> allowed) {
  std::string list;
  for (const char* a : allowed) {
    if (v == a) return v;
    list += std::string(list.empty() ? "" : ", ") + a;
  }
  bad(key, "expected one of {" + list + "}, got '" + v + "'");
}

NormSpec to_norm(const std::string& key, const std::string& v) {
  const auto parts = split(v, '/');
  if (parts.size() != 4) bad(key, "norm specs are s/p/q/homogeneous|inhomogeneous, got '" + v + "'");
  NormSpec s;
  s.s = to_double(key, parts[0]);
  s.p = to_double(key, parts[1]);
  s.q = to_double(key, parts[2]);
  if (parts[3] == "homogeneous") {
    s.homogeneous = true;
  } else if (parts[3] == "inhomogeneous") {
    s.homogeneous = false;
  } else {
    bad(key, "norm type must be homogeneous or inhomogeneous, got '" + parts[3] + "'");
  }
  try {
    s.validate();
  } catch (const Error& e) {
    bad(key, e.what());
  }
  return s;
}

std::string norm_text(const NormSpec& s) {
  return fmt(s.s) + "/" + fmt(s.p) + "/" + fmt(s.q) + "/" +
         (s.homogeneous ? "homogeneous" : "inhomogeneous");
}

template <class T, class Parse, class Show>
std::string list_of(const std::string& key, const std::string& v, std::vector<T>& out,
                    Parse parse, Show show) {
  out.clear();
  std::string norm;
  if (v.empty()) return norm;
  for (const auto& item : split(v, ',')) {
    if (item.empty()) bad(key, "empty list element");
    out.push_back(parse(key, item));
    norm += (norm.empty() ? "" : ", ") + show(out.back());
  }
  return norm;
}

int narrow(const std::string& key, long long v) {
  if (v < -1000000000LL || v > 1000000000LL) bad(key, "integer out of range");
  return static_cast<int>(v);
}

using Setter = std::function<std::string(RunConfig&, const std::string& key, const std::string&)>;

Setter real(double RunConfig::*member) {
  return [member](RunConfig& c, const std::string& k, const std::string& v) {
    c.*member = to_double(k, v);
    return fmt(c.*member);
  };
}

Setter integer(int RunConfig::*member) {
  return [member](RunConfig& c, const std::string& k, const std::string& v) {
    c.*member = narrow(k, to_int(k, v));
    return std::to_string(c.*member);
  };
}

const std::map<std::string, Setter>& schema() {
  static const std::map<std::string, Setter> table = {
      {"command",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         return c.command = one_of(k, v, {"simulate", "picard", "verify"});
       }},
      {"dim", integer(&RunConfig::dim)},
      {"n", integer(&RunConfig::n)},
      {"init",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         return c.init = one_of(k, v, {"taylor_green", "alfven", "orszag_tang", "random"});
       }},
      {"init.amplitude", real(&RunConfig::amplitude)},
      {"init.perturb", real(&RunConfig::perturb)},
      {"init.beta", real(&RunConfig::beta)},
      {"init.kmin", real(&RunConfig::kmin)},
      {"init.kmax", real(&RunConfig::kmax)},
      {"seed",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         std::uint64_t out = 0;
         const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
         if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
           bad(k, "expected an unsigned integer, got '" + v + "'");
         c.seed = out;
         return std::to_string(out);
       }},
      {"dt", real(&RunConfig::dt)},
      {"t_end", real(&RunConfig::t_end)},
      {"cadence", integer(&RunConfig::cadence)},
      {"norms",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         return list_of(k, v, c.norms, to_norm, norm_text);
       }},
      {"snapshot_times",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         return list_of(k, v, c.snapshot_times, to_double, fmt);
       }},
      {"output_dir",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         if (v.empty()) bad(k, "must not be empty");
         return c.output_dir = v;
       }},
      {"picard.s", real(&RunConfig::picard_s)},
      {"picard.p", real(&RunConfig::picard_p)},
      {"picard.q", real(&RunConfig::picard_q)},
      {"picard.n_max", integer(&RunConfig::picard_n_max)},
      {"verify.ids",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         return list_of(
             k, v, c.verify_ids, [](const std::string&, const std::string& s) { return s; },
             [](const std::string& s) { return s; });
       }},
      {"verify.trials", integer(&RunConfig::verify_trials)},
      {"verify.resolutions",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         return list_of(
             k, v, c.verify_resolutions,
             [](const std::string& key, const std::string& s) { return narrow(key, to_int(key, s)); },
             [](int n) { return std::to_string(n); });
       }},
      {"verify.s", real(&RunConfig::verify_s)},
      {"verify.p", real(&RunConfig::verify_p)},
      {"verify.q", real(&RunConfig::verify_q)},
      {"verify.homogeneous",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.verify_homogeneous = to_bool(k, v);
         return std::string(c.verify_homogeneous ? "true" : "false");
       }},
      {"verify.k", integer(&RunConfig::verify_k)},
      {"verify.family",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         return c.verify_family =
                    one_of(k, v, {"random", "single-mode", "constant-g", "constant-f"});
       }},
      {"verify.kmax", real(&RunConfig::verify_kmax)},
      {"verify.beta", real(&RunConfig::verify_beta)},
      {"verify.scale", real(&RunConfig::verify_scale)},
  };
  return table;
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

std::vector<std::string> config_keys() {
  std::vector<std::string> out;
  for (const auto& [k, _] : schema()) out.push_back(k);
  return out;
}

void apply_override(RunConfig& config, const std::string& key_in, const std::string& value_in) {
  const std::string key = trim(key_in);
  const auto it = schema().find(key);
  if (it == schema().end()) fail(ErrorCode::validation, "unknown config key '" + key + "'");
  config.entries[key] = it->second(config, key, trim(value_in));
}

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::validation, "config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (c.entries.count(key))
      fail(ErrorCode::validation, "config key '" + key + "' given twice");
    apply_override(c, key, line.substr(eq + 1));
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::io, "cannot read config " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& config) {
  std::string out;
  for (const auto& [k, v] : config.entries) out += k + " = " + v + "\n";
  return out;
}

long RunConfig::steps() const { return std::lround(t_end / dt); }

void RunConfig::validate_for(const std::string& cmd) const {
  auto check = [](bool ok, const std::string& key, const std::string& what) {
    if (!ok) bad(key, what);
  };
  if (!command.empty())
    check(command == cmd, "command", "file is for '" + command + "', invoked as '" + cmd + "'");

  if (cmd == "verify") {
    check(!verify_ids.empty(), "verify.ids", "nothing to verify");
    const auto& known = inequality_ids();
    for (const auto& id : verify_ids)
      check(std::find(known.begin(), known.end(), id) != known.end(), "verify.ids",
            "unknown inequality id '" + id + "'");
    check(verify_trials >= 1, "verify.trials", "must be >= 1");
    check(!verify_resolutions.empty(), "verify.resolutions", "must list at least one N");
    for (int r : verify_resolutions)
      check(power_of_two(r) && r >= 16, "verify.resolutions", "every N must be a power of two >= 16");
    check(dim == 2 || dim == 3, "dim", "must be 2 or 3");
    check(verify_kmax >= 1.0, "verify.kmax", "must be >= 1");
    for (int r : verify_resolutions)
      check(std::floor(verify_kmax) <= (r - 1) / 3, "verify.kmax",
            "band exceeds the dealiased range of N=" + std::to_string(r));
    return;
  }

  check(cmd == "simulate" || cmd == "picard", "command", "unknown command '" + cmd + "'");
  check(dim == 2 || dim == 3, "dim", "must be 2 or 3");
  check(power_of_two(n) && n >= 16, "n", "must be a power of two >= 16");
  check(dt > 0.0, "dt", "must be > 0");
  check(t_end > 0.0, "t_end", "must be > 0");
  check(steps() >= 1 && std::abs(steps() * dt - t_end) <= 1e-9 * t_end, "t_end",
        "must be an integer multiple of dt");
  check(cadence >= 1, "cadence", "must be >= 1");
  if (init == "alfven" || init == "random") {
    check(kmin >= 0.0 && kmin <= kmax, "init.kmin", "need 0 <= kmin <= kmax");
    check(std::floor(kmax) <= (n - 1) / 3, "init.kmax",
          "band exceeds the dealiased range of n=" + std::to_string(n));
    check(amplitude > 0.0, "init.amplitude", "must be > 0");
  }
  for (double t : snapshot_times) {
    check(t >= 0.0 && t <= t_end * (1.0 + 1e-12), "snapshot_times", "times must lie in [0, t_end]");
    const double k = t / dt;
    check(std::abs(k - std::round(k)) <= 1e-6, "snapshot_times", "times must fall on the step grid");
  }
  if (cmd == "picard") {
    const int j_max = static_cast<int>(std::ceil(std::log2(n / 2.0)));
    check(picard_n_max >= 1 && picard_n_max <= j_max + 1, "picard.n_max",
          "needs 1 <= n_max <= j_max + 1 = " + std::to_string(j_max + 1) +
              " so that every initial low-pass stays in the grid range");
    check(picard_s > 1.0, "picard.s", "differences are measured in F^{s-1}, which needs s > 1");
    try {
      NormSpec{picard_s - 1.0, picard_p, picard_q, false}.validate();
    } catch (const Error& e) {
      bad("picard.p", e.what());
    }
  }
}

}  // namespace paramhd
