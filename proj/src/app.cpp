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

#include "paramhd/app.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "paramhd/diagnostics.hpp"
#include "paramhd/error.hpp"
#include "paramhd/filter_bank.hpp"
#include "paramhd/inequality_lab.hpp"
#include "paramhd/mhd.hpp"
#include "paramhd/picard.hpp"
#include "paramhd/snapshot.hpp"
#include "paramhd/spectral_ops.hpp"

namespace paramhd::app {

namespace fs = std::filesystem;

namespace {

void make_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  require(!ec && fs::is_directory(dir), ErrorCode::io, "cannot create directory " + dir);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  require(static_cast<bool>(out), ErrorCode::io, "cannot write " + path.string());
  out << text;
  out.flush();
  require(static_cast<bool>(out), ErrorCode::io, "write failed for " + path.string());
}

template <class F>
int guarded(std::ostream& log, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return exit_failed;
  }
}

std::string cfl_message(double dt, double limit) {
  return "dt=" + format_number(dt) + " violates the CFL bound dt <= 0.5*h/max|z+-| = " +
         format_number(limit);
}

std::string step_tag(long step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%07ld", step);
  return buf;
}

void write_pair(const fs::path& dir, const ElsasserState& s, long step) {
  const auto [u, b] = from_elsasser(s);
  write_snapshot((dir / ("u_" + step_tag(step) + ".snap")).string(),
                 {"u@t=" + format_number(s.t), s.t, u});
  write_snapshot((dir / ("b_" + step_tag(step) + ".snap")).string(),
                 {"b@t=" + format_number(s.t), s.t, b});
}

InequalityParams lab_params(const RunConfig& c) {
  InequalityParams p;
  p.s = c.verify_s;
  p.p = c.verify_p;
  p.q = c.verify_q;
  p.homogeneous = c.verify_homogeneous;
  p.dim = c.dim;
  p.n = c.verify_resolutions.front();
  p.trials = c.verify_trials;
  p.seed = c.seed;
  p.k = c.verify_k;
  p.scale = c.verify_scale;
  p.family = c.verify_family;
  p.field.kmax = c.verify_kmax;
  p.field.beta = c.verify_beta;
  return p;
}

}  // namespace

int exit_code(const Error& e) {
  switch (e.code()) {
    case ErrorCode::io:
      return exit_io;
    case ErrorCode::cfl:
      return exit_cfl;
    default:
      return exit_validation;
  }
}

VelocityMagnetic initial_data(const RunConfig& c, const GridPtr& grid) {
  RandomFieldSpec spec{c.amplitude, c.beta, c.kmin, c.kmax};
  if (c.init == "taylor_green") return taylor_green(grid, c.amplitude, c.perturb, c.seed);
  if (c.init == "alfven") return alfven_state(grid, spec, c.seed);
  if (c.init == "orszag_tang") return orszag_tang(grid, c.amplitude);
  return random_pair(grid, spec, c.seed);
}

int simulate(const RunConfig& c, std::ostream& log) {
  return guarded(log, [&] {
    c.validate_for("simulate");
    const GridPtr grid = Grid::create(c.dim, c.n);
    const auto [u0, b0] = initial_data(c, grid);
    ElsasserState state = to_elsasser(u0, b0);
    const double limit0 = cfl_limit(state);
    require(c.dt <= limit0, ErrorCode::validation, cfl_message(c.dt, limit0));

    make_dir(c.output_dir);
    const fs::path dir(c.output_dir);
    write_text(dir / "config.txt", serialize_config(c));

    const long steps = c.steps();
    std::set<long> snap_steps;
    for (double t : c.snapshot_times) snap_steps.insert(std::lround(t / c.dt));
    const FilterBank& bank = grid->filter_bank();

    std::vector<DiagnosticsRecord> stream;
    append_record(stream, record(state, c.norms));
    if (snap_steps.count(0)) write_pair(dir, state, 0);

    int status = exit_ok;
    for (long i = 1; i <= steps; ++i) {
      StepReport report;
      state = step(state, c.dt, &report);
      state.t = i * c.dt;
      if (report.cfl_violated) {
        log << "error: step " << i << ": " << cfl_message(c.dt, report.dt_limit)
            << "; run aborted\n";
        status = exit_cfl;
        break;
      }
      if (i % c.cadence == 0 || i == steps) append_record(stream, record(state, c.norms));
      if (snap_steps.count(i)) write_pair(dir, state, i);
    }

    std::ostringstream csv;
    write_csv(csv, stream, c.norms, bank.j0(), bank.j_max(), "simulate diagnostics");
    write_text(dir / "diagnostics.csv", csv.str());
    write_text(dir / "diagnostics.json", to_json(stream, c.norms, bank.j0(), bank.j_max()));
    if (!c.norms.empty()) {
      nlohmann::ordered_json g = nlohmann::ordered_json::array();
      for (std::size_t k = 0; k < c.norms.size(); ++k) {
        const GronwallFit fit = gronwall_check(stream, k);
        g.push_back({{"norm", c.norms[k].label()},
                     {"constant", fit.constant},
                     {"max_violation", fit.max_violation},
                     {"min_slack", fit.min_slack}});
      }
      write_text(dir / "gronwall.json", g.dump(2));
    }
    return status;
  });
}

int picard(const RunConfig& c, std::ostream& log) {
  return guarded(log, [&] {
    c.validate_for("picard");
    const GridPtr grid = Grid::create(c.dim, c.n);
    const auto [u0, b0] = initial_data(c, grid);
    const ElsasserState z0 = to_elsasser(u0, b0);
    const double limit0 = cfl_limit(z0);
    require(c.dt <= limit0, ErrorCode::validation, cfl_message(c.dt, limit0));
    make_dir(c.output_dir);
    const fs::path dir(c.output_dir);
    write_text(dir / "config.txt", serialize_config(c));

    const PicardRun run = picard_iterate(z0.z_plus, z0.z_minus, c.picard_s, c.picard_p,
                                         c.picard_q, c.t_end, c.dt, c.picard_n_max);
    std::ostringstream csv;
    csv << "# picard differences generated " << timestamp_now() << "\n";
    csv << "n,difference_norm,ratio\n";
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t n = 1; n < run.iterates.size(); ++n) {
      const double d = run.iterates[n].difference_norm;
      csv << n << "," << format_number(d) << ",";
      nlohmann::ordered_json row = {{"n", n}, {"difference_norm", d}};
      if (n >= 2) {
        const double r = d / run.iterates[n - 1].difference_norm;
        csv << format_number(r);
        row["ratio"] = r;
      } else {
        row["ratio"] = nullptr;
      }
      csv << "\n";
      rows.push_back(std::move(row));
    }
    write_text(dir / "picard.csv", csv.str());
    nlohmann::ordered_json doc;
    doc["norm"] = run.difference_spec.label();
    doc["T"] = run.T;
    doc["dt"] = run.dt;
    doc["max_cfl_ratio"] = run.max_cfl_ratio;
    doc["iterates"] = std::move(rows);
    write_text(dir / "picard.json", doc.dump(2));
    if (run.max_cfl_ratio > 1.0) {
      log << "error: an advecting iterate broke the CFL bound (dt / limit = "
          << format_number(run.max_cfl_ratio) << ")\n";
      return static_cast<int>(exit_cfl);
    }
    return static_cast<int>(exit_ok);
  });
}

int verify(const RunConfig& c, std::ostream& log) {
  return guarded(log, [&] {
    c.validate_for("verify");
    const InequalityParams base = lab_params(c);
    // Parameter hypotheses are checked for every id before any trial runs.
    for (const auto& id : c.verify_ids) {
      InequalityParams probe = base;
      probe.trials = 1;
      probe.n = 16;
      probe.field.kmax = std::min(probe.field.kmax, 5.0);
      try {
        run_inequality(id, probe);
      } catch (const Error& e) {
        fail(ErrorCode::validation, e.what());
      }
    }
    make_dir(c.output_dir);
    const fs::path dir(c.output_dir);
    write_text(dir / "config.txt", serialize_config(c));

    bool ok = true;
    nlohmann::ordered_json all = nlohmann::ordered_json::array();
    std::vector<InequalityReport> flat;
    for (const auto& id : c.verify_ids) {
      if (c.verify_resolutions.size() >= 2) {
        const StabilitySweep sweep = stability_sweep(id, base, c.verify_resolutions);
        ok = ok && sweep.passed();
        all.push_back(nlohmann::ordered_json::parse(sweep_json(sweep)));
        flat.insert(flat.end(), sweep.reports.begin(), sweep.reports.end());
        log << id << ": max growth " << format_number(sweep.max_growth) << " (threshold "
            << format_number(sweep.threshold) << ")" << (sweep.passed() ? "" : " FAILED") << "\n";
      } else {
        const InequalityReport r = run_inequality(id, base);
        ok = ok && r.finite();
        all.push_back(nlohmann::ordered_json::parse(report_json(r)));
        flat.push_back(r);
        log << id << ": max ratio " << format_number(r.max_ratio)
            << (r.finite() ? "" : " NOT FINITE") << "\n";
      }
    }
    write_text(dir / "reports.json", all.dump(2));
    write_text(dir / "summary.csv",
               "# verify summary generated " + timestamp_now() + "\n" + summary_csv(flat));
    return ok ? static_cast<int>(exit_ok) : static_cast<int>(exit_failed);
  });
}

int run(const std::string& command, const std::string& path, const std::string& ids,
        std::ostream& log) {
  return guarded(log, [&] {
    RunConfig c = load_config(path);
    if (!ids.empty()) apply_override(c, "verify.ids", ids);
    if (command == "simulate") return simulate(c, log);
    if (command == "picard") return picard(c, log);
    if (command == "verify") return verify(c, log);
    fail(ErrorCode::validation, "unknown command '" + command + "'");
  });
}

std::string norm_record(const std::string& snapshot_path, const NormSpec& spec) {
  spec.validate();
  const Snapshot s = read_snapshot(snapshot_path);
  const double v = tl_norm(s.field, spec);
  return norm_record_json(s.id.empty() ? snapshot_path : s.id, spec, v);
}

void decompose(const std::string& snapshot_path, const std::string& out_dir) {
  const Snapshot s = read_snapshot(snapshot_path);
  make_dir(out_dir);
  const fs::path dir(out_dir);
  const FilterBank& bank = s.field.grid().filter_bank();
  const std::string stem = s.id.empty() ? "field" : s.id;
  write_snapshot((dir / "base.snap").string(),
                 {stem + ":S" + std::to_string(bank.j0()), s.time, low_pass(s.field, bank.j0())});
  for (int j = bank.j0(); j <= bank.j_max(); ++j)
    write_snapshot((dir / ("block_" + std::to_string(j) + ".snap")).string(),
                   {stem + ":Delta" + std::to_string(j), s.time, dyadic_block(s.field, j)});
}

}  // namespace paramhd::app
