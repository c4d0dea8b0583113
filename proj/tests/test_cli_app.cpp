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

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "paramhd/app.hpp"
#include "paramhd/config.hpp"
#include "paramhd/error.hpp"
#include "paramhd/initial_data.hpp"
#include "paramhd/mhd.hpp"
#include "paramhd/random_fields.hpp"
#include "paramhd/snapshot.hpp"
#include "paramhd/spectral_ops.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace paramhd;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("paramhd_cli_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

int cli(const std::string& args, const fs::path& log) {
  std::string cmd = std::string(PARAMHD_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string drop_first_line(const std::string& text) { return text.substr(text.find('\n') + 1); }

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
  auto it = std::find(header.begin(), header.end(), name);
  REQUIRE(it != header.end());
  return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

TEST_CASE("config parsing") {
  RunConfig c = parse_config(
      "# comment line\n"
      "command = simulate\n"
      "dim = 2   # trailing comment\n"
      "n = 32\n"
      "init = orszag_tang\n"
      "dt = 0.001\n"
      "t_end = 0.01\n"
      "norms = 1.5/2/2/homogeneous, 0.5/4/inf/inhomogeneous\n"
      "snapshot_times = 0, 0.005\n"
      "output_dir = out\n");
  CHECK(c.command == "simulate");
  CHECK(c.n == 32);
  CHECK(c.init == "orszag_tang");
  CHECK(c.steps() == 10);
  REQUIRE(c.norms.size() == 2u);
  CHECK(c.norms[1] == NormSpec{0.5, 4, infinity, false});
  CHECK(c.snapshot_times == std::vector<double>{0.0, 0.005});
  CHECK_NOTHROW(c.validate_for("simulate"));
}

TEST_CASE("config errors are validation errors") {
  auto code = [](const std::string& text) {
    try {
      parse_config(text).validate_for("simulate");
    } catch (const Error& e) {
      return static_cast<int>(e.code());
    }
    return -1;
  };
  const int v = static_cast<int>(ErrorCode::validation);
  CHECK(code("bogus = 1\n") == v);
  CHECK(code("n = 32\nn = 64\n") == v);
  CHECK(code("n = abc\n") == v);
  CHECK(code("n = 48\n") == v);
  CHECK(code("dim = 4\n") == v);
  CHECK(code("init = vortex\n") == v);
  CHECK(code("norms = 1/2/2\n") == v);
  CHECK(code("norms = 1/1/2/homogeneous\n") == v);
  CHECK(code("dt = -1\n") == v);
  CHECK(code("missing equals sign\n") == v);
  CHECK(code("dt = 0.003\nt_end = 0.01\n") == v);
  try {
    parse_config("bogus = 1\n");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("bogus") != std::string::npos);
  }
  try {
    RunConfig c = parse_config("n = 32\npicard.n_max = 9\n");
    c.validate_for("picard");
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("n_max") != std::string::npos);
  }
  try {
    parse_config("verify.trials = 5\n").validate_for("verify");
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("nothing to verify") != std::string::npos);
  }
}

TEST_CASE("config round trip") {
  const std::string text =
      "t_end = 0.50\n"
      "dt=1e-3\n"
      "norms = 1.5/2/inf/homogeneous,  0/inf/inf/homogeneous\n"
      "verify.ids = bernstein,product\n"
      "seed = 7\n";
  RunConfig a = parse_config(text);
  std::string once = serialize_config(a);
  RunConfig b = parse_config(once);
  CHECK(serialize_config(b) == once);
  CHECK(b.entries == a.entries);
  CHECK(once.find("dt = 0.001\n") != std::string::npos);
  CHECK(once.find("t_end = 0.5\n") != std::string::npos);
  CHECK(once.find("verify.ids = bernstein, product\n") != std::string::npos);
  // sorted keys
  CHECK(once.find("dt =") < once.find("seed ="));

  apply_override(a, "verify.ids", "riesz-bounded");
  CHECK(a.verify_ids == std::vector<std::string>{"riesz-bounded"});
  CHECK_THROWS_AS(apply_override(a, "nope", "1"), Error);
  CHECK(std::find(config_keys().begin(), config_keys().end(), "picard.n_max") != config_keys().end());
}

TEST_CASE("snapshot round trip") {
  fs::path dir = scratch("snap");
  auto g = Grid::create(3, 16);
  Field v = random_solenoidal(g, RandomFieldSpec{1, 3, 1, 5}, 3);
  write_snapshot((dir / "v.snap").string(), {"velocity", 0.25, v});
  Snapshot s = read_snapshot((dir / "v.snap").string());
  CHECK(s.id == "velocity");
  CHECK(s.time == 0.25);
  CHECK(s.field.grid().dim() == 3);
  CHECK(s.field.grid().n() == 16);
  CHECK(s.field.components() == 3);
  CHECK(s.field.solenoidal());
  CHECK(testing::max_abs_diff(s.field.values(), v.values()) == 0.0);

  std::string bytes = read_file(dir / "v.snap");
  CHECK(bytes.substr(0, 8) == "PMHDSNAP");

  write_file(dir / "bad.snap", "NOTASNAPSHOT");
  try {
    read_snapshot((dir / "bad.snap").string());
    FAIL("expected an error");
  } catch (const Error& e) {
    // readable file, wrong contents
    CHECK(e.code() == ErrorCode::validation);
  }
  CHECK_THROWS_AS(read_snapshot((dir / "missing.snap").string()), Error);
  std::string truncated = bytes.substr(0, bytes.size() - 8);
  write_file(dir / "short.snap", truncated);
  CHECK_THROWS_AS(read_snapshot((dir / "short.snap").string()), Error);
}

TEST_CASE("simulate on an Alfven state keeps the energy column constant") {
  fs::path dir = scratch("alfven");
  write_file(dir / "run.cfg",
             "command = simulate\nn = 32\ninit = alfven\ninit.amplitude = 0.5\ninit.kmax = 8\n"
             "seed = 3\ndt = 0.01\nt_end = 1\ncadence = 10\nnorms = 1.5/2/2/homogeneous\n"
             "output_dir = " + (dir / "out").string() + "\n");
  CHECK(cli("simulate --config " + (dir / "run.cfg").string(), dir / "log") == 0);
  auto rows = csv_rows(read_file(dir / "out" / "diagnostics.csv"));
  REQUIRE(rows.size() == 12u);
  std::size_t e = column(rows[0], "energy");
  double e0 = std::stod(rows[1][e]);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::abs(std::stod(rows[i][e]) - e0) <= 1e-10);
  CHECK(fs::exists(dir / "out" / "config.txt"));
  CHECK(fs::exists(dir / "out" / "diagnostics.json"));
  CHECK(fs::exists(dir / "out" / "gronwall.json"));
}

TEST_CASE("simulate is deterministic") {
  fs::path dir = scratch("determinism");
  std::string out[2];
  for (int r = 0; r < 2; ++r) {
    fs::path o = dir / ("out" + std::to_string(r));
    write_file(dir / "run.cfg", "n = 32\ninit = taylor_green\ninit.perturb = 0.1\nseed = 5\n"
                                "dt = 0.01\nt_end = 0.2\ncadence = 2\nsnapshot_times = 0.1\n"
                                "norms = 0/inf/inf/homogeneous\noutput_dir = " + o.string() + "\n");
    CHECK(cli("simulate --config " + (dir / "run.cfg").string(), dir / "log") == 0);
    out[r] = drop_first_line(read_file(o / "diagnostics.csv"));
    CHECK(read_file(o / "diagnostics.json") == read_file(dir / "out0" / "diagnostics.json"));
    CHECK(read_file(o / "u_0000010.snap") == read_file(dir / "out0" / "u_0000010.snap"));
  }
  CHECK(out[0] == out[1]);
  auto rows = csv_rows(out[0]);
  std::size_t b = column(rows[0], "blowup_integrand");
  CHECK(std::stod(rows[1][b]) > 0.0);
}

TEST_CASE("simulate rejects a CFL-violating dt") {
  fs::path dir = scratch("cfl");
  write_file(dir / "run.cfg", "n = 64\ninit = orszag_tang\ndt = 0.5\nt_end = 1\noutput_dir = " +
                                  (dir / "out").string() + "\n");
  int code = cli("simulate --config " + (dir / "run.cfg").string(), dir / "log");
  CHECK(code != 0);
  CHECK(code == 2);
  std::string log = read_file(dir / "log");
  CHECK(log.find("CFL") != std::string::npos);
  CHECK(log.find("0.5") != std::string::npos);
}

TEST_CASE("CLI error paths") {
  fs::path dir = scratch("errors");
  CHECK(cli("simulate --config " + (dir / "missing.cfg").string(), dir / "log") == 3);
  write_file(dir / "bad.cfg", "unknown_key = 1\n");
  CHECK(cli("simulate --config " + (dir / "bad.cfg").string(), dir / "log") == 2);
  CHECK(cli("frobnicate", dir / "log") == 2);
  CHECK(cli("simulate", dir / "log") == 2);
  write_file(dir / "verify.cfg", "verify.trials = 2\nverify.resolutions = 32,64\noutput_dir = " +
                                     (dir / "v").string() + "\n");
  CHECK(cli("verify --config " + (dir / "verify.cfg").string(), dir / "log") == 2);
  CHECK(read_file(dir / "log").find("nothing to verify") != std::string::npos);
  CHECK(cli("verify --config " + (dir / "verify.cfg").string() + " --ids unknown-name", dir / "log") == 2);
}

TEST_CASE("verify writes reports") {
  fs::path dir = scratch("verify");
  write_file(dir / "verify.cfg", "verify.ids = bernstein\nverify.trials = 4\nverify.resolutions = 32,64\n"
                                 "verify.kmax = 10\noutput_dir = " + (dir / "out").string() + "\n");
  CHECK(cli("verify --config " + (dir / "verify.cfg").string(), dir / "log") == 0);
  auto j = nlohmann::json::parse(read_file(dir / "out" / "reports.json"));
  CHECK(j.dump().find("bernstein") != std::string::npos);
  auto rows = csv_rows(read_file(dir / "out" / "summary.csv"));
  CHECK(rows.size() == 3u);
}

TEST_CASE("picard table") {
  fs::path dir = scratch("picard");
  write_file(dir / "p.cfg", "n = 32\ninit = random\ninit.amplitude = 0.5\ninit.beta = 4\ninit.kmax = 8\n"
                            "dt = 0.01\nt_end = 0.05\npicard.n_max = 1\noutput_dir = " +
                                (dir / "one").string() + "\n");
  CHECK(cli("picard --config " + (dir / "p.cfg").string(), dir / "log") == 0);
  auto rows = csv_rows(read_file(dir / "one" / "picard.csv"));
  REQUIRE(rows.size() == 2u);
  CHECK(rows[0] == std::vector<std::string>{"n", "difference_norm", "ratio"});
  CHECK(rows[1][0] == "1");
  CHECK(rows[1][2].empty());

  write_file(dir / "q.cfg", "n = 32\ninit = random\ninit.amplitude = 0.5\ninit.beta = 4\ninit.kmax = 8\n"
                            "dt = 0.01\nt_end = 0.1\npicard.n_max = 5\noutput_dir = " +
                                (dir / "five").string() + "\n");
  CHECK(cli("picard --config " + (dir / "q.cfg").string(), dir / "log") == 0);
  rows = csv_rows(read_file(dir / "five" / "picard.csv"));
  REQUIRE(rows.size() == 6u);
  for (std::size_t i = 2; i < rows.size(); ++i) CHECK(std::stod(rows[i][2]) < 1.0);

  write_file(dir / "r.cfg", "n = 32\npicard.n_max = 6\noutput_dir = " + (dir / "r").string() + "\n");
  CHECK(cli("picard --config " + (dir / "r.cfg").string(), dir / "log") == 2);
  CHECK(read_file(dir / "log").find("n_max") != std::string::npos);
}

TEST_CASE("norm and decompose subcommands") {
  fs::path dir = scratch("norm");
  auto g = Grid::create(2, 32);
  Field f = testing::sample(g, 1, [](const double* x, double* o) { o[0] = std::cos(2 * x[0]); });
  write_snapshot((dir / "f.snap").string(), {"cosine", 0.0, f});
  CHECK(cli("norm --field " + (dir / "f.snap").string() + " --s 1 --p 2 --q inf --homogeneous",
            dir / "log") == 0);
  std::string text = read_file(dir / "log");
  auto j = nlohmann::json::parse(text.substr(text.find('{')));
  CHECK(j["field-id"] == "cosine");
  CHECK(j["q"] == "inf");
  CHECK(j["value"].get<double>() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-13));
  CHECK(cli("norm --field " + (dir / "f.snap").string() + " --s 1 --p 1 --q 2", dir / "log") == 2);
  CHECK(cli("norm --field " + (dir / "none.snap").string() + " --s 1 --p 2 --q 2", dir / "log") == 3);

  CHECK(cli("decompose --field " + (dir / "f.snap").string() + " --out " + (dir / "blocks").string(),
            dir / "log") == 0);
  Field sum = read_snapshot((dir / "blocks" / "base.snap").string()).field;
  for (int jj = g->j0(); jj <= g->j_max(); ++jj) {
    fs::path p = dir / "blocks" / ("block_" + std::to_string(jj) + ".snap");
    REQUIRE(fs::exists(p));
    sum = add(sum, read_snapshot(p.string()).field);
  }
  CHECK(testing::max_abs_diff(sum.values(), f.values()) <= 1e-14);
  Field b0 = read_snapshot((dir / "blocks" / "block_0.snap").string()).field;
  CHECK(testing::max_abs_diff(b0.values(), f.values()) <= 1e-14);
}

TEST_CASE("exit code mapping") {
  CHECK(app::exit_code(Error(ErrorCode::io, "x")) == 3);
  CHECK(app::exit_code(Error(ErrorCode::cfl, "x")) == 4);
  CHECK(app::exit_code(Error(ErrorCode::validation, "x")) == 2);
  CHECK(app::exit_code(Error(ErrorCode::out_of_range, "x")) == 2);
}
