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
#include <string>

#include "paramhd/config.hpp"
#include "paramhd/error.hpp"
#include "paramhd/initial_data.hpp"

namespace paramhd::app {

/// Process exit codes.
enum Exit : int {
  exit_ok = 0,
  exit_failed = 1,      // verification found a non-finite report or a growth above threshold
  exit_validation = 2,
  exit_io = 3,
  exit_cfl = 4,         // CFL bound broken after the run started
};

int exit_code(const Error& e);

VelocityMagnetic initial_data(const RunConfig& config, const GridPtr& grid);

/// Each driver validates the whole config before computing and returns an
/// exit code; errors are reported on `log`.
int simulate(const RunConfig& config, std::ostream& log);
int picard(const RunConfig& config, std::ostream& log);
int verify(const RunConfig& config, std::ostream& log);

/// Loads `path` and dispatches on `command`. A non-empty `ids` (comma
/// separated) replaces verify.ids.
int run(const std::string& command, const std::string& path, const std::string& ids,
        std::ostream& log);

/// JSON norm record of a snapshot file; throws on bad input.
std::string norm_record(const std::string& snapshot_path, const NormSpec& spec);

/// Writes base.snap (S_j0 f) and block_<j>.snap for every dyadic block.
void decompose(const std::string& snapshot_path, const std::string& out_dir);

}  // namespace paramhd::app
