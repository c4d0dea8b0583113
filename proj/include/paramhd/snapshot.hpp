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

#include <string>

#include "paramhd/field.hpp"

namespace paramhd {

/// Binary field file, little-endian:
///   char[8]  "PMHDSNAP"
///   u32      version (1)
///   u32      dim, n, components, flags (bit 0: solenoidal)
///   f64      time
///   u32      id length, then that many id bytes
///   f64      values, component-major, row-major within a component
struct Snapshot {
  std::string id;
  double time = 0.0;
  Field field;
};

void write_snapshot(const std::string& path, const Snapshot& snapshot);
Snapshot read_snapshot(const std::string& path);

}  // namespace paramhd
