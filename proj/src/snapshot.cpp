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

#include "paramhd/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "paramhd/error.hpp"

namespace paramhd {

static_assert(std::endian::native == std::endian::little, "snapshot I/O assumes little endian");

namespace {

constexpr char magic[8] = {'P', 'M', 'H', 'D', 'S', 'N', 'A', 'P'};
constexpr std::uint32_t version = 1;

template <class T>
void put(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::ifstream& in, const std::string& path) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  require(static_cast<bool>(in), ErrorCode::io, "truncated snapshot " + path);
  return v;
}

}  // namespace

void write_snapshot(const std::string& path, const Snapshot& s) {
  require(!s.field.empty(), ErrorCode::invalid_argument, "cannot write an empty field");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(static_cast<bool>(out), ErrorCode::io, "cannot open " + path + " for writing");
  const Grid& g = s.field.grid();
  out.write(magic, sizeof magic);
  put<std::uint32_t>(out, version);
  put<std::uint32_t>(out, g.dim());
  put<std::uint32_t>(out, g.n());
  put<std::uint32_t>(out, s.field.components());
  put<std::uint32_t>(out, s.field.solenoidal() ? 1u : 0u);
  put<double>(out, s.time);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(s.id.size()));
  out.write(s.id.data(), static_cast<std::streamsize>(s.id.size()));
  const auto v = s.field.values();
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
  require(static_cast<bool>(out), ErrorCode::io, "write failed for " + path);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::io, "cannot open snapshot " + path);
  char head[8];
  in.read(head, sizeof head);
  require(in && std::memcmp(head, magic, sizeof magic) == 0, ErrorCode::validation,
          path + " is not a snapshot file");
  const auto ver = get<std::uint32_t>(in, path);
  require(ver == version, ErrorCode::validation,
          "unsupported snapshot version " + std::to_string(ver));
  const auto dim = get<std::uint32_t>(in, path);
  const auto n = get<std::uint32_t>(in, path);
  const auto comps = get<std::uint32_t>(in, path);
  const auto flags = get<std::uint32_t>(in, path);
  Snapshot s;
  s.time = get<double>(in, path);
  const auto len = get<std::uint32_t>(in, path);
  require(len < (1u << 20), ErrorCode::validation, "snapshot id too long");
  s.id.resize(len);
  in.read(s.id.data(), len);
  require(static_cast<bool>(in), ErrorCode::io, "truncated snapshot " + path);
  require(comps >= 1 && comps <= 64, ErrorCode::validation, "bad component count");
  GridPtr grid;
  try {
    grid = Grid::create(static_cast<int>(dim), static_cast<int>(n));
  } catch (const Error& e) {
    fail(ErrorCode::validation, std::string("snapshot header: ") + e.what());
  }
  std::vector<double> values(grid->points() * comps);
  in.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(values.size() * sizeof(double)));
  require(static_cast<bool>(in), ErrorCode::io, "truncated snapshot " + path);
  const bool sol = (flags & 1u) != 0;
  require(!sol || static_cast<int>(comps) == grid->dim(), ErrorCode::validation,
          "solenoidal flag on a field that is not a d-vector");
  s.field = Field(grid, static_cast<int>(comps), std::move(values), sol);
  return s;
}

}  // namespace paramhd
