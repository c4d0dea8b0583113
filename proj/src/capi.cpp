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

#include "paramhd/paramhd.h"

#include <cstdlib>
#include <cstring>
#include <iostream>
#include <string>

#include "paramhd/app.hpp"
#include "paramhd/error.hpp"
#include "paramhd/function_spaces.hpp"
#include "paramhd/snapshot.hpp"
#include "paramhd/spectral_ops.hpp"

struct pmhd_grid {
  paramhd::GridPtr grid;
};

struct pmhd_field {
  paramhd::Field field;
  std::string id;
  double time = 0.0;
};

namespace {

thread_local std::string last_error;

pmhd_status status_of(paramhd::ErrorCode code) {
  using paramhd::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument:
      return PMHD_ERR_INVALID_ARGUMENT;
    case ErrorCode::out_of_range:
      return PMHD_ERR_OUT_OF_RANGE;
    case ErrorCode::grid_mismatch:
      return PMHD_ERR_GRID_MISMATCH;
    case ErrorCode::not_solenoidal:
      return PMHD_ERR_NOT_SOLENOIDAL;
    case ErrorCode::validation:
      return PMHD_ERR_VALIDATION;
    case ErrorCode::io:
      return PMHD_ERR_IO;
    case ErrorCode::cfl:
      return PMHD_ERR_CFL;
  }
  return PMHD_FAILED;
}

template <class F>
pmhd_status guard(F&& body) {
  try {
    last_error.clear();
    body();
    return PMHD_OK;
  } catch (const paramhd::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    last_error = e.what();
    return PMHD_FAILED;
  } catch (...) {
    last_error = "unknown error";
    return PMHD_FAILED;
  }
}

void need(const void* p, const char* what) {
  paramhd::require(p != nullptr, paramhd::ErrorCode::invalid_argument,
                   std::string(what) + " must not be NULL");
}

pmhd_field* wrap(paramhd::Field f) {
  auto* out = new pmhd_field;
  out->field = std::move(f);
  return out;
}

}  // namespace

extern "C" {

const char* pmhd_last_error(void) { return last_error.c_str(); }

const char* pmhd_version(void) { return "1.0.0"; }

int pmhd_exit_code(pmhd_status status) {
  switch (status) {
    case PMHD_OK:
    case PMHD_FAILED:
    case PMHD_ERR_VALIDATION:
    case PMHD_ERR_IO:
    case PMHD_ERR_CFL:
      return static_cast<int>(status);
    default:
      return 2;
  }
}

pmhd_status pmhd_grid_create(int dim, int n, pmhd_grid** out) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    auto g = paramhd::Grid::create(dim, n);
    *out = new pmhd_grid{std::move(g)};
  });
}

void pmhd_grid_destroy(pmhd_grid* grid) { delete grid; }

pmhd_status pmhd_grid_info(const pmhd_grid* grid, int* dim, int* n, int* j0, int* j_max) {
  return guard([&] {
    need(grid, "grid");
    if (dim) *dim = grid->grid->dim();
    if (n) *n = grid->grid->n();
    if (j0) *j0 = grid->grid->j0();
    if (j_max) *j_max = grid->grid->j_max();
  });
}

pmhd_status pmhd_field_create(const pmhd_grid* grid, int components, const double* values,
                              int solenoidal, pmhd_field** out) {
  return guard([&] {
    need(grid, "grid");
    need(out, "out");
    *out = nullptr;
    paramhd::require(components >= 1, paramhd::ErrorCode::invalid_argument,
                     "components must be >= 1");
    const std::size_t count = grid->grid->points() * static_cast<std::size_t>(components);
    std::vector<double> v(count, 0.0);
    if (values) std::memcpy(v.data(), values, count * sizeof(double));
    paramhd::Field f(grid->grid, components, std::move(v), false);
    if (solenoidal) f = paramhd::require_solenoidal(f, "field");
    *out = wrap(std::move(f));
  });
}

void pmhd_field_destroy(pmhd_field* field) { delete field; }

pmhd_status pmhd_field_info(const pmhd_field* field, int* dim, int* n, int* components,
                            int* solenoidal) {
  return guard([&] {
    need(field, "field");
    if (dim) *dim = field->field.grid().dim();
    if (n) *n = field->field.grid().n();
    if (components) *components = field->field.components();
    if (solenoidal) *solenoidal = field->field.solenoidal() ? 1 : 0;
  });
}

pmhd_status pmhd_field_values(const pmhd_field* field, double* out, size_t count) {
  return guard([&] {
    need(field, "field");
    need(out, "out");
    const auto v = field->field.values();
    paramhd::require(count >= v.size(), paramhd::ErrorCode::invalid_argument,
                     "output buffer holds " + std::to_string(count) + " values, need " +
                         std::to_string(v.size()));
    std::memcpy(out, v.data(), v.size() * sizeof(double));
  });
}

pmhd_status pmhd_field_load(const char* path, pmhd_field** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = nullptr;
    paramhd::Snapshot s = paramhd::read_snapshot(path);
    auto* f = wrap(std::move(s.field));
    f->id = std::move(s.id);
    f->time = s.time;
    *out = f;
  });
}

pmhd_status pmhd_field_save(const pmhd_field* field, const char* path, const char* id,
                            double time) {
  return guard([&] {
    need(field, "field");
    need(path, "path");
    paramhd::write_snapshot(path, {id ? id : field->id, time, field->field});
  });
}

pmhd_status pmhd_dyadic_block(const pmhd_field* field, int j, pmhd_field** out) {
  return guard([&] {
    need(field, "field");
    need(out, "out");
    *out = nullptr;
    *out = wrap(paramhd::dyadic_block(field->field, j));
  });
}

pmhd_status pmhd_low_pass(const pmhd_field* field, int j, pmhd_field** out) {
  return guard([&] {
    need(field, "field");
    need(out, "out");
    *out = nullptr;
    *out = wrap(paramhd::low_pass(field->field, j));
  });
}

pmhd_status pmhd_lp_norm(const pmhd_field* field, double p, double* out) {
  return guard([&] {
    need(field, "field");
    need(out, "out");
    *out = paramhd::lp_norm(field->field, p);
  });
}

pmhd_status pmhd_tl_norm(const pmhd_field* field, double s, double p, double q, int homogeneous,
                         double* out) {
  return guard([&] {
    need(field, "field");
    need(out, "out");
    *out = paramhd::tl_norm(field->field, paramhd::NormSpec{s, p, q, homogeneous != 0});
  });
}

pmhd_status pmhd_run(const char* command, const char* config_path, const char* ids) {
  if (!command || !config_path) {
    last_error = "command and config path must not be NULL";
    return PMHD_ERR_INVALID_ARGUMENT;
  }
  last_error.clear();
  const int code = paramhd::app::run(command, config_path, ids ? ids : "", std::cerr);
  if (code != 0) last_error = "run exited with code " + std::to_string(code);
  return static_cast<pmhd_status>(code);
}

pmhd_status pmhd_norm_record(const char* snapshot_path, double s, double p, double q,
                             int homogeneous, char** json) {
  return guard([&] {
    need(snapshot_path, "snapshot path");
    need(json, "json");
    *json = nullptr;
    const std::string rec =
        paramhd::app::norm_record(snapshot_path, paramhd::NormSpec{s, p, q, homogeneous != 0});
    char* buf = static_cast<char*>(std::malloc(rec.size() + 1));
    paramhd::require(buf != nullptr, paramhd::ErrorCode::io, "out of memory");
    std::memcpy(buf, rec.c_str(), rec.size() + 1);
    *json = buf;
  });
}

void pmhd_string_free(char* s) { std::free(s); }

pmhd_status pmhd_decompose(const char* snapshot_path, const char* out_dir) {
  return guard([&] {
    need(snapshot_path, "snapshot path");
    need(out_dir, "output directory");
    paramhd::app::decompose(snapshot_path, out_dir);
  });
}

}  // extern "C"
