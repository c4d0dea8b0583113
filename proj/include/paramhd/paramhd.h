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

#ifndef PARAMHD_PARAMHD_H
#define PARAMHD_PARAMHD_H

#include <stddef.h>

#if defined(PARAMHD_BUILDING_LIBRARY)
#define PMHD_API __attribute__((visibility("default")))
#else
#define PMHD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct pmhd_grid pmhd_grid;
typedef struct pmhd_field pmhd_field;

/* Values 0-4 double as process exit codes. */
typedef enum pmhd_status {
  PMHD_OK = 0,
  PMHD_FAILED = 1, /* verification failed, or an unexpected internal error */
  PMHD_ERR_VALIDATION = 2,
  PMHD_ERR_IO = 3,
  PMHD_ERR_CFL = 4,
  PMHD_ERR_INVALID_ARGUMENT = 5,
  PMHD_ERR_OUT_OF_RANGE = 6,
  PMHD_ERR_GRID_MISMATCH = 7,
  PMHD_ERR_NOT_SOLENOIDAL = 8
} pmhd_status;

/* Message for the last failing call on this thread; "" after success. */
PMHD_API const char* pmhd_last_error(void);
PMHD_API const char* pmhd_version(void);
/* Maps any status to the process exit code 0-4. */
PMHD_API int pmhd_exit_code(pmhd_status status);

PMHD_API pmhd_status pmhd_grid_create(int dim, int n, pmhd_grid** out);
PMHD_API void pmhd_grid_destroy(pmhd_grid* grid);
PMHD_API pmhd_status pmhd_grid_info(const pmhd_grid* grid, int* dim, int* n, int* j0,
                                    int* j_max);

/* values: components * n^dim doubles, component-major; NULL gives zeros. */
PMHD_API pmhd_status pmhd_field_create(const pmhd_grid* grid, int components,
                                       const double* values, int solenoidal, pmhd_field** out);
PMHD_API void pmhd_field_destroy(pmhd_field* field);
PMHD_API pmhd_status pmhd_field_info(const pmhd_field* field, int* dim, int* n,
                                     int* components, int* solenoidal);
PMHD_API pmhd_status pmhd_field_values(const pmhd_field* field, double* out, size_t count);
PMHD_API pmhd_status pmhd_field_load(const char* path, pmhd_field** out);
PMHD_API pmhd_status pmhd_field_save(const pmhd_field* field, const char* path, const char* id,
                                     double time);

PMHD_API pmhd_status pmhd_dyadic_block(const pmhd_field* field, int j, pmhd_field** out);
PMHD_API pmhd_status pmhd_low_pass(const pmhd_field* field, int j, pmhd_field** out);
PMHD_API pmhd_status pmhd_lp_norm(const pmhd_field* field, double p, double* out);
PMHD_API pmhd_status pmhd_tl_norm(const pmhd_field* field, double s, double p, double q,
                                  int homogeneous, double* out);

/* command: "simulate", "picard" or "verify". ids may be NULL; otherwise it
   replaces verify.ids. The return value is the exit code of the run. */
PMHD_API pmhd_status pmhd_run(const char* command, const char* config_path, const char* ids);

/* JSON norm record of a snapshot. The string is owned by the caller and
   released with pmhd_string_free. */
PMHD_API pmhd_status pmhd_norm_record(const char* snapshot_path, double s, double p, double q,
                                      int homogeneous, char** json);
PMHD_API void pmhd_string_free(char* s);

PMHD_API pmhd_status pmhd_decompose(const char* snapshot_path, const char* out_dir);

#ifdef __cplusplus
}
#endif

#endif
