/*
 * Copyright 2026 The vortexcont Authors
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

#ifndef VORTEXCONT_VORTEXCONT_H
#define VORTEXCONT_VORTEXCONT_H

#include <stddef.h>

#if defined(VC_BUILDING_LIBRARY)
#define VC_API __attribute__((visibility("default")))
#else
#define VC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes. */
typedef enum vc_status {
    VC_OK = 0,
    VC_INVALID_ARGUMENT = 1,
    VC_CONFIG = 2,
    VC_NONCONVERGENCE = 3,
    VC_MONITOR = 4,
    VC_INTERNAL = 5,
    VC_IO = 6
} vc_status;

typedef struct vc_grid vc_grid;
typedef struct vc_bundle vc_bundle;

/* Message for the last failing call on this thread; never NULL. */
VC_API const char* vc_last_error(void);
VC_API const char* vc_version(void);

VC_API vc_status vc_grid_create(int n, vc_grid** out);
VC_API void vc_grid_destroy(vc_grid* grid);
VC_API int vc_grid_n(const vc_grid* grid);
/* Integral of an n*n density against the area form (total area 2 pi). */
VC_API vc_status vc_grid_integrate(const vc_grid* grid, const double* density, size_t len, double* out);

/* Theta background on `grid` with max |phi|^2 equal to cap. */
VC_API vc_status vc_bundle_create(const vc_grid* grid, double cap, vc_bundle** out);
VC_API void vc_bundle_destroy(vc_bundle* bundle);
/* Copies |phi|^2_{h0} at the n*n nodes into out (row-major in y). */
VC_API vc_status vc_bundle_s0(const vc_bundle* bundle, double* out, size_t len);

/* Stability report as JSON. Free the string with vc_string_free. */
VC_API vc_status vc_stability_report(int genus, int tau, int power_k, int r1, int r2, char** json_out);

/*
 * Runs a CLI subcommand ("solve", "path", "roundtrip", "stability", "checks")
 * on a JSON config file. out_dir overrides output.dir when non-NULL;
 * emit_fields != 0 forces field dumps.
 */
VC_API vc_status vc_run(const char* subcommand, const char* config_path, const char* out_dir, int emit_fields);

/* As vc_run, with the config passed as a JSON string. json_out, if non-NULL,
 * receives the main JSON artifact. */
VC_API vc_status vc_run_json(const char* subcommand, const char* config_json, const char* out_dir,
                             int emit_fields, char** json_out);

VC_API void vc_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
