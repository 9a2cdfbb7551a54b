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

#include "vortexcont/vortexcont.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "core/bundle.hpp"
#include "core/error.hpp"
#include "core/geometry.hpp"
#include "core/report.hpp"
#include "core/runner.hpp"
#include "core/stability.hpp"

struct vc_grid {
    vortexcont::SurfaceGrid grid;
};

struct vc_bundle {
    vortexcont::SurfaceGrid grid;
    vortexcont::LineBundleData data;
};

namespace {

thread_local std::string last_error;

vc_status set_error(vc_status status, const std::string& message) {
    last_error = message;
    return status;
}

template <typename F>
vc_status guarded(F&& body) {
    try {
        last_error.clear();
        return body();
    } catch (const vortexcont::Error& e) {
        return set_error(static_cast<vc_status>(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return set_error(VC_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return set_error(VC_INTERNAL, e.what());
    }
}

char* duplicate(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

vc_status finish_run(vortexcont::Subcommand sub, vortexcont::RunConfig config, const char* out_dir,
                     int emit_fields, char** json_out) {
    if (out_dir != nullptr) {
        config.output_dir = out_dir;
    }
    if (emit_fields != 0) {
        config.emit_fields = true;
    }
    const vortexcont::RunOutcome out = vortexcont::run(sub, config);
    if (json_out != nullptr) {
        *json_out = duplicate(out.result.dump(2));
    }
    if (out.exit_code != 0) {
        return set_error(static_cast<vc_status>(out.exit_code), out.message);
    }
    return VC_OK;
}

}  // namespace

extern "C" {

const char* vc_last_error(void) { return last_error.c_str(); }

const char* vc_version(void) { return "0.1.0"; }

vc_status vc_grid_create(int n, vc_grid** out) {
    if (out == nullptr) {
        return set_error(VC_INVALID_ARGUMENT, "out is NULL");
    }
    *out = nullptr;
    return guarded([&] {
        *out = new vc_grid{vortexcont::SurfaceGrid(n)};
        return VC_OK;
    });
}

void vc_grid_destroy(vc_grid* grid) { delete grid; }

int vc_grid_n(const vc_grid* grid) { return grid == nullptr ? 0 : grid->grid.n(); }

vc_status vc_grid_integrate(const vc_grid* grid, const double* density, size_t len, double* out) {
    if (grid == nullptr || density == nullptr || out == nullptr) {
        return set_error(VC_INVALID_ARGUMENT, "NULL argument");
    }
    return guarded([&] {
        const vortexcont::ScalarField f(grid->grid, vortexcont::FieldKind::TwoFormDensity,
                                        std::vector<double>(density, density + len));
        *out = vortexcont::integrate(grid->grid, f);
        return VC_OK;
    });
}

vc_status vc_bundle_create(const vc_grid* grid, double cap, vc_bundle** out) {
    if (grid == nullptr || out == nullptr) {
        return set_error(VC_INVALID_ARGUMENT, "NULL argument");
    }
    *out = nullptr;
    return guarded([&] {
        *out = new vc_bundle{grid->grid, vortexcont::make_background(grid->grid, cap)};
        return VC_OK;
    });
}

void vc_bundle_destroy(vc_bundle* bundle) { delete bundle; }

vc_status vc_bundle_s0(const vc_bundle* bundle, double* out, size_t len) {
    if (bundle == nullptr || out == nullptr) {
        return set_error(VC_INVALID_ARGUMENT, "NULL argument");
    }
    const auto v = bundle->data.s0.values();
    if (len != v.size()) {
        return set_error(VC_INVALID_ARGUMENT, "buffer length must be n*n");
    }
    std::copy(v.begin(), v.end(), out);
    return VC_OK;
}

vc_status vc_stability_report(int genus, int tau, int power_k, int r1, int r2, char** json_out) {
    if (json_out == nullptr) {
        return set_error(VC_INVALID_ARGUMENT, "json_out is NULL");
    }
    *json_out = nullptr;
    return guarded([&] {
        const vortexcont::VortexBundleSpec spec{genus, tau, power_k, r1, r2};
        *json_out = duplicate(vortexcont::to_json(vortexcont::gieseker_verdict(spec)).dump(2));
        return VC_OK;
    });
}

vc_status vc_run(const char* subcommand, const char* config_path, const char* out_dir, int emit_fields) {
    if (subcommand == nullptr || config_path == nullptr) {
        return set_error(VC_INVALID_ARGUMENT, "NULL argument");
    }
    return guarded([&] {
        const auto sub = vortexcont::subcommand_from_string(subcommand);
        return finish_run(sub, vortexcont::load_config(config_path), out_dir, emit_fields, nullptr);
    });
}

vc_status vc_run_json(const char* subcommand, const char* config_json, const char* out_dir, int emit_fields,
                      char** json_out) {
    if (subcommand == nullptr || config_json == nullptr) {
        return set_error(VC_INVALID_ARGUMENT, "NULL argument");
    }
    if (json_out != nullptr) {
        *json_out = nullptr;
    }
    return guarded([&] {
        const auto sub = vortexcont::subcommand_from_string(subcommand);
        vortexcont::Json doc;
        try {
            doc = vortexcont::Json::parse(config_json);
        } catch (const nlohmann::json::parse_error& e) {
            vortexcont::fail(vortexcont::ErrorCode::Config, std::string("config is not valid JSON: ") + e.what());
        }
        return finish_run(sub, vortexcont::parse_config(doc), out_dir, emit_fields, json_out);
    });
}

void vc_string_free(char* s) { std::free(s); }

}  // extern "C"
