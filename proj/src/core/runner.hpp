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

#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "core/equation.hpp"
#include "core/report.hpp"
#include "core/solver.hpp"
#include "core/stability.hpp"

namespace vortexcont {

struct RoundtripConfig {
    double amplitude = 0.5;
    int kx = 0;
    int ky = 1;
};

struct RunConfig {
    int n = 64;
    std::optional<double> cap;  // default_cap(family) when absent
    std::optional<FamilyArgs> family;
    PathSpec path;
    RoundtripConfig roundtrip;
    std::optional<VortexBundleSpec> stability;
    std::filesystem::path output_dir;
    bool emit_fields = false;
};

/// Validates the document and fills defaults. Unknown keys, wrong types and
/// out-of-range values raise Error(Config).
RunConfig parse_config(const Json& doc);
RunConfig load_config(const std::filesystem::path& file);

enum class Subcommand { Solve, Path, Roundtrip, Stability, Checks };

Subcommand subcommand_from_string(const std::string& name);
const char* to_string(Subcommand s);

struct RunOutcome {
    int exit_code = 0;
    std::string message;
    Json result;  // the main JSON artifact that was written
};

/// Runs one subcommand and writes its artifacts into config.output_dir.
/// Every failure is mapped to an exit code; nothing escapes as an exception.
RunOutcome run(Subcommand sub, const RunConfig& config);

/// Geometry and bundle identity suite on an n x n grid.
Json identity_checks(int n);

/// amplitude * sin(2 pi (kx x + ky y)).
ScalarField roundtrip_perturbation(const SurfaceGrid& g, const RoundtripConfig& rc);

}  // namespace vortexcont
