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
#include <span>
#include <string>

#include <json.hpp>

#include "core/estimates.hpp"
#include "core/solver.hpp"
#include "core/stability.hpp"

namespace vortexcont {

using Json = nlohmann::ordered_json;

Json to_json(const HypothesisFlags& f);
Json to_json(const EstimateReport& r);
Json state_record(std::size_t step, const SolverState& st);
Json to_json(const StabilityReport& r);

/// Empirical C0 bounds, max-s trajectory and degree errors. Throws
/// Error(InvalidArgument) on an empty list.
Json summarize(std::span<const SolverState> states);

/// Writes `value` as indented JSON; Error(Io) if the file cannot be written.
void write_json(const std::filesystem::path& file, const Json& value);

/// Creates `dir` if needed; Error(Io) if that fails.
void ensure_directory(const std::filesystem::path& dir);

/// summary.json and trace.csv in `dir`, plus fields/psi_step_NNNN.csv when
/// emit_fields is set.
void emit_report(const std::filesystem::path& dir, const SurfaceGrid& g,
                 std::span<const SolverState> states, bool emit_fields);

}  // namespace vortexcont
