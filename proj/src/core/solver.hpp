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

#include <functional>
#include <string>
#include <vector>

#include "core/bundle.hpp"
#include "core/equation.hpp"
#include "core/estimates.hpp"
#include "core/geometry.hpp"
#include "core/linear.hpp"

namespace vortexcont {

struct NewtonOptions {
    double tolerance = 1e-10;  // on max |R|
    int max_iterations = 30;
    double damping_floor = 1.0 / (1 << 20);
    GmresOptions linear;
    /// Linear solves that stall above this relative residual abort the step.
    double linear_failure_threshold = 1e-6;
};

struct SolverState {
    ScalarField psi;
    double residual_norm = 0.0;
    int newton_iters = 0;
    double alpha = 0.0;
    double t = 0.0;
    int linear_iterations = 0;
    double worst_linear_residual = 0.0;
    EstimateReport monitors;
};

struct NewtonOutcome {
    bool converged = false;
    SolverState state;        // final iterate, converged or not
    std::string failure;      // empty on success
};

/// Damped Newton at fixed parameters. Never throws on nonconvergence; the
/// outcome says why it stopped.
NewtonOutcome try_newton(const SurfaceGrid& g, const VortexParams& p, const LineBundleData& b,
                         const ScalarField& psi_init, const NewtonOptions& options = {});

/// As try_newton, but throws Error(NonConvergence) with the final norm on failure.
SolverState newton_solve(const SurfaceGrid& g, const VortexParams& p, const LineBundleData& b,
                         const ScalarField& psi_init, const NewtonOptions& options = {});

struct PathPoint {
    double alpha = 0.0;
    double t = 0.0;
};

struct PathSpec {
    std::vector<PathPoint> waypoints;
    double max_step = 0.1;
    double min_step = 1e-4;
    double newton_tol = 1e-10;
    int max_newton_iters = 30;
};

/// Rejects waypoints outside {alpha >= 0, 0 <= t <= 1}, repeated consecutive
/// waypoints and non-positive step bounds.
void validate_path(const PathSpec& spec);

struct PathResult {
    std::vector<SolverState> states;  // accepted states in path order
    bool completed = false;
    std::string failure;  // set when the step size underflowed
    int rejected_steps = 0;
};

/// Called after each accepted state.
using StateObserver = std::function<void(const SolverState&)>;

/// Raises AdmissibilityError("b_cd") if b - c d < 0 at any waypoint.
void gate_hypotheses(const SurfaceGrid& g, const FamilyArgs& args, const LineBundleData& b,
                     const PathSpec& spec);

/// Initial guess for the first waypoint: zero, or for the CYM family the
/// solution of the standard vortex equation with the same tau.
ScalarField family_seed(const SurfaceGrid& g, const FamilyArgs& args, const LineBundleData& b,
                        const NewtonOptions& options);

/// Adaptive continuation along the piecewise-linear waypoint path. The step
/// starts at max_step, halves on failure, doubles after three consecutive
/// successes and never exceeds max_step.
PathResult continue_path(const SurfaceGrid& g, const FamilyArgs& args, const LineBundleData& b,
                         const PathSpec& spec, const ScalarField& seed,
                         const StateObserver& observer = {});

struct RoundtripResult {
    PathResult forward;
    SolverState perturbed;  // endpoint re-solve from the perturbed forward state
    PathResult backward;
    PathResult forward_again;
    double discrepancy = 0.0;  // max |psi_roundtrip - psi_forward| at the endpoint
};

/// Forward to the endpoint, perturb, re-converge, run back to the start and
/// forward again. Throws Error(NonConvergence) if any leg fails.
RoundtripResult uniqueness_roundtrip(const SurfaceGrid& g, const FamilyArgs& args,
                                     const LineBundleData& b, const PathSpec& spec,
                                     const ScalarField& seed, const ScalarField& perturbation);

}  // namespace vortexcont
