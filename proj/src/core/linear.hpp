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
#include <span>
#include <vector>

namespace vortexcont {

/// y = Op(x); x and y have the same length and never alias.
using LinearOperator = std::function<void(std::span<const double> x, std::span<double> y)>;

struct GmresOptions {
    double relative_tolerance = 1e-10;
    int restart = 60;
    int max_iterations = 600;
};

struct LinearSolveResult {
    bool converged = false;
    int iterations = 0;
    double relative_residual = 0.0;  // ||b - A x||_2 / ||b||_2, recomputed at exit
};

/// Restarted GMRES with right preconditioning (A M^-1 y = b, x = M^-1 y).
/// `x` holds the initial guess on entry and the solution on exit.
LinearSolveResult gmres(const LinearOperator& apply, const LinearOperator& precondition,
                        std::span<const double> rhs, std::span<double> x,
                        const GmresOptions& options = {});

double norm2(std::span<const double> v);

}  // namespace vortexcont
