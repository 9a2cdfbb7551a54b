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

// Hypotheses of the a priori estimates as exact flags, and the conclusions as
// monitors evaluated on accepted solver states. The constants in the bounds are
// not constructive; monitors record what is observed and never predict them.

#include <span>
#include <vector>

#include "core/bundle.hpp"
#include "core/equation.hpp"
#include "core/geometry.hpp"

namespace vortexcont {

inline constexpr double kPhiBoundSlack = 1e-8;
inline constexpr double kDegreeTolerance = 1e-8;

struct HypothesisFlags {
    bool b_cd = false;             // b - c d >= 0
    bool b_kctd = false;           // b - (k + c t) d >= 0
    bool de_a = false;             // d e > a
    bool theta0_is_omega = false;  // i Theta0 = omega
    // Left-hand sides, rounded to double for reporting.
    double b_cd_value = 0.0;
    double b_kctd_value = 0.0;
    double de_minus_a = 0.0;
};

/// Evaluates each inequality in exact rational arithmetic on the stored
/// coefficients at the current (alpha, t).
HypothesisFlags check_hypotheses(const VortexParams& p, const LineBundleData& b);

struct Verdict {
    bool pass = false;
    double value = 0.0;
    double limit = 0.0;
};

/// pass iff max s <= d + 1e-8.
Verdict monitor_phi_bound(const LineBundleData& b, const ScalarField& psi, const VortexParams& p);

struct C0Extremes {
    double min = 0.0;
    double max = 0.0;
};

C0Extremes monitor_c0(const ScalarField& psi);

/// pass iff |integral(curvature)/(2 pi) - 1| <= 1e-8.
Verdict monitor_degree(const SurfaceGrid& g, const LineBundleData& b, const ScalarField& psi);

struct Observed {
    double max_s = 0.0;
    double min_psi = 0.0;
    double max_psi = 0.0;
    double degree_error = 0.0;
    double denom_min = 0.0;  // min of a + b t s - c t^2 s^2
};

struct Verdicts {
    bool phi_bound = false;
    bool degree = false;
    bool c0_finite = false;
    bool denominator_positive = false;
};

struct EstimateReport {
    HypothesisFlags flags;
    Observed observed;
    Verdicts verdicts;

    bool monitors_pass() const {
        return verdicts.phi_bound && verdicts.degree && verdicts.c0_finite &&
               verdicts.denominator_positive;
    }
};

EstimateReport evaluate_estimates(const SurfaceGrid& g, const VortexParams& p, const LineBundleData& b,
                                  const ScalarField& psi);

/// Empirical C0 bounds over a sequence of states: the smallest minimum and the
/// largest maximum seen so far.
struct EmpiricalBounds {
    double lower = 0.0;
    double upper = 0.0;
    bool finite = true;
};

EmpiricalBounds empirical_bounds(std::span<const EstimateReport> reports);

}  // namespace vortexcont
