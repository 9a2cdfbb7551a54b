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

#include "core/estimates.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>

namespace vortexcont {

namespace {
using Rational = boost::multiprecision::cpp_rational;

// Every finite double is a dyadic rational; this conversion is exact.
Rational exact(double v) { return Rational(v); }
}  // namespace

HypothesisFlags check_hypotheses(const VortexParams& p, const LineBundleData& b) {
    const auto& c = p.coef;
    const Rational a = exact(c.a), bb = exact(c.b), cc = exact(c.c), d = exact(c.d), e = exact(c.e),
                   k = exact(c.k), t = exact(p.t);
    const Rational b_cd = bb - cc * d;
    const Rational b_kctd = bb - (k + cc * t) * d;
    const Rational de_a = d * e - a;

    HypothesisFlags f;
    f.b_cd = b_cd >= 0;
    f.b_kctd = b_kctd >= 0;
    f.de_a = de_a > 0;
    f.b_cd_value = static_cast<double>(b_cd);
    f.b_kctd_value = static_cast<double>(b_kctd);
    f.de_minus_a = static_cast<double>(de_a);
    auto th = b.theta0.values();
    f.theta0_is_omega = std::all_of(th.begin(), th.end(), [](double v) { return v == 1.0; });
    return f;
}

Verdict monitor_phi_bound(const LineBundleData& b, const ScalarField& psi, const VortexParams& p) {
    const double max_s = s_of_psi(b, psi).max();
    const double limit = p.coef.d + kPhiBoundSlack;
    return {max_s <= limit, max_s, limit};
}

C0Extremes monitor_c0(const ScalarField& psi) { return {psi.min(), psi.max()}; }

Verdict monitor_degree(const SurfaceGrid& g, const LineBundleData& b, const ScalarField& psi) {
    const double degree = integrate(g, curvature_density(g, b, psi)) / kTwoPi;
    const double err = std::abs(degree - static_cast<double>(b.degree));
    // NaN fails the comparison and therefore the monitor.
    return {err <= kDegreeTolerance, std::isnan(err) ? HUGE_VAL : err, kDegreeTolerance};
}

EstimateReport evaluate_estimates(const SurfaceGrid& g, const VortexParams& p, const LineBundleData& b,
                                  const ScalarField& psi) {
    EstimateReport r;
    r.flags = check_hypotheses(p, b);

    const Verdict phi = monitor_phi_bound(b, psi, p);
    const C0Extremes c0 = monitor_c0(psi);
    const Verdict deg = monitor_degree(g, b, psi);
    const ScalarField denom = denominator_field(p, s_of_psi(b, psi));

    r.observed.max_s = phi.value;
    r.observed.min_psi = c0.min;
    r.observed.max_psi = c0.max;
    r.observed.degree_error = deg.value;
    r.observed.denom_min = denom.min();

    r.verdicts.phi_bound = phi.pass;
    r.verdicts.degree = deg.pass;
    r.verdicts.c0_finite = std::isfinite(c0.min) && std::isfinite(c0.max) && psi.all_finite();
    r.verdicts.denominator_positive = r.observed.denom_min > 0.0;
    return r;
}

EmpiricalBounds empirical_bounds(std::span<const EstimateReport> reports) {
    EmpiricalBounds out;
    if (reports.empty()) {
        return out;
    }
    out.lower = reports.front().observed.min_psi;
    out.upper = reports.front().observed.max_psi;
    for (const auto& r : reports) {
        out.lower = std::min(out.lower, r.observed.min_psi);
        out.upper = std::max(out.upper, r.observed.max_psi);
        out.finite = out.finite && r.verdicts.c0_finite;
    }
    out.finite = out.finite && std::isfinite(out.lower) && std::isfinite(out.upper);
    return out;
}

}  // namespace vortexcont
