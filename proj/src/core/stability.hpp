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

// Exact Chern-character arithmetic for the split rank-2 bundle on Sigma x CP1.
// Classes live in the ring spanned by {1, w_S, w_F, w_S w_F} with w_S^2 = w_F^2 = 0
// and the integral of w_S w_F equal to one.

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "core/equation.hpp"

namespace vortexcont {

using Rational = boost::multiprecision::cpp_rational;

/// "p/q" with q > 0, always including the denominator ("5/1").
std::string to_fraction_string(const Rational& q);

/// Parses "p/q" or an integer literal.
Rational parse_fraction(const std::string& text);

struct CohomologyClass {
    Rational unit;   // degree 0
    Rational sigma;  // coefficient of w_S
    Rational fs;     // coefficient of w_F
    Rational top;    // coefficient of w_S w_F

    CohomologyClass& operator+=(const CohomologyClass& o);
    friend CohomologyClass operator+(CohomologyClass a, const CohomologyClass& b) { return a += b; }
    friend CohomologyClass operator*(const CohomologyClass& a, const CohomologyClass& b);
    friend CohomologyClass operator*(const Rational& s, const CohomologyClass& a);
    friend bool operator==(const CohomologyClass&, const CohomologyClass&) = default;

    /// Integral over Sigma x CP1 in cohomology units.
    const Rational& integral() const { return top; }
};

/// exp truncated at top degree.
CohomologyClass exp_class(const CohomologyClass& x);

struct VortexBundleSpec {
    int genus = 0;
    int tau = 4;      // even, positive
    int power_k = 1;  // tensor power of the polarisation
    int r1 = 3;
    int r2 = 2;

    int euler_alpha() const { return 2 - 2 * genus; }
};

/// Throws Error(Config) unless genus >= 0, tau even and positive, power_k >= 1, r1, r2 >= 2.
void validate(const VortexBundleSpec& spec);

struct ChernData {
    CohomologyClass c1_sigma;  // alpha w_S
    CohomologyClass c1_fs;     // 2 w_F
    CohomologyClass omega;     // (tau/2) w_S + 2 w_F
    CohomologyClass todd;
    CohomologyClass c1_e, c1_s;
    Rational ch2_e, ch2_s;  // coefficients of w_S w_F
};

/// Chern data as closed-form coefficients.
ChernData chern_data(const VortexBundleSpec& spec);

enum class Bundle { E, S };

/// chi(X, V (x) L'^k) by expanding sum_i exp(c1(line_i) + k omega) Td termwise,
/// starting from the line-bundle summands rather than from chern_data.
Rational euler_characteristic(const VortexBundleSpec& spec, Bundle which);

/// chi(E) - 2 chi(S) via the termwise difference of the two sides of the
/// inequality chain, using the closed-form Chern data.
Rational inequality_chain_difference(const VortexBundleSpec& spec);

/// power_k (tau - 2) + (alpha - 1) + 2 (r1 - r2).
Rational stability_margin(const VortexBundleSpec& spec);

struct VortexReduction {
    Rational R1, R2, mu;
    Rational a, b, c, d, e, k;  // coefficients for the equation-1 handoff
    bool r2_half_integer = false;
};

VortexReduction reduce_to_vortex(const VortexBundleSpec& spec);

/// The bracketed constant of the squared-curvature equation, written out term by term.
Rational ahe_constant(const VortexBundleSpec& spec);

struct StabilityReport {
    VortexBundleSpec spec;
    ChernData chern;
    Rational chi_e, chi_s;
    Rational chi_difference;  // chi_E - 2 chi_S
    Rational margin;
    bool verdict = false;  // margin > 0
    bool k_tau_alpha_positive = false;  // power_k tau + alpha > 0
    VortexReduction reduction;
    Rational ahe_constant;
    Rational ahe_crosscheck;  // tau chi_E / Vol(X), Vol(X) = tau
    bool ahe_constant_odd = false;
};

/// Computes every quantity and cross-checks the independent routes; throws
/// Error(Internal) on any mismatch.
StabilityReport gieseker_verdict(const VortexBundleSpec& spec);

/// Equation-1 coefficients from the reduction, rounded to double.
GeneralArgs handoff_args(const VortexReduction& r);

}  // namespace vortexcont
