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

#include "core/stability.hpp"

#include <array>

#include "core/error.hpp"

namespace vortexcont {

using boost::multiprecision::cpp_int;

std::string to_fraction_string(const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

Rational parse_fraction(const std::string& text) {
    try {
        const auto slash = text.find('/');
        if (slash == std::string::npos) {
            return Rational(cpp_int(text));
        }
        const cpp_int den(text.substr(slash + 1));
        if (den == 0) {
            fail(ErrorCode::InvalidArgument, "zero denominator in '" + text + "'");
        }
        return Rational(cpp_int(text.substr(0, slash)), den);
    } catch (const std::runtime_error& e) {
        if (dynamic_cast<const Error*>(&e) != nullptr) {
            throw;
        }
        fail(ErrorCode::InvalidArgument, "not a fraction: '" + text + "'");
    }
}

CohomologyClass& CohomologyClass::operator+=(const CohomologyClass& o) {
    unit += o.unit;
    sigma += o.sigma;
    fs += o.fs;
    top += o.top;
    return *this;
}

CohomologyClass operator*(const CohomologyClass& a, const CohomologyClass& b) {
    CohomologyClass r;
    r.unit = a.unit * b.unit;
    r.sigma = a.unit * b.sigma + a.sigma * b.unit;
    r.fs = a.unit * b.fs + a.fs * b.unit;
    r.top = a.unit * b.top + a.top * b.unit + a.sigma * b.fs + a.fs * b.sigma;
    return r;
}

CohomologyClass operator*(const Rational& s, const CohomologyClass& a) {
    return {s * a.unit, s * a.sigma, s * a.fs, s * a.top};
}

CohomologyClass exp_class(const CohomologyClass& x) {
    // x = x0 + n with n nilpotent of order 3: exp(x) = e^x0 (1 + n + n^2/2).
    if (x.unit != 0) {
        fail(ErrorCode::InvalidArgument, "exp_class needs a class without degree-0 part");
    }
    const CohomologyClass one{1, 0, 0, 0};
    return one + x + Rational(1, 2) * (x * x);
}

void validate(const VortexBundleSpec& s) {
    if (s.genus < 0) {
        fail(ErrorCode::Config, "genus must be >= 0");
    }
    if (s.tau <= 0 || s.tau % 2 != 0) {
        fail(ErrorCode::Config, "tau must be an even positive integer, got " + std::to_string(s.tau));
    }
    if (s.power_k < 1) {
        fail(ErrorCode::Config, "power_k must be >= 1");
    }
    if (s.r1 < 2 || s.r2 < 2) {
        fail(ErrorCode::Config, "r1 and r2 must be >= 2");
    }
}

namespace {
CohomologyClass cls(const Rational& unit, const Rational& sigma, const Rational& fs, const Rational& top) {
    return {unit, sigma, fs, top};
}

// Line summands of E: (r1+1) L boxtimes r2 O(2) and r1 L boxtimes (r2+1) O(2).
std::array<CohomologyClass, 2> line_summands(const VortexBundleSpec& s) {
    return {cls(0, s.r1 + 1, 2 * s.r2, 0), cls(0, s.r1, 2 * (s.r2 + 1), 0)};
}
}  // namespace

ChernData chern_data(const VortexBundleSpec& s) {
    validate(s);
    const int alpha = s.euler_alpha();
    ChernData c;
    c.c1_sigma = cls(0, alpha, 0, 0);
    c.c1_fs = cls(0, 0, 2, 0);
    c.omega = cls(0, Rational(s.tau, 2), 2, 0);
    c.todd = cls(1, 0, 0, 0) + Rational(1, 2) * c.c1_sigma + Rational(1, 2) * c.c1_fs +
             Rational(1, 4) * (c.c1_sigma * c.c1_fs);
    c.c1_e = cls(0, 2 * s.r1 + 1, 4 * s.r2 + 2, 0);
    c.c1_s = cls(0, s.r1 + 1, 2 * s.r2, 0);
    c.ch2_e = 2 * ((s.r1 + 1) * s.r2 + s.r1 * (s.r2 + 1));
    c.ch2_s = 2 * s.r2 * (s.r1 + 1);
    return c;
}

Rational euler_characteristic(const VortexBundleSpec& s, Bundle which) {
    validate(s);
    const int alpha = s.euler_alpha();
    const CohomologyClass omega = cls(0, Rational(s.tau, 2), 2, 0);
    const CohomologyClass td_sigma = cls(1, 0, 0, 0) + cls(0, Rational(alpha, 2), 0, 0);
    const CohomologyClass td_fs = cls(1, 0, 0, 0) + cls(0, 0, 1, 0);
    const CohomologyClass todd = td_sigma * td_fs;
    const Rational k(s.power_k);

    const auto lines = line_summands(s);
    const std::size_t count = which == Bundle::E ? 2 : 1;
    CohomologyClass ch;
    for (std::size_t i = 0; i < count; ++i) {
        ch += exp_class(lines[i] + k * omega);
    }
    return (ch * todd).integral();
}

Rational inequality_chain_difference(const VortexBundleSpec& s) {
    const ChernData c = chern_data(s);
    const Rational k(s.power_k);
    auto integral = [](const CohomologyClass& a, const CohomologyClass& b) { return (a * b).integral(); };
    const Rational rhs = integral(k * c.omega, c.c1_e) + Rational(1, 2) * integral(c.c1_sigma, c.c1_e) +
                         Rational(1, 2) * integral(c.c1_fs, c.c1_e) + c.ch2_e;
    const Rational lhs = 2 * integral(k * c.omega, c.c1_s) + integral(c.c1_sigma, c.c1_s) +
                         integral(c.c1_fs, c.c1_s) + 2 * c.ch2_s;
    // Rank-weighted terms (Todd top, k^2 omega^2, k omega Td) cancel between
    // chi(E) and 2 chi(S); only the first-Chern and ch2 terms survive.
    return rhs - lhs;
}

Rational stability_margin(const VortexBundleSpec& s) {
    validate(s);
    return Rational(s.power_k * (s.tau - 2) + (s.euler_alpha() - 1) + 2 * (s.r1 - s.r2));
}

VortexReduction reduce_to_vortex(const VortexBundleSpec& s) {
    validate(s);
    VortexReduction r;
    r.R1 = Rational(s.r1) + Rational(s.power_k * s.tau + s.euler_alpha(), 2);
    r.R2 = Rational(s.r2) + Rational(s.power_k) + Rational(1, 2);
    r.mu = 2 * (r.R2 * (r.R1 + 1) + r.R1 * (r.R2 + 1));
    r.a = 2 * r.R2 * (2 + 2 * r.R2);
    r.b = 2;
    r.c = 1;
    r.d = 1;
    r.e = r.mu;
    r.k = 1;
    r.r2_half_integer = denominator(r.R2) == 2;
    return r;
}

Rational ahe_constant(const VortexBundleSpec& s) {
    validate(s);
    const cpp_int alpha = s.euler_alpha(), k = s.power_k, tau = s.tau, r1 = s.r1, r2 = s.r2;
    const cpp_int first = alpha + 2 * alpha * k + k * tau + k * (tau * (2 * r2 + 1) + 2 * (2 * r1 + 1));
    const cpp_int second =
        alpha * (2 * r2 + 1) + 2 * r1 + 1 + 2 * k * k * tau + 2 * (r1 * (r2 + 1) + r2 * (r1 + 1));
    return Rational(first + second);
}

StabilityReport gieseker_verdict(const VortexBundleSpec& s) {
    validate(s);
    StabilityReport rep;
    rep.spec = s;
    rep.chern = chern_data(s);
    rep.chi_e = euler_characteristic(s, Bundle::E);
    rep.chi_s = euler_characteristic(s, Bundle::S);
    rep.chi_difference = rep.chi_e - 2 * rep.chi_s;
    rep.margin = stability_margin(s);
    rep.reduction = reduce_to_vortex(s);
    rep.ahe_constant = ahe_constant(s);
    const Rational volume(s.tau);
    rep.ahe_crosscheck = Rational(s.tau) * rep.chi_e / volume;

    auto mismatch = [&](const std::string& what) {
        fail(ErrorCode::Internal, "stability cross-check failed: " + what);
    };
    // The summands must reproduce the closed-form Chern data.
    const auto lines = line_summands(s);
    if (lines[0] + lines[1] != rep.chern.c1_e || lines[0] != rep.chern.c1_s) {
        mismatch("first Chern classes");
    }
    if ((Rational(1, 2) * (lines[0] * lines[0] + lines[1] * lines[1])).top != rep.chern.ch2_e ||
        (Rational(1, 2) * (lines[0] * lines[0])).top != rep.chern.ch2_s) {
        mismatch("second Chern characters");
    }
    if (rep.chi_difference != rep.margin) {
        mismatch("chi_E - 2 chi_S = " + to_fraction_string(rep.chi_difference) + " but margin = " +
                 to_fraction_string(rep.margin));
    }
    if (inequality_chain_difference(s) != rep.margin) {
        mismatch("inequality chain");
    }
    if (rep.reduction.R1 - rep.reduction.R2 != rep.margin / 2) {
        mismatch("R1 - R2 != margin / 2");
    }
    if (rep.ahe_crosscheck != rep.ahe_constant) {
        mismatch("curvature constant " + to_fraction_string(rep.ahe_constant) + " vs tau chi_E / Vol = " +
                 to_fraction_string(rep.ahe_crosscheck));
    }
    rep.verdict = rep.margin > 0;
    if (rep.verdict != (rep.chi_difference > 0) || rep.verdict != (rep.reduction.R1 > rep.reduction.R2)) {
        mismatch("verdict equivalence");
    }
    rep.k_tau_alpha_positive = s.power_k * s.tau + s.euler_alpha() > 0;
    rep.ahe_constant_odd =
        denominator(rep.ahe_constant) == 1 && (numerator(rep.ahe_constant) % 2) != 0;
    return rep;
}

GeneralArgs handoff_args(const VortexReduction& r) {
    auto d = [](const Rational& q) { return static_cast<double>(q); };
    return {d(r.a), d(r.b), d(r.c), d(r.d), d(r.e), d(r.k)};
}

}  // namespace vortexcont
