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

#include <doctest.h>

#include <cmath>

#include "core/equation.hpp"
#include "core/error.hpp"
#include "support/oracles.hpp"

using namespace vortexcont;

namespace {
ScalarField smooth(const SurfaceGrid& g, double amp, int p, int q, double phase) {
    return ScalarField::sample(g, FieldKind::Function, [=](double x, double y) {
        return amp * std::sin(kTwoPi * (p * x + q * y) + phase);
    });
}

// The equation before elimination: Theta D - (d - s)(W + t k |grad s|^2/(4 pi s)).
ScalarField uneliminated_residual(const SurfaceGrid& g, const VortexParams& p, const LineBundleData& b,
                                  const ScalarField& psi) {
    const auto& c = p.coef;
    const ScalarField s = s_of_psi(b, psi);
    const ScalarField theta = curvature_density(g, b, psi);
    const ScalarField sx = gradient_x(g, s), sy = gradient_y(g, s);
    ScalarField r(g, FieldKind::TwoFormDensity);
    for (std::size_t k = 0; k < r.size(); ++k) {
        const double sv = s[k];
        const double D = c.a + c.b * p.t * sv - c.c * p.t * p.t * sv * sv;
        const double G = (sx[k] * sx[k] + sy[k] * sy[k]) / (4.0 * oracle::pi * sv);
        r[k] = theta[k] * D - (c.d - sv) * (p.source[k] + p.t * c.k * G);
    }
    return r;
}
}  // namespace

TEST_CASE("family coefficient maps") {
    const Coefficients v = family_coefficients(VbmaArgs{3, 2}, 0.0);
    CHECK(v.a == 24.0);
    CHECK(v.b == 2.0);
    CHECK(v.c == 1.0);
    CHECK(v.d == 1.0);
    CHECK(v.e == 34.0);
    CHECK(v.k == 1.0);

    const Coefficients br = family_coefficients(BradlowArgs{6.0}, 0.0);
    CHECK(br.a == 2.0);
    CHECK(br.d == 6.0);
    CHECK(br.e == 1.0);
    CHECK(br.b + br.c + br.k == 0.0);

    const double alpha = 1.5;
    const double fp2 = 4.0 * oracle::pi * oracle::pi;
    const Coefficients cy = family_coefficients(CymArgs{4.0, -1.0}, alpha);
    CHECK(cy.a == doctest::Approx(8.0 + 2.0 * 4.0 * alpha * (-2.0 - 2.0) / fp2));
    CHECK(cy.b == doctest::Approx(4.0 * alpha / fp2));
    CHECK(cy.c == doctest::Approx(alpha / (2.0 * fp2)));
    CHECK(cy.k == cy.c);
    CHECK(cy.e == 4.0);
    CHECK(cy.d == 4.0);
}

TEST_CASE("CYM alpha limit") {
    CHECK(cym_alpha_limit(CymArgs{4.0, -1.0}) == doctest::Approx(oracle::pi * oracle::pi).epsilon(1e-14));
    CHECK(cym_admissibility(CymArgs{4.0, -1.0}, 9.8) > 0.0);
    CHECK(cym_admissibility(CymArgs{4.0, -1.0}, 9.9) < 0.0);
    CHECK_THROWS_AS(family_coefficients(CymArgs{4.0, -1.0}, 10.0), AdmissibilityError);
    CHECK_THROWS_AS(family_coefficients(CymArgs{4.0, 2.0}, 1.0), AdmissibilityError);
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(family_coefficients(VbmaArgs{2, 2}, 0.0), Error);
    CHECK_THROWS_AS(family_coefficients(VbmaArgs{3, 1}, 0.0), Error);
    CHECK_THROWS_AS(family_coefficients(BradlowArgs{2.0}, 0.0), Error);
    CHECK_THROWS_AS(family_coefficients(GeneralArgs{1, -1, 0, 1, 1, 0}, 0.0), Error);
    CHECK_THROWS_AS(family_coefficients(VbmaArgs{3, 2}, -0.1), Error);
    CHECK(family_from_string("vbma") == FamilyTag::Vbma);
    CHECK_THROWS_AS(family_from_string("nope"), Error);
}

TEST_CASE("u construction makes psi = 0 exact at t = 0") {
    const SurfaceGrid g(32);
    for (const FamilyArgs& args : std::initializer_list<FamilyArgs>{
             VbmaArgs{3, 2}, BradlowArgs{4.0}, CymArgs{4.0, -1.0}, GeneralArgs{2, 1, 0.5, 1, 5, 0.3}}) {
        const LineBundleData b = make_background(g, default_cap(args));
        const VortexParams p = make_params(g, args, b, 0.5, 0.0);
        CHECK(residual(g, p, b, ScalarField(g, FieldKind::Function)).max_abs() < 1e-12);
    }
}

TEST_CASE("background must stay below d") {
    const SurfaceGrid g(16);
    const LineBundleData b = make_background(g, 1.0);
    CHECK_THROWS_AS(make_params(g, VbmaArgs{3, 2}, b, 0.0, 0.0), AdmissibilityError);
    CHECK_THROWS_AS(make_params(g, VbmaArgs{3, 2}, make_background(g, 0.5), 0.0, 1.5), Error);
}

TEST_CASE("eliminated residual equals the original form away from the zero") {
    const SurfaceGrid g(128);
    const LineBundleData b = make_background(g, 0.5);
    const ScalarField psi = smooth(g, 0.2, 1, 1, 0.4) + smooth(g, 0.1, 2, -1, 1.0);
    for (double t : {0.3, 1.0}) {
        const VortexParams p = make_params(g, VbmaArgs{3, 2}, b, 0.0, t);
        const ScalarField r = residual(g, p, b, psi);
        const ScalarField ref = uneliminated_residual(g, p, b, psi);
        const ScalarField s = s_of_psi(b, psi);
        double err = 0.0;
        for (std::size_t k = 0; k < r.size(); ++k) {
            if (s[k] > 0.01 * s.max()) {
                err = std::max(err, std::abs(r[k] - ref[k]));
            }
        }
        CHECK(err < 1e-6);
    }
}

TEST_CASE("jacobian matches central differences") {
    const SurfaceGrid g(32);
    auto rng = oracle::rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const FamilyArgs& args : std::initializer_list<FamilyArgs>{VbmaArgs{4, 2}, CymArgs{4.0, -1.0}}) {
        const bool cym = std::holds_alternative<CymArgs>(args);
        const LineBundleData b = make_background(g, default_cap(args));
        const VortexParams p = make_params(g, args, b, cym ? 3.0 : 0.0, cym ? 1.0 : 0.7);
        for (int trial = 0; trial < 4; ++trial) {
            const ScalarField psi = smooth(g, 0.3 * u(rng), 1, 2, u(rng)) + smooth(g, 0.2 * u(rng), 3, 0, u(rng));
            const ScalarField dir = smooth(g, 1.0, 2, 1, u(rng)) + smooth(g, 0.5, 0, 1, u(rng));
            const double h = 1e-5;
            const ScalarField fd =
                (residual(g, p, b, psi + h * dir) - residual(g, p, b, psi - h * dir)) * (0.5 / h);
            const ScalarField jv = jacobian_apply(g, p, b, psi, dir);
            CHECK((jv - fd).max_abs() <= 1e-6 * jv.max_abs());
        }
    }
}

TEST_CASE("manufactured source zeroes the residual") {
    const SurfaceGrid g(64);
    const LineBundleData b = make_background(g, 0.5);
    const ScalarField star = smooth(g, 0.1, 1, 0, 0.0);
    const VortexParams p0 = make_params(g, VbmaArgs{3, 2}, b, 0.0, 1.0);
    const VortexParams p = with_source(p0, manufactured_source(g, p0, b, star));
    CHECK(residual(g, p, b, star).max_abs() < 1e-12);
    CHECK(residual(g, p, b, ScalarField(g, FieldKind::Function)).max_abs() > 1e-3);
}

TEST_CASE("denominator breakdown is reported") {
    const SurfaceGrid g(16);
    const LineBundleData b = make_background(g, 0.5);
    const VortexParams p = make_params(g, GeneralArgs{0.1, 0, 5, 1, 1, 0}, b, 0.0, 1.0);
    // s = 0.5 e^{-psi} with psi = -1 pushes c t^2 s^2 past a.
    CHECK_THROWS_AS(residual(g, p, b, ScalarField(g, FieldKind::Function, -1.0)), DenominatorError);
}
