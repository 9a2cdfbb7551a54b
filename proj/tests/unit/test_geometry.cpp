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
#include <sstream>

#include "core/error.hpp"
#include "core/geometry.hpp"
#include "support/oracles.hpp"

using namespace vortexcont;

namespace {
ScalarField mode(const SurfaceGrid& g, int p, int q, double phase = 0.0) {
    return ScalarField::sample(g, FieldKind::Function, [=](double x, double y) {
        return std::cos(kTwoPi * (p * x + q * y) + phase);
    });
}
}  // namespace

TEST_CASE("grid rejects odd or tiny sizes") {
    CHECK_THROWS_AS(SurfaceGrid(7), Error);
    CHECK_THROWS_AS(SurfaceGrid(6), Error);
    CHECK_NOTHROW(SurfaceGrid(8));
    try {
        SurfaceGrid bad(9);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Config);
    }
}

TEST_CASE("area of the torus is 2 pi") {
    const SurfaceGrid g(16);
    CHECK(integrate(g, ScalarField(g, FieldKind::TwoFormDensity, 1.0)) == doctest::Approx(2.0 * oracle::pi).epsilon(1e-15));
}

TEST_CASE("laplacian of Fourier modes") {
    const SurfaceGrid g(32);
    for (auto [p, q] : {std::pair{1, 0}, {0, 3}, {2, -5}, {7, 7}}) {
        const ScalarField f = mode(g, p, q, 0.3);
        const ScalarField lap = laplacian(g, f);
        const double lambda = -4.0 * oracle::pi * oracle::pi * (p * p + q * q);
        double err = 0.0;
        for (std::size_t k = 0; k < f.size(); ++k) {
            err = std::max(err, std::abs(lap[k] - lambda * f[k]));
        }
        CHECK(err <= 1e-10 * std::abs(lambda));
        const ScalarField dd = ddbar_density(g, f);
        CHECK(dd.kind() == FieldKind::TwoFormDensity);
        CHECK(std::abs(dd[5] - lap[5] / (4.0 * oracle::pi)) <= 1e-12 * std::abs(lambda));
    }
}

TEST_CASE("gradient of a smooth function matches the analytic derivative") {
    const SurfaceGrid g(64);
    const ScalarField f = ScalarField::sample(g, FieldKind::Function, [](double x, double y) {
        return std::exp(std::sin(2.0 * oracle::pi * x)) * std::cos(2.0 * oracle::pi * y);
    });
    const ScalarField fx = gradient_x(g, f);
    const ScalarField fy = gradient_y(g, f);
    double ex = 0.0, ey = 0.0;
    for (int j = 0; j < g.n(); ++j) {
        for (int i = 0; i < g.n(); ++i) {
            const double x = g.x(i), y = g.y(j);
            const double e = std::exp(std::sin(2.0 * oracle::pi * x));
            ex = std::max(ex, std::abs(fx[g.index(i, j)] - e * 2.0 * oracle::pi * std::cos(2.0 * oracle::pi * x) *
                                                                 std::cos(2.0 * oracle::pi * y)));
            ey = std::max(ey, std::abs(fy[g.index(i, j)] + e * 2.0 * oracle::pi * std::sin(2.0 * oracle::pi * y)));
        }
    }
    CHECK(ex < 1e-10);
    CHECK(ey < 1e-10);
}

TEST_CASE("integral of ddbar vanishes") {
    const SurfaceGrid g(32);
    const ScalarField f = ScalarField::sample(g, FieldKind::Function, [](double x, double y) {
        return std::exp(std::cos(2.0 * oracle::pi * x) + 0.5 * std::sin(4.0 * oracle::pi * y));
    });
    CHECK(std::abs(integrate(g, ddbar_density(g, f))) < 1e-12);
}

TEST_CASE("green solve inverts ddbar on mean-zero data") {
    const SurfaceGrid g(32);
    const ScalarField f = mode(g, 2, 1) * 0.7 + mode(g, 0, 3, 1.0) * 0.2;
    const ScalarField u = green_solve(g, ddbar_density(g, f));
    CHECK(std::abs(mean(g, u)) < 1e-14);
    CHECK((u - f).max_abs() < 1e-12);
    CHECK(green_representation_check(g, f + ScalarField(g, FieldKind::Function, 3.0)) < 1e-12);
}

TEST_CASE("shifted solve") {
    const SurfaceGrid g(16);
    const ScalarField f = mode(g, 1, 1);
    const ScalarField rhs = (2.0 * ddbar_density(g, f)) - (0.5 * f).as(FieldKind::TwoFormDensity);
    CHECK((solve_shifted_ddbar(g, rhs, 2.0, 0.5) - f).max_abs() < 1e-12);
}

TEST_CASE("operators check field kinds") {
    const SurfaceGrid g(8);
    const ScalarField density(g, FieldKind::TwoFormDensity, 1.0);
    CHECK_THROWS_AS(laplacian(g, density), Error);
    CHECK_THROWS_AS(green_solve(g, ScalarField(g, FieldKind::Function, 1.0)), Error);
    CHECK_THROWS_AS(integrate(SurfaceGrid(16), density), Error);
}

TEST_CASE("csv round trip is exact") {
    const SurfaceGrid g(8);
    const ScalarField f = mode(g, 1, 2, 0.1) * (1.0 / 3.0);
    std::stringstream ss;
    write_csv(ss, g, f);
    const ScalarField back = read_csv(ss, g, FieldKind::Function);
    CHECK((back - f).max_abs() == 0.0);
    std::stringstream bad("x,y,v\n");
    CHECK_THROWS_AS(read_csv(bad, g, FieldKind::Function), Error);
}
