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

// Reference computations that share no code path with the library.

#include <boost/math/tools/roots.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>

namespace oracle {

inline constexpr double pi = 3.14159265358979323846;

/// theta3(z; i) from the Jacobi triple product with nome q = exp(-pi).
inline std::complex<double> theta3_product(std::complex<double> z) {
    const double q = std::exp(-pi);
    const std::complex<double> w = std::exp(std::complex<double>(0.0, 2.0 * pi) * z);
    std::complex<double> prod = 1.0;
    for (int m = 1; m < 40; ++m) {
        const double q2m = std::pow(q, 2 * m);
        const double q2m1 = std::pow(q, 2 * m - 1);
        prod *= (1.0 - q2m) * (1.0 + q2m1 * w) * (1.0 + q2m1 / w);
    }
    return prod;
}

/// exp(-2 pi y^2) |theta3(x + i y; i)|^2 via the product formula. Only for
/// moderate |y|; the product overflows long before the library's series does.
inline double weighted_theta_product(double x, double y) {
    return std::exp(-2.0 * pi * y * y) * std::norm(theta3_product({x, y}));
}

/// Fourth-order central-difference Laplacian of a smooth function of (x, y).
inline double fd_laplacian(const std::function<double(double, double)>& f, double x, double y, double h) {
    auto d2 = [&](double fm2, double fm1, double f0, double fp1, double fp2) {
        return (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h);
    };
    const double c = f(x, y);
    return d2(f(x - 2 * h, y), f(x - h, y), c, f(x + h, y), f(x + 2 * h, y)) +
           d2(f(x, y - 2 * h), f(x, y - h), c, f(x, y + h), f(x, y + 2 * h));
}

/// Constant background s0 with flat curvature: psi is constant and the
/// equation collapses to a scalar root problem in s. Returns the root s in
/// (0, d) of (a + b t s - c t^2 s^2 - t k s (d - s)) - (d - s) w = 0.
inline double constant_background_root(double a, double b, double c, double d, double k, double t, double w) {
    auto f = [&](double s) { return (a + b * t * s - c * t * t * s * s - t * k * s * (d - s)) - (d - s) * w; };
    boost::math::tools::eps_tolerance<double> tol(52);
    std::uintmax_t iters = 200;
    const auto r = boost::math::tools::toms748_solve(f, 0.0, d, tol, iters);
    return 0.5 * (r.first + r.second);
}

/// Euler characteristics from Kunneth and Riemann-Roch on each factor:
/// chi(Sigma x CP1, O(p w_S + q w_F)) = (p + 1 - g)(q + 1), no Chern classes.
using Rational = boost::multiprecision::cpp_rational;

inline Rational chi_line(const Rational& p, const Rational& q, int genus) {
    return (p + 1 - genus) * (q + 1);
}

inline Rational chi_split(int genus, int tau, int k, int r1, int r2, bool whole) {
    // omega = (tau/2) w_S + 2 w_F, so L'^k adds k tau/2 on Sigma and 2k on CP1.
    const Rational dp = Rational(k * tau, 2);
    const Rational dq = 2 * k;
    Rational chi = chi_line(Rational(r1 + 1) + dp, Rational(2 * r2) + dq, genus);
    if (whole) {
        chi += chi_line(Rational(r1) + dp, Rational(2 * (r2 + 1)) + dq, genus);
    }
    return chi;
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

}  // namespace oracle
