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

#include "core/bundle.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace vortexcont {

namespace {
// exp(-pi (M - |y|)^2) with M - |y| >= 7 is below 1e-66; comfortably past the
// 1e-15 cut for every term we drop.
int truncation_order(double y) { return static_cast<int>(std::ceil(std::abs(y))) + 7; }
}  // namespace

std::complex<double> jacobi_theta3(std::complex<double> z) {
    const int m_max = truncation_order(z.imag());
    std::complex<double> sum(0.0, 0.0);
    for (int m = -m_max; m <= m_max; ++m) {
        const double md = m;
        const double mag = std::exp(-kPi * md * md - kTwoPi * md * z.imag());
        const double phase = kTwoPi * md * z.real();
        sum += mag * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return sum;
}

double weighted_theta_density(double x, double y) {
    // exp(-pi y^2) exp(-pi m^2 - 2 pi m y) = exp(-pi (m + y)^2)
    const int m_max = truncation_order(y);
    double re = 0.0;
    double im = 0.0;
    for (int m = -m_max; m <= m_max; ++m) {
        const double shifted = m + y;
        const double mag = std::exp(-kPi * shifted * shifted);
        const double phase = kTwoPi * m * x;
        re += mag * std::cos(phase);
        im += mag * std::sin(phase);
    }
    return re * re + im * im;
}

double LineBundleData::section_density(double x, double y) const {
    return normalization * weighted_theta_density(x, y);
}

LineBundleData make_background(const SurfaceGrid& g, double cap) {
    require(cap > 0.0 && std::isfinite(cap), "background cap must be positive");
    ScalarField raw = ScalarField::sample(g, FieldKind::Function, weighted_theta_density);
    const double peak = raw.max();
    LineBundleData b{raw * (cap / peak), ScalarField(g, FieldKind::TwoFormDensity, 1.0)};
    b.normalization = cap / peak;
    // Rounding in the rescale can leave the peak one ulp off; pin it.
    auto v = b.s0.values();
    auto it = std::max_element(v.begin(), v.end());
    *it = cap;
    return b;
}

LineBundleData make_custom_background(const SurfaceGrid& g, ScalarField s0, ScalarField theta0) {
    require_same_grid(g, s0);
    require_same_grid(g, theta0);
    require(s0.kind() == FieldKind::Function, "s0 must be a function field");
    require(theta0.kind() == FieldKind::TwoFormDensity, "theta0 must be a density field");
    LineBundleData b{std::move(s0), std::move(theta0)};
    b.zero_location = locate_minimum(g, b.s0);
    return b;
}

ScalarField s_of_psi(const LineBundleData& b, const ScalarField& psi) {
    return zip_field(b.s0, psi, FieldKind::Function,
                     [](double s0, double p) { return s0 * std::exp(-p); });
}

ScalarField curvature_density(const SurfaceGrid& g, const LineBundleData& b, const ScalarField& psi) {
    return b.theta0 + ddbar_density(g, psi);
}

ScalarField grad_pairing_density(const SurfaceGrid& g, const LineBundleData& b,
                                 const ScalarField& psi) {
    const ScalarField s = s_of_psi(b, psi);
    const ScalarField theta = curvature_density(g, b, psi);
    return ddbar_density(g, s) + zip_field(theta, s, FieldKind::TwoFormDensity,
                                           [](double th, double sv) { return th * sv; });
}

ScalarField gradient_square_density(const SurfaceGrid& g, const ScalarField& s) {
    const ScalarField sx = gradient_x(g, s);
    const ScalarField sy = gradient_y(g, s);
    ScalarField out(g, FieldKind::TwoFormDensity);
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = s[k] > 0.0 ? (sx[k] * sx[k] + sy[k] * sy[k]) / (4.0 * kPi * s[k]) : std::nan("");
    }
    return out;
}

double gradient_pairing_discrepancy(const SurfaceGrid& g, const LineBundleData& b,
                                    const ScalarField& psi, double fraction) {
    const ScalarField s = s_of_psi(b, psi);
    const ScalarField pairing = grad_pairing_density(g, b, psi);
    const ScalarField quotient = gradient_square_density(g, s);
    const double threshold = fraction * s.max();
    double worst = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] > threshold) {
            worst = std::max(worst, std::abs(pairing[k] - quotient[k]));
        }
    }
    return worst;
}

double poincare_lelong_residual(const SurfaceGrid& g, const LineBundleData& b, double exclusion_cells) {
    const ScalarField& s0 = b.s0;
    const ScalarField lap = ddbar_density(g, s0);
    const ScalarField grad2 = gradient_square_density(g, s0);
    const double radius = exclusion_cells * g.spacing();
    double worst = 0.0;
    for (int j = 0; j < g.n(); ++j) {
        for (int i = 0; i < g.n(); ++i) {
            if (torus_distance({g.x(i), g.y(j)}, b.zero_location) <= radius) {
                continue;
            }
            const std::size_t k = g.index(i, j);
            const double ddbar_log = lap[k] / s0[k] - grad2[k] / s0[k];
            worst = std::max(worst, std::abs(ddbar_log + b.theta0[k]));
        }
    }
    return worst;
}

std::pair<double, double> periodicity_residual(const SurfaceGrid& g, const LineBundleData& b) {
    double dx = 0.0;
    double dy = 0.0;
    for (int j = 0; j < g.n(); ++j) {
        for (int i = 0; i < g.n(); ++i) {
            const double x = g.x(i);
            const double y = g.y(j);
            const double base = b.section_density(x, y);
            dx = std::max(dx, std::abs(b.section_density(x + 1.0, y) - base));
            dy = std::max(dy, std::abs(b.section_density(x, y + 1.0) - base));
        }
    }
    return {dx, dy};
}

Point locate_minimum(const SurfaceGrid& g, const ScalarField& f) {
    require_same_grid(g, f);
    auto v = f.values();
    const auto k = static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
    const int i = static_cast<int>(k % g.n());
    const int j = static_cast<int>(k / g.n());
    return {g.x(i), g.y(j)};
}

double torus_distance(Point a, Point b) {
    auto wrap = [](double d) {
        d = std::abs(d - std::floor(d));
        return std::min(d, 1.0 - d);
    };
    return std::hypot(wrap(a.x - b.x), wrap(a.y - b.y));
}

}  // namespace vortexcont
