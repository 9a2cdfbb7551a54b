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

// Background Hermitian data for the degree-one line bundle on the torus.
//
// The holomorphic section is the Jacobi theta function theta3(z; i) and the
// background metric carries the Gaussian weight exp(-2 pi y^2), which makes
// s0 = |phi|^2_{h0} doubly periodic with a single simple zero at (1/2, 1/2).
// Metrics are parametrised as h = h0 exp(-psi).

#include <complex>
#include <utility>

#include "core/geometry.hpp"

namespace vortexcont {

/// theta3(z; i) = sum_m exp(-pi m^2) exp(2 pi i m z), truncated once the tail is
/// below 1e-15 relative to the leading term.
std::complex<double> jacobi_theta3(std::complex<double> z);

/// exp(-2 pi y^2) |theta3(x + i y; i)|^2, evaluated with the weight folded into
/// each series term so nothing overflows for large |y|.
double weighted_theta_density(double x, double y);

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct LineBundleData {
    ScalarField s0;      // |phi|^2_{h0}, function
    ScalarField theta0;  // density of i*Theta0 relative to omega
    int degree = 1;
    Point zero_location{0.5, 0.5};
    double normalization = 1.0;  // s0 = normalization * weighted_theta_density

    /// Continuous evaluation of s0 off the grid.
    double section_density(double x, double y) const;
};

/// Theta background with max s0 == cap on the grid and i*Theta0 = omega.
LineBundleData make_background(const SurfaceGrid& g, double cap);

/// Arbitrary background data, mainly for tests (e.g. constant s0).
LineBundleData make_custom_background(const SurfaceGrid& g, ScalarField s0, ScalarField theta0);

/// s = s0 exp(-psi).
ScalarField s_of_psi(const LineBundleData& b, const ScalarField& psi);

/// Density of i*Theta_h for h = h0 exp(-psi): theta0 + ddbar(psi).
ScalarField curvature_density(const SurfaceGrid& g, const LineBundleData& b, const ScalarField& psi);

/// Density of i nabla^{1,0}phi ^ nabla^{0,1}phi* in the form that never divides
/// by s: ddbar(s) + curvature * s.
ScalarField grad_pairing_density(const SurfaceGrid& g, const LineBundleData& b,
                                 const ScalarField& psi);

/// Density of i ds ^ dbar s / s, i.e. |grad s|^2 / (4 pi s). Nodes with s <= 0
/// are set to NaN.
ScalarField gradient_square_density(const SurfaceGrid& g, const ScalarField& s);

/// max |grad_pairing - |grad s|^2/(4 pi s)| over {s > fraction * max s}.
double gradient_pairing_discrepancy(const SurfaceGrid& g, const LineBundleData& b,
                                    const ScalarField& psi, double fraction);

/// max |ddbar(log s0) + theta0| outside `exclusion_cells` grid cells of the
/// zero. ddbar(log s0) is formed from spectral derivatives of the smooth s0 as
/// ddbar(s0)/s0 - |grad s0|^2/(4 pi s0^2).
double poincare_lelong_residual(const SurfaceGrid& g, const LineBundleData& b, double exclusion_cells);

/// max |s0(x+1,y) - s0(x,y)| and max |s0(x,y+1) - s0(x,y)| over the grid nodes.
std::pair<double, double> periodicity_residual(const SurfaceGrid& g, const LineBundleData& b);

/// Node with the smallest value.
Point locate_minimum(const SurfaceGrid& g, const ScalarField& f);

/// Shortest distance between two points on the unit torus.
double torus_distance(Point a, Point b);

}  // namespace vortexcont
