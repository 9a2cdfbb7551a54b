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

// Flat square torus R^2/Z^2 sampled on a periodic n x n grid.
//
// The Kahler form is omega = 2*pi dx^dy, so the total area is 2*pi and a
// degree-one bundle with i*Theta0 = omega has unit first Chern number. Every
// (1,1)-form is stored as its density relative to omega. Derivatives are
// Fourier-diagonal: exact on band-limited data, including the Nyquist mode for
// even-order operators.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace vortexcont {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

namespace detail {
class SpectralPlan;
}

class SurfaceGrid {
public:
    explicit SurfaceGrid(int n);

    int n() const noexcept { return n_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(n_) * n_; }
    double spacing() const noexcept { return 1.0 / n_; }
    /// Coefficient of dx^dy in omega.
    static constexpr double area_form_density() noexcept { return kTwoPi; }
    double cell_weight() const noexcept { return area_form_density() * spacing() * spacing(); }

    /// Storage is row-major with y as the row: index = j*n + i.
    std::size_t index(int i, int j) const noexcept {
        return static_cast<std::size_t>(j) * n_ + static_cast<std::size_t>(i);
    }
    double x(int i) const noexcept { return i * spacing(); }
    double y(int j) const noexcept { return j * spacing(); }

    bool operator==(const SurfaceGrid& other) const noexcept { return n_ == other.n_; }

    const detail::SpectralPlan& plan() const noexcept { return *plan_; }

private:
    int n_;
    std::shared_ptr<const detail::SpectralPlan> plan_;
};

SurfaceGrid make_grid(int n);

enum class FieldKind { Function, TwoFormDensity };

const char* to_string(FieldKind kind);

class ScalarField {
public:
    ScalarField() = default;
    ScalarField(const SurfaceGrid& grid, FieldKind kind, double fill = 0.0);
    ScalarField(const SurfaceGrid& grid, FieldKind kind, std::vector<double> values);

    /// Samples f(x, y) at every node.
    static ScalarField sample(const SurfaceGrid& grid, FieldKind kind,
                              const std::function<double(double, double)>& f);

    int n() const noexcept { return n_; }
    std::size_t size() const noexcept { return values_.size(); }
    FieldKind kind() const noexcept { return kind_; }

    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }
    double operator[](std::size_t k) const noexcept { return values_[k]; }
    double& operator[](std::size_t k) noexcept { return values_[k]; }

    double min() const;
    double max() const;
    double max_abs() const;
    bool all_finite() const;

    /// Same values, reinterpreted. Used where a relation between a function and
    /// a density is pointwise (e.g. multiplying a density by a function).
    ScalarField as(FieldKind kind) const;

    ScalarField& operator+=(const ScalarField& other);
    ScalarField& operator-=(const ScalarField& other);
    ScalarField& operator*=(double s);

    friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
    friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
    friend ScalarField operator*(ScalarField a, double s) { return a *= s; }
    friend ScalarField operator*(double s, ScalarField a) { return a *= s; }

private:
    int n_ = 0;
    FieldKind kind_ = FieldKind::Function;
    std::vector<double> values_;
};

void require_same_grid(const SurfaceGrid& g, const ScalarField& f);
void require_same_grid(const ScalarField& a, const ScalarField& b);

/// Pointwise map producing a field of the given kind.
ScalarField map_field(const ScalarField& f, FieldKind kind, const std::function<double(double)>& op);
ScalarField zip_field(const ScalarField& a, const ScalarField& b, FieldKind kind,
                      const std::function<double(double, double)>& op);

/// Integral of f against omega.
double integrate(const SurfaceGrid& g, const ScalarField& f);
/// Average with respect to omega.
double mean(const SurfaceGrid& g, const ScalarField& f);

/// Flat Laplacian d^2/dx^2 + d^2/dy^2.
ScalarField laplacian(const SurfaceGrid& g, const ScalarField& f);
/// Density of i*ddbar(f) relative to omega, i.e. laplacian(f)/(4*pi).
ScalarField ddbar_density(const SurfaceGrid& g, const ScalarField& f);
ScalarField gradient_x(const SurfaceGrid& g, const ScalarField& f);
ScalarField gradient_y(const SurfaceGrid& g, const ScalarField& f);

/// Mean-zero u with i*ddbar(u) = (f - mean(f)) omega.
ScalarField green_solve(const SurfaceGrid& g, const ScalarField& density);

/// Solves coeff * ddbar_density(u) - shift * u = rhs for u. With shift == 0 the
/// mean mode is pinned to zero.
ScalarField solve_shifted_ddbar(const SurfaceGrid& g, const ScalarField& rhs, double coeff,
                                double shift);

/// max |f - (mean(f) + green_solve(ddbar_density(f)))|.
double green_representation_check(const SurfaceGrid& g, const ScalarField& f);

/// CSV with header x,y,value in storage order, 17 significant digits.
void write_csv(std::ostream& os, const SurfaceGrid& g, const ScalarField& f);
ScalarField read_csv(std::istream& is, const SurfaceGrid& g, FieldKind kind);

}  // namespace vortexcont
