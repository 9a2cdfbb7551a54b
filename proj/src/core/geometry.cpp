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

#include "core/geometry.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstdio>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>

#include "core/error.hpp"

namespace vortexcont {

namespace detail {

namespace {
// The FFTW planner is not re-entrant; execution on distinct arrays is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

template <class T>
struct FftwDeleter {
    void operator()(T* p) const noexcept { fftw_free(p); }
};

template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwDeleter<T>>;

template <class T>
FftwBuffer<T> fftw_buffer(std::size_t count) {
    auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * count));
    if (p == nullptr) {
        throw std::bad_alloc();
    }
    return FftwBuffer<T>(p);
}
}  // namespace

/// Real-to-half-complex 2D transform pair for one grid size. Each call works
/// on its own buffers so a plan can be shared between threads.
class SpectralPlan {
public:
    explicit SpectralPlan(int n) : n_(n) {
        auto real = fftw_buffer<double>(real_size());
        auto spec = fftw_buffer<fftw_complex>(spectral_size());
        std::lock_guard<std::mutex> lock(planner_mutex());
        forward_ = fftw_plan_dft_r2c_2d(n, n, real.get(), spec.get(), FFTW_ESTIMATE);
        backward_ = fftw_plan_dft_c2r_2d(n, n, spec.get(), real.get(), FFTW_ESTIMATE);
        if (forward_ == nullptr || backward_ == nullptr) {
            fail(ErrorCode::Internal, "FFTW planning failed");
        }
    }

    ~SpectralPlan() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(forward_);
        fftw_destroy_plan(backward_);
    }

    SpectralPlan(const SpectralPlan&) = delete;
    SpectralPlan& operator=(const SpectralPlan&) = delete;

    int n() const noexcept { return n_; }
    int half() const noexcept { return n_ / 2 + 1; }
    std::size_t real_size() const noexcept { return static_cast<std::size_t>(n_) * n_; }
    std::size_t spectral_size() const noexcept { return static_cast<std::size_t>(n_) * half(); }

    /// Signed wavenumber of row j (y direction) and column i (x direction).
    int ky(int j) const noexcept { return j <= n_ / 2 ? j : j - n_; }
    int kx(int i) const noexcept { return i; }
    bool nyquist_y(int j) const noexcept { return j == n_ / 2; }
    bool nyquist_x(int i) const noexcept { return i == n_ / 2; }

    /// Applies a Fourier multiplier symbol(kx, ky, row, col) to real data.
    template <class Symbol>
    std::vector<double> apply(std::span<const double> in, Symbol&& symbol) const {
        auto real = fftw_buffer<double>(real_size());
        auto spec = fftw_buffer<fftw_complex>(spectral_size());
        std::copy(in.begin(), in.end(), real.get());
        fftw_execute_dft_r2c(forward_, real.get(), spec.get());
        const double norm = 1.0 / static_cast<double>(real_size());
        for (int j = 0; j < n_; ++j) {
            for (int i = 0; i < half(); ++i) {
                auto& c = spec[static_cast<std::size_t>(j) * half() + i];
                const std::complex<double> m = symbol(kx(i), ky(j), j, i) * norm;
                const std::complex<double> v(c[0], c[1]);
                const std::complex<double> r = m * v;
                c[0] = r.real();
                c[1] = r.imag();
            }
        }
        fftw_execute_dft_c2r(backward_, spec.get(), real.get());
        return std::vector<double>(real.get(), real.get() + real_size());
    }

private:
    int n_;
    fftw_plan forward_ = nullptr;
    fftw_plan backward_ = nullptr;
};

}  // namespace detail

SurfaceGrid::SurfaceGrid(int n) : n_(n) {
    if (n < 8 || n % 2 != 0) {
        fail(ErrorCode::Config, "grid size must be even and at least 8, got " + std::to_string(n));
    }
    plan_ = std::make_shared<const detail::SpectralPlan>(n);
}

SurfaceGrid make_grid(int n) { return SurfaceGrid(n); }

const char* to_string(FieldKind kind) {
    return kind == FieldKind::Function ? "function" : "two-form-density";
}

ScalarField::ScalarField(const SurfaceGrid& grid, FieldKind kind, double fill)
    : n_(grid.n()), kind_(kind), values_(grid.size(), fill) {}

ScalarField::ScalarField(const SurfaceGrid& grid, FieldKind kind, std::vector<double> values)
    : n_(grid.n()), kind_(kind), values_(std::move(values)) {
    require(values_.size() == grid.size(), "field length does not match grid");
}

ScalarField ScalarField::sample(const SurfaceGrid& grid, FieldKind kind,
                                const std::function<double(double, double)>& f) {
    ScalarField out(grid, kind);
    for (int j = 0; j < grid.n(); ++j) {
        for (int i = 0; i < grid.n(); ++i) {
            out[grid.index(i, j)] = f(grid.x(i), grid.y(j));
        }
    }
    return out;
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }

double ScalarField::max_abs() const {
    double m = 0.0;
    for (double v : values_) {
        // NaN propagates as a failed comparison; report it as infinite.
        if (!(std::abs(v) <= m)) {
            m = std::isnan(v) ? HUGE_VAL : std::abs(v);
        }
    }
    return m;
}

bool ScalarField::all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

ScalarField ScalarField::as(FieldKind kind) const {
    ScalarField out = *this;
    out.kind_ = kind;
    return out;
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
    require_same_grid(*this, other);
    for (std::size_t k = 0; k < values_.size(); ++k) {
        values_[k] += other.values_[k];
    }
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
    require_same_grid(*this, other);
    for (std::size_t k = 0; k < values_.size(); ++k) {
        values_[k] -= other.values_[k];
    }
    return *this;
}

ScalarField& ScalarField::operator*=(double s) {
    for (double& v : values_) {
        v *= s;
    }
    return *this;
}

void require_same_grid(const SurfaceGrid& g, const ScalarField& f) {
    if (g.n() != f.n() || g.size() != f.size()) {
        fail(ErrorCode::InvalidArgument, "field does not live on this grid");
    }
}

void require_same_grid(const ScalarField& a, const ScalarField& b) {
    if (a.n() != b.n() || a.size() != b.size()) {
        fail(ErrorCode::InvalidArgument, "fields live on different grids");
    }
}

namespace {
void require_kind(const ScalarField& f, FieldKind kind, const char* op) {
    if (f.kind() != kind) {
        fail(ErrorCode::InvalidArgument, std::string(op) + " expects a " + to_string(kind) +
                                             " field, got " + to_string(f.kind()));
    }
}

ScalarField from_values(const SurfaceGrid& g, FieldKind kind, std::vector<double> v) {
    return ScalarField(g, kind, std::move(v));
}
}  // namespace

ScalarField map_field(const ScalarField& f, FieldKind kind, const std::function<double(double)>& op) {
    ScalarField out = f.as(kind);
    for (double& v : out.values()) {
        v = op(v);
    }
    return out;
}

ScalarField zip_field(const ScalarField& a, const ScalarField& b, FieldKind kind,
                      const std::function<double(double, double)>& op) {
    require_same_grid(a, b);
    ScalarField out = a.as(kind);
    auto bv = b.values();
    auto ov = out.values();
    for (std::size_t k = 0; k < ov.size(); ++k) {
        ov[k] = op(ov[k], bv[k]);
    }
    return out;
}

double integrate(const SurfaceGrid& g, const ScalarField& f) {
    require_same_grid(g, f);
    double sum = 0.0;
    for (double v : f.values()) {
        sum += v;
    }
    return sum * g.cell_weight();
}

double mean(const SurfaceGrid& g, const ScalarField& f) {
    require_same_grid(g, f);
    double sum = 0.0;
    for (double v : f.values()) {
        sum += v;
    }
    return sum / static_cast<double>(f.size());
}

ScalarField laplacian(const SurfaceGrid& g, const ScalarField& f) {
    require_same_grid(g, f);
    require_kind(f, FieldKind::Function, "laplacian");
    auto v = g.plan().apply(f.values(), [](int kx, int ky, int, int) {
        return std::complex<double>(-4.0 * kPi * kPi * (kx * kx + ky * ky), 0.0);
    });
    return from_values(g, FieldKind::Function, std::move(v));
}

ScalarField ddbar_density(const SurfaceGrid& g, const ScalarField& f) {
    require_same_grid(g, f);
    require_kind(f, FieldKind::Function, "ddbar_density");
    // laplacian / (4 pi) has symbol -pi |k|^2.
    auto v = g.plan().apply(f.values(), [](int kx, int ky, int, int) {
        return std::complex<double>(-kPi * (kx * kx + ky * ky), 0.0);
    });
    return from_values(g, FieldKind::TwoFormDensity, std::move(v));
}

ScalarField gradient_x(const SurfaceGrid& g, const ScalarField& f) {
    require_same_grid(g, f);
    const auto& plan = g.plan();
    auto v = plan.apply(f.values(), [&plan](int kx, int, int, int col) {
        if (plan.nyquist_x(col)) {
            return std::complex<double>(0.0, 0.0);
        }
        return std::complex<double>(0.0, kTwoPi * kx);
    });
    return from_values(g, FieldKind::Function, std::move(v));
}

ScalarField gradient_y(const SurfaceGrid& g, const ScalarField& f) {
    require_same_grid(g, f);
    const auto& plan = g.plan();
    auto v = plan.apply(f.values(), [&plan](int, int ky, int row, int) {
        if (plan.nyquist_y(row)) {
            return std::complex<double>(0.0, 0.0);
        }
        return std::complex<double>(0.0, kTwoPi * ky);
    });
    return from_values(g, FieldKind::Function, std::move(v));
}

ScalarField green_solve(const SurfaceGrid& g, const ScalarField& density) {
    require_same_grid(g, density);
    require_kind(density, FieldKind::TwoFormDensity, "green_solve");
    return solve_shifted_ddbar(g, density, 1.0, 0.0);
}

ScalarField solve_shifted_ddbar(const SurfaceGrid& g, const ScalarField& rhs, double coeff,
                                double shift) {
    require_same_grid(g, rhs);
    auto v = g.plan().apply(rhs.values(), [coeff, shift](int kx, int ky, int, int) {
        const double symbol = -coeff * kPi * (kx * kx + ky * ky) - shift;
        if (symbol == 0.0) {
            return std::complex<double>(0.0, 0.0);
        }
        return std::complex<double>(1.0 / symbol, 0.0);
    });
    return from_values(g, FieldKind::Function, std::move(v));
}

double green_representation_check(const SurfaceGrid& g, const ScalarField& f) {
    require_kind(f, FieldKind::Function, "green_representation_check");
    const double avg = mean(g, f);
    ScalarField rebuilt = green_solve(g, ddbar_density(g, f));
    double worst = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        worst = std::max(worst, std::abs(f[k] - (avg + rebuilt[k])));
    }
    return worst;
}

void write_csv(std::ostream& os, const SurfaceGrid& g, const ScalarField& f) {
    require_same_grid(g, f);
    os << "x,y,value\n";
    char line[96];
    for (int j = 0; j < g.n(); ++j) {
        for (int i = 0; i < g.n(); ++i) {
            std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", g.x(i), g.y(j),
                          f[g.index(i, j)]);
            os << line;
        }
    }
}

ScalarField read_csv(std::istream& is, const SurfaceGrid& g, FieldKind kind) {
    std::string header;
    if (!std::getline(is, header) || header != "x,y,value") {
        fail(ErrorCode::Config, "field CSV must start with header x,y,value");
    }
    std::vector<double> values;
    values.reserve(g.size());
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        const auto last = line.rfind(',');
        if (last == std::string::npos) {
            fail(ErrorCode::Config, "malformed field CSV row: " + line);
        }
        values.push_back(std::stod(line.substr(last + 1)));
    }
    if (values.size() != g.size()) {
        fail(ErrorCode::Config, "field CSV has " + std::to_string(values.size()) +
                                    " rows, grid needs " + std::to_string(g.size()));
    }
    return ScalarField(g, kind, std::move(values));
}

}  // namespace vortexcont
