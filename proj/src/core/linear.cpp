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

#include "core/linear.hpp"

#include <algorithm>
#include <cmath>

namespace vortexcont {

double norm2(std::span<const double> v) {
    double sum = 0.0;
    for (double x : v) {
        sum += x * x;
    }
    return std::sqrt(sum);
}

namespace {
double dot(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        sum += a[k] * b[k];
    }
    return sum;
}

void true_residual(const LinearOperator& apply, std::span<const double> rhs, std::span<const double> x,
                   std::vector<double>& r, std::vector<double>& scratch) {
    apply(x, scratch);
    for (std::size_t k = 0; k < r.size(); ++k) {
        r[k] = rhs[k] - scratch[k];
    }
}
}  // namespace

LinearSolveResult gmres(const LinearOperator& apply, const LinearOperator& precondition,
                        std::span<const double> rhs, std::span<double> x, const GmresOptions& options) {
    const std::size_t n = rhs.size();
    const int m = std::max(1, options.restart);
    LinearSolveResult result;

    const double rhs_norm = norm2(rhs);
    if (rhs_norm == 0.0) {
        std::fill(x.begin(), x.end(), 0.0);
        result.converged = true;
        return result;
    }
    const double target = options.relative_tolerance * rhs_norm;

    std::vector<double> r(n), scratch(n), z(n), w(n);
    std::vector<std::vector<double>> basis(m + 1, std::vector<double>(n));
    std::vector<double> h(static_cast<std::size_t>(m + 1) * m);
    std::vector<double> cs(m), sn(m), g(m + 1), y(m);
    auto H = [&](int i, int j) -> double& { return h[static_cast<std::size_t>(i) * m + j]; };

    true_residual(apply, rhs, x, r, scratch);
    double beta = norm2(r);

    while (beta > target && result.iterations < options.max_iterations) {
        for (std::size_t k = 0; k < n; ++k) {
            basis[0][k] = r[k] / beta;
        }
        std::fill(g.begin(), g.end(), 0.0);
        g[0] = beta;
        int used = 0;
        for (int j = 0; j < m && result.iterations < options.max_iterations; ++j) {
            ++result.iterations;
            precondition(basis[j], z);
            apply(z, w);
            // Modified Gram-Schmidt, one reorthogonalisation pass.
            for (int pass = 0; pass < 2; ++pass) {
                for (int i = 0; i <= j; ++i) {
                    const double hij = dot(w, basis[i]);
                    if (pass == 0) {
                        H(i, j) = hij;
                    } else {
                        H(i, j) += hij;
                    }
                    for (std::size_t k = 0; k < n; ++k) {
                        w[k] -= hij * basis[i][k];
                    }
                }
            }
            const double wn = norm2(w);
            H(j + 1, j) = wn;
            if (wn > 0.0) {
                for (std::size_t k = 0; k < n; ++k) {
                    basis[j + 1][k] = w[k] / wn;
                }
            }
            for (int i = 0; i < j; ++i) {
                const double a = H(i, j);
                const double b = H(i + 1, j);
                H(i, j) = cs[i] * a + sn[i] * b;
                H(i + 1, j) = -sn[i] * a + cs[i] * b;
            }
            const double a = H(j, j);
            const double b = H(j + 1, j);
            const double rho = std::hypot(a, b);
            cs[j] = rho == 0.0 ? 1.0 : a / rho;
            sn[j] = rho == 0.0 ? 0.0 : b / rho;
            H(j, j) = rho;
            H(j + 1, j) = 0.0;
            g[j + 1] = -sn[j] * g[j];
            g[j] = cs[j] * g[j];
            used = j + 1;
            if (std::abs(g[j + 1]) <= target || wn == 0.0) {
                break;
            }
        }
        // Back substitution on the triangular Hessenberg factor.
        for (int i = used - 1; i >= 0; --i) {
            double sum = g[i];
            for (int k = i + 1; k < used; ++k) {
                sum -= H(i, k) * y[k];
            }
            y[i] = H(i, i) == 0.0 ? 0.0 : sum / H(i, i);
        }
        std::fill(w.begin(), w.end(), 0.0);
        for (int i = 0; i < used; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                w[k] += y[i] * basis[i][k];
            }
        }
        precondition(w, z);
        for (std::size_t k = 0; k < n; ++k) {
            x[k] += z[k];
        }
        true_residual(apply, rhs, x, r, scratch);
        const double previous = beta;
        beta = norm2(r);
        if (beta >= previous) {
            break;  // stagnation
        }
    }
    result.relative_residual = beta / rhs_norm;
    result.converged = beta <= target;
    return result;
}

}  // namespace vortexcont
