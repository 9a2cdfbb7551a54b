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

#include "core/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "core/error.hpp"

namespace vortexcont {

namespace {
std::string describe(const char* what, double v) {
    std::ostringstream os;
    os.precision(6);
    os << what << " " << v;
    return os.str();
}

struct Evaluation {
    bool ok = false;
    ScalarField r;
    double norm = 0.0;
};

Evaluation evaluate(const SurfaceGrid& g, const VortexParams& p, const LineBundleData& b,
                    const ScalarField& psi) {
    Evaluation ev;
    if (!psi.all_finite()) {
        return ev;
    }
    try {
        ev.r = residual(g, p, b, psi);
    } catch (const DenominatorError&) {
        return ev;
    }
    ev.norm = ev.r.max_abs();
    ev.ok = std::isfinite(ev.norm);
    return ev;
}
}  // namespace

NewtonOutcome try_newton(const SurfaceGrid& g, const VortexParams& p, const LineBundleData& b,
                         const ScalarField& psi_init, const NewtonOptions& options) {
    require_same_grid(g, psi_init);
    NewtonOutcome out;
    SolverState& st = out.state;
    st.psi = psi_init.as(FieldKind::Function);
    st.alpha = p.alpha;
    st.t = p.t;

    Evaluation current = evaluate(g, p, b, st.psi);
    if (!current.ok) {
        out.failure = "initial guess leaves the positive-denominator regime";
        st.residual_norm = HUGE_VAL;
        return out;
    }
    st.residual_norm = current.norm;

    for (int it = 0;; ++it) {
        if (current.norm <= options.tolerance) {
            out.converged = true;
            break;
        }
        if (it >= options.max_iterations) {
            out.failure = describe("max Newton iterations reached; residual", current.norm);
            break;
        }

        const Linearization jac(g, p, b, st.psi);
        const double coeff = jac.principal_mean();
        // Keep the preconditioner's mean mode invertible even if the reaction
        // term averages out.
        const double shift = std::max(jac.reaction_mean(), 1e-3 * coeff);
        const LinearOperator apply = [&](std::span<const double> x, std::span<double> y) {
            ScalarField v(g, FieldKind::Function, std::vector<double>(x.begin(), x.end()));
            ScalarField jv = jac.apply(v);
            std::copy(jv.values().begin(), jv.values().end(), y.begin());
        };
        const LinearOperator precondition = [&](std::span<const double> x, std::span<double> y) {
            ScalarField v(g, FieldKind::TwoFormDensity, std::vector<double>(x.begin(), x.end()));
            ScalarField z = solve_shifted_ddbar(g, v, coeff, shift);
            std::copy(z.values().begin(), z.values().end(), y.begin());
        };

        std::vector<double> rhs(current.r.size());
        for (std::size_t k = 0; k < rhs.size(); ++k) {
            rhs[k] = -current.r[k];
        }
        std::vector<double> step(rhs.size(), 0.0);
        const LinearSolveResult lin = gmres(apply, precondition, rhs, step, options.linear);
        st.linear_iterations += lin.iterations;
        st.worst_linear_residual = std::max(st.worst_linear_residual, lin.relative_residual);
        if (!(lin.relative_residual <= options.linear_failure_threshold)) {
            out.failure = describe("linear solve stagnated; relative residual", lin.relative_residual);
            break;
        }

        // Backtrack on max-norm increase or on leaving the denominator regime.
        double lambda = 1.0;
        bool accepted = false;
        while (lambda >= options.damping_floor) {
            ScalarField trial = st.psi;
            for (std::size_t k = 0; k < trial.size(); ++k) {
                trial[k] += lambda * step[k];
            }
            Evaluation ev = evaluate(g, p, b, trial);
            if (ev.ok && ev.norm < current.norm) {
                st.psi = std::move(trial);
                current = std::move(ev);
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        st.newton_iters = it + 1;
        st.residual_norm = current.norm;
        if (!accepted) {
            out.failure = describe("damping floor reached; residual", current.norm);
            break;
        }
    }
    st.residual_norm = current.norm;
    return out;
}

SolverState newton_solve(const SurfaceGrid& g, const VortexParams& p, const LineBundleData& b,
                         const ScalarField& psi_init, const NewtonOptions& options) {
    NewtonOutcome out = try_newton(g, p, b, psi_init, options);
    if (!out.converged) {
        fail(ErrorCode::NonConvergence, "Newton did not converge: " + out.failure);
    }
    out.state.monitors = evaluate_estimates(g, p, b, out.state.psi);
    return std::move(out.state);
}

void validate_path(const PathSpec& spec) {
    if (spec.waypoints.empty()) {
        fail(ErrorCode::Config, "path needs at least one waypoint");
    }
    for (std::size_t i = 0; i < spec.waypoints.size(); ++i) {
        const auto& w = spec.waypoints[i];
        if (!(w.alpha >= 0.0 && std::isfinite(w.alpha) && w.t >= 0.0 && w.t <= 1.0)) {
            fail(ErrorCode::Config, "waypoint " + std::to_string(i) + " lies outside alpha >= 0, 0 <= t <= 1");
        }
        if (i > 0 && w.alpha == spec.waypoints[i - 1].alpha && w.t == spec.waypoints[i - 1].t) {
            fail(ErrorCode::Config, "consecutive waypoints " + std::to_string(i - 1) + " and " +
                                        std::to_string(i) + " coincide");
        }
    }
    if (!(spec.max_step > 0.0 && spec.min_step > 0.0 && spec.min_step <= spec.max_step)) {
        fail(ErrorCode::Config, "step bounds need 0 < min_step <= max_step");
    }
    if (!(spec.newton_tol > 0.0) || spec.max_newton_iters <= 0) {
        fail(ErrorCode::Config, "newton_tol and max_newton_iters must be positive");
    }
}

void gate_hypotheses(const SurfaceGrid& g, const FamilyArgs& args, const LineBundleData& b,
                     const PathSpec& spec) {
    for (const auto& w : spec.waypoints) {
        const VortexParams p = make_params(g, args, b, w.alpha, w.t);
        const HypothesisFlags f = check_hypotheses(p, b);
        if (!f.b_cd) {
            throw AdmissibilityError("b_cd", describe("hypothesis b - c d >= 0 fails; b - c d =", f.b_cd_value));
        }
    }
}

ScalarField family_seed(const SurfaceGrid& g, const FamilyArgs& args, const LineBundleData& b,
                        const NewtonOptions& options) {
    ScalarField zero(g, FieldKind::Function, 0.0);
    if (const auto* cym = std::get_if<CymArgs>(&args)) {
        PathSpec seed_path;
        seed_path.waypoints = {{0.0, 0.0}, {0.0, 1.0}};
        seed_path.newton_tol = options.tolerance;
        seed_path.max_newton_iters = options.max_iterations;
        PathResult r = continue_path(g, BradlowArgs{cym->tau}, b, seed_path, zero);
        if (!r.completed) {
            fail(ErrorCode::NonConvergence, "standard vortex seed failed: " + r.failure);
        }
        return std::move(r.states.back().psi);
    }
    return zero;
}

namespace {
NewtonOptions newton_options(const PathSpec& spec) {
    NewtonOptions o;
    o.tolerance = spec.newton_tol;
    o.max_iterations = spec.max_newton_iters;
    return o;
}

PathPoint lerp(const PathPoint& a, const PathPoint& b, double frac) {
    return {a.alpha + frac * (b.alpha - a.alpha), a.t + frac * (b.t - a.t)};
}

void finish_state(const SurfaceGrid& g, const VortexParams& p, const LineBundleData& b, SolverState& st) {
    st.alpha = p.alpha;
    st.t = p.t;
    st.monitors = evaluate_estimates(g, p, b, st.psi);
}
}  // namespace

PathResult continue_path(const SurfaceGrid& g, const FamilyArgs& args, const LineBundleData& b,
                         const PathSpec& spec, const ScalarField& seed, const StateObserver& observer) {
    validate_path(spec);
    gate_hypotheses(g, args, b, spec);
    const NewtonOptions opts = newton_options(spec);
    PathResult result;

    auto accept = [&](SolverState st) {
        if (observer) {
            observer(st);
        }
        result.states.push_back(std::move(st));
    };

    {
        const PathPoint& w0 = spec.waypoints.front();
        const VortexParams p = make_params(g, args, b, w0.alpha, w0.t);
        NewtonOutcome out = try_newton(g, p, b, seed, opts);
        if (!out.converged) {
            result.failure = "no solution at the first waypoint: " + out.failure;
            return result;
        }
        finish_state(g, p, b, out.state);
        accept(std::move(out.state));
    }

    double step = spec.max_step;
    int successes = 0;
    for (std::size_t seg = 1; seg < spec.waypoints.size(); ++seg) {
        const PathPoint& from = spec.waypoints[seg - 1];
        const PathPoint& to = spec.waypoints[seg];
        const double length = std::hypot(to.alpha - from.alpha, to.t - from.t);
        double position = 0.0;
        while (position < length) {
            double next = std::min(position + step, length);
            if (length - next <= 1e-9 * length) {
                next = length;  // don't leave a rounding-sized last step
            }
            const PathPoint at = next == length ? to : lerp(from, to, next / length);
            const VortexParams p = make_params(g, args, b, at.alpha, at.t);
            NewtonOutcome out = try_newton(g, p, b, result.states.back().psi, opts);
            if (out.converged) {
                finish_state(g, p, b, out.state);
                accept(std::move(out.state));
                position = next;
                if (++successes >= 3) {
                    step = std::min(2.0 * step, spec.max_step);
                    successes = 0;
                }
                continue;
            }
            ++result.rejected_steps;
            successes = 0;
            step *= 0.5;
            if (step < spec.min_step) {
                std::ostringstream os;
                os << "step size fell below min_step near alpha=" << at.alpha << ", t=" << at.t
                   << " (" << out.failure << ")";
                result.failure = os.str();
                return result;
            }
        }
    }
    result.completed = true;
    return result;
}

RoundtripResult uniqueness_roundtrip(const SurfaceGrid& g, const FamilyArgs& args,
                                     const LineBundleData& b, const PathSpec& spec,
                                     const ScalarField& seed, const ScalarField& perturbation) {
    RoundtripResult rt;
    auto require_leg = [](const PathResult& leg, const char* name) {
        if (!leg.completed) {
            fail(ErrorCode::NonConvergence, std::string(name) + " leg failed: " + leg.failure);
        }
    };

    rt.forward = continue_path(g, args, b, spec, seed);
    require_leg(rt.forward, "forward");
    const SolverState& endpoint = rt.forward.states.back();

    const PathPoint& last = spec.waypoints.back();
    const VortexParams p_end = make_params(g, args, b, last.alpha, last.t);
    rt.perturbed = newton_solve(g, p_end, b, endpoint.psi + perturbation.as(FieldKind::Function),
                                newton_options(spec));

    PathSpec reversed = spec;
    std::reverse(reversed.waypoints.begin(), reversed.waypoints.end());
    rt.backward = continue_path(g, args, b, reversed, rt.perturbed.psi);
    require_leg(rt.backward, "backward");

    rt.forward_again = continue_path(g, args, b, spec, rt.backward.states.back().psi);
    require_leg(rt.forward_again, "second forward");

    rt.discrepancy = (rt.forward_again.states.back().psi - endpoint.psi).max_abs();
    return rt;
}

}  // namespace vortexcont
