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

#include "core/equation.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "core/error.hpp"

namespace vortexcont {

namespace {
constexpr double kFourPiSquared = kTwoPi * kTwoPi;  // (2 pi)^2, kept literal in the CYM map

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}
}  // namespace

const char* to_string(FamilyTag tag) {
    switch (tag) {
        case FamilyTag::General: return "general";
        case FamilyTag::Bradlow: return "bradlow";
        case FamilyTag::Cym: return "cym";
        case FamilyTag::Vbma: return "vbma";
    }
    return "unknown";
}

FamilyTag family_from_string(const std::string& name) {
    if (name == "general") return FamilyTag::General;
    if (name == "bradlow") return FamilyTag::Bradlow;
    if (name == "cym") return FamilyTag::Cym;
    if (name == "vbma") return FamilyTag::Vbma;
    fail(ErrorCode::Config, "unknown family tag '" + name + "'");
}

FamilyTag family_tag(const FamilyArgs& args) {
    return std::visit(Overloaded{
                          [](const GeneralArgs&) { return FamilyTag::General; },
                          [](const BradlowArgs&) { return FamilyTag::Bradlow; },
                          [](const CymArgs&) { return FamilyTag::Cym; },
                          [](const VbmaArgs&) { return FamilyTag::Vbma; },
                      },
                      args);
}

double cym_admissibility(const CymArgs& args, double alpha) {
    return 8.0 + 2.0 * args.tau * alpha * (2.0 * args.lambda - args.tau / 2.0) / kFourPiSquared;
}

double cym_alpha_limit(const CymArgs& args) {
    const double slope = 2.0 * args.tau * (2.0 * args.lambda - args.tau / 2.0) / kFourPiSquared;
    if (slope >= 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return -8.0 / slope;
}

Coefficients family_coefficients(const FamilyArgs& args, double alpha) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        fail(ErrorCode::Config, "path coordinate alpha must be finite and >= 0, got " + fmt(alpha));
    }
    return std::visit(
        Overloaded{
            [](const GeneralArgs& g) {
                if (!(g.a > 0.0 && g.d > 0.0 && g.e > 0.0)) {
                    fail(ErrorCode::Config, "general family needs a > 0, d > 0, e > 0");
                }
                if (!(g.b >= 0.0 && g.c >= 0.0 && g.k >= 0.0)) {
                    fail(ErrorCode::Config, "general family needs b, c, k >= 0");
                }
                return Coefficients{g.a, g.b, g.c, g.d, g.e, g.k};
            },
            [](const BradlowArgs& br) {
                if (!(br.tau > 2.0) || !std::isfinite(br.tau)) {
                    fail(ErrorCode::Config, "bradlow family needs tau > 2, got " + fmt(br.tau));
                }
                return Coefficients{2.0, 0.0, 0.0, br.tau, 1.0, 0.0};
            },
            [alpha](const CymArgs& cy) {
                if (!(cy.tau > 2.0) || !std::isfinite(cy.tau)) {
                    fail(ErrorCode::Config, "cym family needs tau > 2, got " + fmt(cy.tau));
                }
                if (!(2.0 * cy.lambda - cy.tau / 2.0 < 0.0)) {
                    throw AdmissibilityError("cym_lambda", "cym family needs 2 lambda - tau/2 < 0");
                }
                const double adm = cym_admissibility(cy, alpha);
                if (!(adm > 0.0)) {
                    throw AdmissibilityError("cym_admissibility",
                                             "8 + 2 tau alpha (2 lambda - tau/2)/(2 pi)^2 = " + fmt(adm) +
                                                 " is not positive at alpha = " + fmt(alpha));
                }
                Coefficients c;
                c.a = adm;
                c.b = cy.tau * alpha / kFourPiSquared;
                c.c = alpha / (2.0 * kFourPiSquared);
                c.d = cy.tau;
                c.e = 4.0;
                c.k = alpha / (2.0 * kFourPiSquared);
                return c;
            },
            [](const VbmaArgs& vb) {
                if (!(vb.r2 >= 2 && vb.r1 > vb.r2)) {
                    fail(ErrorCode::Config, "vbma family needs integers r1 > r2 >= 2");
                }
                const double r1 = vb.r1;
                const double r2 = vb.r2;
                const double mu = 2.0 * (2.0 * r1 * r2 + r1 + r2);
                return Coefficients{2.0 * r2 * (2.0 + 2.0 * r2), 2.0, 1.0, 1.0, mu, 1.0};
            },
        },
        args);
}

double default_cap(const FamilyArgs& args) { return family_coefficients(args, 0.0).d / 2.0; }

ScalarField build_u(const SurfaceGrid& g, const Coefficients& coef, const LineBundleData& b,
                    const ScalarField& theta_init) {
    require_same_grid(g, theta_init);
    if (!(b.s0.max() < coef.d)) {
        throw AdmissibilityError("s0_below_d", "background max s0 = " + fmt(b.s0.max()) +
                                                   " must be below d = " + fmt(coef.d));
    }
    ScalarField u(g, FieldKind::Function);
    for (std::size_t k = 0; k < u.size(); ++k) {
        u[k] = coef.a * theta_init[k] / (coef.e * (coef.d - b.s0[k]));
        if (!(u[k] > 0.0)) {
            throw AdmissibilityError("u_positive", "u must be positive; initial curvature is not");
        }
    }
    return u;
}

namespace {
ScalarField source_term(const Coefficients& coef, const ScalarField& u, double t) {
    return map_field(u, FieldKind::TwoFormDensity,
                     [&](double uv) { return coef.e * std::exp((1.0 - t) * std::log(uv)); });
}
}  // namespace

VortexParams make_params(const SurfaceGrid& g, const FamilyArgs& args, const LineBundleData& b,
                         double alpha, double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        fail(ErrorCode::Config, "path coordinate t must lie in [0, 1], got " + fmt(t));
    }
    VortexParams p;
    p.family = family_tag(args);
    p.coef = family_coefficients(args, alpha);
    p.t = t;
    p.alpha = alpha;
    // u makes psi = 0 the exact t = 0 solution; at t = 1 it drops out.
    p.u = build_u(g, p.coef, b, b.theta0.as(FieldKind::Function));
    p.source = source_term(p.coef, p.u, t);
    return p;
}

VortexParams with_source(VortexParams p, ScalarField source) {
    require_same_grid(p.u, source);
    p.source = source.as(FieldKind::TwoFormDensity);
    return p;
}

ScalarField denominator_field(const VortexParams& p, const ScalarField& s) {
    const auto& c = p.coef;
    const double t = p.t;
    return map_field(s, FieldKind::Function,
                     [&](double sv) { return c.a + c.b * t * sv - c.c * t * t * sv * sv; });
}

ScalarField cleared_denominator(const VortexParams& p, const ScalarField& s) {
    const auto& c = p.coef;
    const double t = p.t;
    return map_field(s, FieldKind::Function, [&](double sv) {
        return c.a + c.b * t * sv - c.c * t * t * sv * sv - t * c.k * sv * (c.d - sv);
    });
}

namespace {
void require_positive_denominator(const ScalarField& q) {
    const double qmin = q.min();
    if (!(qmin > 0.0)) {
        throw DenominatorError(qmin, "cleared denominator D - t k s (d - s) reached " + fmt(qmin));
    }
}
}  // namespace

ScalarField residual(const SurfaceGrid& g, const VortexParams& p, const LineBundleData& b,
                     const ScalarField& psi) {
    require_same_grid(g, psi);
    const auto& c = p.coef;
    const double tk = p.t * c.k;
    const ScalarField s = s_of_psi(b, psi);
    const ScalarField q = cleared_denominator(p, s);
    require_positive_denominator(q);
    const ScalarField theta = curvature_density(g, b, psi);
    ScalarField forcing = p.source;
    if (tk != 0.0) {
        forcing += tk * ddbar_density(g, s);
    }
    ScalarField r(g, FieldKind::TwoFormDensity);
    for (std::size_t k = 0; k < r.size(); ++k) {
        r[k] = theta[k] * q[k] - (c.d - s[k]) * forcing[k];
    }
    return r;
}

ScalarField manufactured_source(const SurfaceGrid& g, const VortexParams& p, const LineBundleData& b,
                                const ScalarField& psi_star) {
    const auto& c = p.coef;
    const double tk = p.t * c.k;
    const ScalarField s = s_of_psi(b, psi_star);
    const ScalarField q = cleared_denominator(p, s);
    require_positive_denominator(q);
    const ScalarField theta = curvature_density(g, b, psi_star);
    ScalarField lap_s(g, FieldKind::TwoFormDensity);
    if (tk != 0.0) {
        lap_s = ddbar_density(g, s);
    }
    ScalarField w(g, FieldKind::TwoFormDensity);
    for (std::size_t k = 0; k < w.size(); ++k) {
        const double gap = c.d - s[k];
        require(gap != 0.0, "manufactured solution touches s = d");
        w[k] = theta[k] * q[k] / gap - tk * lap_s[k];
    }
    return w;
}

Linearization::Linearization(const SurfaceGrid& g, const VortexParams& p, const LineBundleData& b,
                             const ScalarField& psi)
    : grid_(g) {
    require_same_grid(g, psi);
    const auto& c = p.coef;
    const double t = p.t;
    const double tk = t * c.k;
    s_ = s_of_psi(b, psi);
    q_ = cleared_denominator(p, s_);
    require_positive_denominator(q_);
    const ScalarField theta = curvature_density(g, b, psi);
    ScalarField lap_s(g, FieldKind::TwoFormDensity);
    has_second_ = tk != 0.0;
    if (has_second_) {
        lap_s = ddbar_density(g, s_);
    }
    c0_ = ScalarField(g, FieldKind::TwoFormDensity);
    c2_ = ScalarField(g, FieldKind::Function);
    double principal = 0.0;
    double reaction = 0.0;
    for (std::size_t k = 0; k < s_.size(); ++k) {
        const double sv = s_[k];
        // dQ/dpsi, using ds/dpsi = -s.
        const double dq = -sv * (c.b * t - 2.0 * c.c * t * t * sv - tk * (c.d - 2.0 * sv));
        c0_[k] = theta[k] * dq - sv * (p.source[k] + tk * lap_s[k]);
        c2_[k] = tk * (c.d - sv);
        principal += q_[k] + c2_[k] * sv;
        reaction -= c0_[k] + c2_[k] * lap_s[k];
    }
    principal_mean_ = principal / static_cast<double>(s_.size());
    reaction_mean_ = reaction / static_cast<double>(s_.size());
}

ScalarField Linearization::apply(const ScalarField& direction) const {
    require_same_grid(grid_, direction);
    const ScalarField v = direction.as(FieldKind::Function);
    const ScalarField lap_v = ddbar_density(grid_, v);
    ScalarField out(grid_, FieldKind::TwoFormDensity);
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = q_[k] * lap_v[k] + c0_[k] * v[k];
    }
    if (has_second_) {
        const ScalarField sv = zip_field(s_, v, FieldKind::Function, [](double a, double b) { return a * b; });
        const ScalarField lap_sv = ddbar_density(grid_, sv);
        for (std::size_t k = 0; k < out.size(); ++k) {
            out[k] += c2_[k] * lap_sv[k];
        }
    }
    return out;
}

ScalarField jacobian_apply(const SurfaceGrid& g, const VortexParams& p, const LineBundleData& b,
                           const ScalarField& psi, const ScalarField& direction) {
    return Linearization(g, p, b, psi).apply(direction);
}

}  // namespace vortexcont
