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

// The vortex-type family as a scalar equation for psi, h = h0 exp(-psi):
//
//   Theta = (d - s) (e u^(1-t) + t k G) / (a + b t s - c t^2 s^2),
//
// with s = s0 exp(-psi), Theta the curvature density and G the gradient
// pairing. Substituting G = ddbar(s) + Theta s and clearing the denominator
// gives the residual solved here:
//
//   R(psi) = Theta (D - t k s (d - s)) - (d - s) (W + t k ddbar(s)),
//   D = a + b t s - c t^2 s^2,  W = e u^(1-t).
//
// Nothing divides by s, so R is smooth across the zero of the section.

#include <optional>
#include <string>
#include <variant>

#include "core/bundle.hpp"
#include "core/geometry.hpp"

namespace vortexcont {

enum class FamilyTag { General, Bradlow, Cym, Vbma };

const char* to_string(FamilyTag tag);
FamilyTag family_from_string(const std::string& name);

/// Constant coefficients a, b, c, d, e, k given directly.
struct GeneralArgs {
    double a = 1.0;
    double b = 0.0;
    double c = 0.0;
    double d = 1.0;
    double e = 1.0;
    double k = 0.0;
};

/// Standard vortex equation i Theta = ((tau - s)/2) omega.
struct BradlowArgs {
    double tau = 4.0;
};

/// Calabi-Yang-Mills reduction; alpha is the continuation coordinate, t = 1.
struct CymArgs {
    double tau = 4.0;
    double lambda = -1.0;
};

/// Vortex bundle Monge-Ampere continuity path in t.
struct VbmaArgs {
    int r1 = 3;
    int r2 = 2;
};

using FamilyArgs = std::variant<GeneralArgs, BradlowArgs, CymArgs, VbmaArgs>;

FamilyTag family_tag(const FamilyArgs& args);

struct Coefficients {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
    double e = 0.0;
    double k = 0.0;
};

/// Coefficients of a family at path coordinate alpha. Validates the family's
/// own argument constraints (tau > 2, 2 lambda - tau/2 < 0, r1 > r2 >= 2, ...).
Coefficients family_coefficients(const FamilyArgs& args, double alpha);

/// 8 + 2 tau alpha (2 lambda - tau/2) / (2 pi)^2; CYM needs this positive.
double cym_admissibility(const CymArgs& args, double alpha);

/// Largest alpha with positive CYM admissibility (infinite if unbounded).
double cym_alpha_limit(const CymArgs& args);

/// Background cap used when none is configured: d/2 of the family.
double default_cap(const FamilyArgs& args);

struct VortexParams {
    FamilyTag family = FamilyTag::General;
    Coefficients coef;
    double t = 0.0;
    double alpha = 0.0;
    ScalarField u;       // function, > 0
    ScalarField source;  // e * u^(1-t), replaceable for manufactured solutions
};

/// u = a theta_init / (e (d - s0)). Throws AdmissibilityError if s0 >= d.
ScalarField build_u(const SurfaceGrid& g, const Coefficients& coef, const LineBundleData& b,
                    const ScalarField& theta_init);

VortexParams make_params(const SurfaceGrid& g, const FamilyArgs& args, const LineBundleData& b,
                         double alpha, double t);

/// Replaces the source term e u^(1-t) by a given density.
VortexParams with_source(VortexParams p, ScalarField source);

/// D = a + b t s - c t^2 s^2.
ScalarField denominator_field(const VortexParams& p, const ScalarField& s);

/// D - t k s (d - s); must stay positive.
ScalarField cleared_denominator(const VortexParams& p, const ScalarField& s);

/// Throws DenominatorError when the cleared denominator is not positive.
ScalarField residual(const SurfaceGrid& g, const VortexParams& p, const LineBundleData& b,
                     const ScalarField& psi);

/// Source W that makes residual(psi_star) vanish at the nodes.
ScalarField manufactured_source(const SurfaceGrid& g, const VortexParams& p, const LineBundleData& b,
                                const ScalarField& psi_star);

/// Frozen linearization of the residual at psi:
///   J v = Q ddbar(v) + c0 v + c2 ddbar(s v).
class Linearization {
public:
    Linearization(const SurfaceGrid& g, const VortexParams& p, const LineBundleData& b,
                  const ScalarField& psi);

    ScalarField apply(const ScalarField& direction) const;

    /// Mean of the principal coefficient (equals D) and of -J(1).
    double principal_mean() const { return principal_mean_; }
    double reaction_mean() const { return reaction_mean_; }

private:
    SurfaceGrid grid_;
    ScalarField q_;
    ScalarField c0_;
    ScalarField c2_;
    ScalarField s_;
    bool has_second_ = false;
    double principal_mean_ = 0.0;
    double reaction_mean_ = 0.0;
};

ScalarField jacobian_apply(const SurfaceGrid& g, const VortexParams& p, const LineBundleData& b,
                           const ScalarField& psi, const ScalarField& direction);

}  // namespace vortexcont
