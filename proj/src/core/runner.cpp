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

#include "core/runner.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <random>

#include "core/bundle.hpp"
#include "core/error.hpp"

namespace vortexcont {

namespace {

[[noreturn]] void config_error(const std::string& where, const std::string& what) {
    fail(ErrorCode::Config, "config " + where + ": " + what);
}

void check_keys(const Json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) {
        config_error(where, "expected an object");
    }
    for (const auto& [key, _] : obj.items()) {
        bool known = false;
        for (const char* a : allowed) {
            known = known || key == a;
        }
        if (!known) {
            config_error(where, "unknown key '" + key + "'");
        }
    }
}

double get_number(const Json& obj, const std::string& where, const char* key, double fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const Json& v = obj.at(key);
    if (!v.is_number()) {
        config_error(where + "." + key, "expected a number");
    }
    const double d = v.get<double>();
    if (!std::isfinite(d)) {
        config_error(where + "." + key, "must be finite");
    }
    return d;
}

int get_int(const Json& obj, const std::string& where, const char* key, int fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const Json& v = obj.at(key);
    if (!v.is_number_integer()) {
        config_error(where + "." + key, "expected an integer");
    }
    return v.get<int>();
}

bool get_bool(const Json& obj, const std::string& where, const char* key, bool fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    if (!obj.at(key).is_boolean()) {
        config_error(where + "." + key, "expected a boolean");
    }
    return obj.at(key).get<bool>();
}

FamilyArgs parse_family(const Json& f) {
    if (!f.is_object() || !f.contains("tag") || !f.at("tag").is_string()) {
        config_error("family", "needs a string 'tag'");
    }
    const FamilyTag tag = family_from_string(f.at("tag").get<std::string>());
    switch (tag) {
        case FamilyTag::General: {
            check_keys(f, "family", {"tag", "a", "b", "c", "d", "e", "k"});
            GeneralArgs g;
            g.a = get_number(f, "family", "a", g.a);
            g.b = get_number(f, "family", "b", g.b);
            g.c = get_number(f, "family", "c", g.c);
            g.d = get_number(f, "family", "d", g.d);
            g.e = get_number(f, "family", "e", g.e);
            g.k = get_number(f, "family", "k", g.k);
            return g;
        }
        case FamilyTag::Bradlow: {
            check_keys(f, "family", {"tag", "tau"});
            return BradlowArgs{get_number(f, "family", "tau", 4.0)};
        }
        case FamilyTag::Cym: {
            check_keys(f, "family", {"tag", "tau", "lambda"});
            return CymArgs{get_number(f, "family", "tau", 4.0), get_number(f, "family", "lambda", -1.0)};
        }
        case FamilyTag::Vbma: {
            check_keys(f, "family", {"tag", "r1", "r2"});
            return VbmaArgs{get_int(f, "family", "r1", 3), get_int(f, "family", "r2", 2)};
        }
    }
    fail(ErrorCode::Internal, "unhandled family tag");
}

std::vector<PathPoint> default_waypoints(const FamilyArgs& args) {
    if (family_tag(args) == FamilyTag::Cym) {
        config_error("path", "cym needs explicit waypoints in (alpha, t)");
    }
    return {{0.0, 0.0}, {0.0, 1.0}};
}

Json family_json(const FamilyArgs& args) {
    Json j;
    j["tag"] = to_string(family_tag(args));
    std::visit(
        [&](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, GeneralArgs>) {
                j["a"] = a.a; j["b"] = a.b; j["c"] = a.c; j["d"] = a.d; j["e"] = a.e; j["k"] = a.k;
            } else if constexpr (std::is_same_v<T, BradlowArgs>) {
                j["tau"] = a.tau;
            } else if constexpr (std::is_same_v<T, CymArgs>) {
                j["tau"] = a.tau; j["lambda"] = a.lambda;
            } else {
                j["r1"] = a.r1; j["r2"] = a.r2;
            }
        },
        args);
    return j;
}

Json path_json(const PathSpec& p) {
    Json w = Json::array();
    for (const auto& pt : p.waypoints) {
        w.push_back({pt.alpha, pt.t});
    }
    return {{"waypoints", w},
            {"max_step", p.max_step},
            {"min_step", p.min_step},
            {"newton_tol", p.newton_tol},
            {"max_newton_iters", p.max_newton_iters}};
}

}  // namespace

RunConfig parse_config(const Json& doc) {
    check_keys(doc, "root", {"grid", "bundle", "family", "path", "tolerances", "roundtrip", "stability", "output"});
    RunConfig c;
    if (doc.contains("grid")) {
        check_keys(doc.at("grid"), "grid", {"n"});
        c.n = get_int(doc.at("grid"), "grid", "n", c.n);
    }
    if (c.n < 8 || c.n % 2 != 0) {
        config_error("grid.n", "must be even and >= 8");
    }
    if (doc.contains("bundle")) {
        check_keys(doc.at("bundle"), "bundle", {"cap"});
        if (doc.at("bundle").contains("cap")) {
            c.cap = get_number(doc.at("bundle"), "bundle", "cap", 0.0);
            if (!(*c.cap > 0.0)) {
                config_error("bundle.cap", "must be positive");
            }
        }
    }
    if (doc.contains("family")) {
        c.family = parse_family(doc.at("family"));
        family_coefficients(*c.family, 0.0);  // argument constraints
    }
    if (doc.contains("tolerances")) {
        const Json& t = doc.at("tolerances");
        check_keys(t, "tolerances", {"newton_tol", "max_newton_iters", "max_step", "min_step"});
        c.path.newton_tol = get_number(t, "tolerances", "newton_tol", c.path.newton_tol);
        c.path.max_newton_iters = get_int(t, "tolerances", "max_newton_iters", c.path.max_newton_iters);
        c.path.max_step = get_number(t, "tolerances", "max_step", c.path.max_step);
        c.path.min_step = get_number(t, "tolerances", "min_step", c.path.min_step);
    }
    if (doc.contains("path")) {
        const Json& p = doc.at("path");
        check_keys(p, "path", {"waypoints"});
        if (!p.contains("waypoints") || !p.at("waypoints").is_array()) {
            config_error("path.waypoints", "expected an array of [alpha, t] pairs");
        }
        for (const auto& w : p.at("waypoints")) {
            if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number()) {
                config_error("path.waypoints", "each waypoint is [alpha, t]");
            }
            c.path.waypoints.push_back({w[0].get<double>(), w[1].get<double>()});
        }
    } else if (c.family) {
        c.path.waypoints = default_waypoints(*c.family);
    }
    if (c.family) {
        validate_path(c.path);
    }
    if (doc.contains("roundtrip")) {
        const Json& r = doc.at("roundtrip");
        check_keys(r, "roundtrip", {"amplitude", "kx", "ky"});
        c.roundtrip.amplitude = get_number(r, "roundtrip", "amplitude", c.roundtrip.amplitude);
        c.roundtrip.kx = get_int(r, "roundtrip", "kx", c.roundtrip.kx);
        c.roundtrip.ky = get_int(r, "roundtrip", "ky", c.roundtrip.ky);
    }
    if (doc.contains("stability")) {
        const Json& s = doc.at("stability");
        check_keys(s, "stability", {"genus", "tau", "power_k", "r1", "r2"});
        VortexBundleSpec spec;
        spec.genus = get_int(s, "stability", "genus", spec.genus);
        spec.tau = get_int(s, "stability", "tau", spec.tau);
        spec.power_k = get_int(s, "stability", "power_k", spec.power_k);
        spec.r1 = get_int(s, "stability", "r1", spec.r1);
        spec.r2 = get_int(s, "stability", "r2", spec.r2);
        validate(spec);
        c.stability = spec;
    }
    if (doc.contains("output")) {
        const Json& o = doc.at("output");
        check_keys(o, "output", {"dir", "emit_fields"});
        if (o.contains("dir")) {
            if (!o.at("dir").is_string()) {
                config_error("output.dir", "expected a string");
            }
            c.output_dir = o.at("dir").get<std::string>();
        }
        c.emit_fields = get_bool(o, "output", "emit_fields", false);
    }
    return c;
}

RunConfig load_config(const std::filesystem::path& file) {
    std::ifstream is(file);
    if (!is) {
        fail(ErrorCode::Io, "cannot read config " + file.string());
    }
    Json doc;
    try {
        doc = Json::parse(is);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorCode::Config, std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(doc);
}

Subcommand subcommand_from_string(const std::string& name) {
    if (name == "solve") return Subcommand::Solve;
    if (name == "path") return Subcommand::Path;
    if (name == "roundtrip") return Subcommand::Roundtrip;
    if (name == "stability") return Subcommand::Stability;
    if (name == "checks") return Subcommand::Checks;
    fail(ErrorCode::InvalidArgument, "unknown subcommand '" + name + "'");
}

const char* to_string(Subcommand s) {
    switch (s) {
        case Subcommand::Solve: return "solve";
        case Subcommand::Path: return "path";
        case Subcommand::Roundtrip: return "roundtrip";
        case Subcommand::Stability: return "stability";
        case Subcommand::Checks: return "checks";
    }
    return "?";
}

ScalarField roundtrip_perturbation(const SurfaceGrid& g, const RoundtripConfig& rc) {
    return ScalarField::sample(g, FieldKind::Function, [&](double x, double y) {
        return rc.amplitude * std::sin(kTwoPi * (rc.kx * x + rc.ky * y));
    });
}

Json identity_checks(int n) {
    const SurfaceGrid g(n);
    const LineBundleData b = make_background(g, 0.5);
    Json suites = Json::array();
    bool all = true;
    auto record = [&](const char* name, double value, double tolerance) {
        const bool pass = value <= tolerance;
        all = all && pass;
        suites.push_back({{"name", name}, {"value", value}, {"tolerance", tolerance}, {"pass", pass}});
    };

    const auto [px, py] = periodicity_residual(g, b);
    record("theta_periodicity", std::max(px, py), 1e-12);
    record("poincare_lelong", poincare_lelong_residual(g, b, 4.0), 1e-4);
    record("zero_location", torus_distance(locate_minimum(g, b.s0), {0.5, 0.5}), g.spacing());

    std::mt19937_64 rng(20260101);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    double green = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        double c[4][4];
        for (auto& row : c) {
            for (double& v : row) {
                v = coef(rng);
            }
        }
        const ScalarField f = ScalarField::sample(g, FieldKind::Function, [&](double x, double y) {
            double sum = 0.0;
            for (int p = 0; p < 4; ++p) {
                for (int q = 0; q < 4; ++q) {
                    sum += c[p][q] * std::cos(kTwoPi * (p * x + q * y) + q);
                }
            }
            return sum;
        });
        green = std::max(green, green_representation_check(g, f));
    }
    record("green_representation", green, 1e-10);

    const ScalarField psi = ScalarField::sample(g, FieldKind::Function, [](double x, double y) {
        return 0.3 * std::sin(kTwoPi * x) * std::cos(2.0 * kTwoPi * y) + 0.2 * std::cos(kTwoPi * (x + y));
    });
    record("gradient_pairing", gradient_pairing_discrepancy(g, b, psi, 0.01), 1e-6);
    record("degree", monitor_degree(g, b, psi).value, kDegreeTolerance);

    return {{"n", n}, {"all_pass", all}, {"suites", suites}};
}

namespace {

struct Setup {
    SurfaceGrid grid;
    FamilyArgs family;
    LineBundleData bundle;
};

Setup make_setup(const RunConfig& c) {
    if (!c.family) {
        fail(ErrorCode::Config, "config needs a 'family' section for this subcommand");
    }
    SurfaceGrid g(c.n);
    const double cap = c.cap.value_or(default_cap(*c.family));
    LineBundleData b = make_background(g, cap);
    return {g, *c.family, std::move(b)};
}

Json ledger_json(const RunConfig& c, Subcommand sub, const std::vector<SolverState>& states) {
    Json steps = Json::array();
    for (std::size_t i = 0; i < states.size(); ++i) {
        steps.push_back(state_record(i, states[i]));
    }
    Json j;
    j["subcommand"] = to_string(sub);
    j["grid"] = {{"n", c.n}};
    j["family"] = family_json(*c.family);
    j["path"] = path_json(c.path);
    j["steps"] = steps;
    return j;
}

bool all_monitors_pass(const std::vector<SolverState>& states) {
    for (const auto& s : states) {
        if (!s.monitors.monitors_pass()) {
            return false;
        }
    }
    return true;
}

RunOutcome finish_states(const RunConfig& c, Subcommand sub, const Setup& su,
                         const std::vector<SolverState>& states, bool converged, const std::string& failure,
                         Json extra = Json::object()) {
    ensure_directory(c.output_dir);
    Json ledger = ledger_json(c, sub, states);
    ledger["converged"] = converged;
    ledger["failure"] = failure;
    for (auto& [k, v] : extra.items()) {
        ledger[k] = v;
    }
    write_json(c.output_dir / "ledger.json", ledger);
    if (!states.empty()) {
        emit_report(c.output_dir, su.grid, states, c.emit_fields);
    }
    RunOutcome out;
    out.result = ledger;
    if (!converged) {
        out.exit_code = static_cast<int>(ErrorCode::NonConvergence);
        out.message = failure;
    } else if (!all_monitors_pass(states)) {
        out.exit_code = static_cast<int>(ErrorCode::Monitor);
        out.message = "a monitor failed on an accepted state";
    }
    return out;
}

PathSpec endpoint_only(const PathSpec& p) {
    PathSpec q = p;
    q.waypoints = {p.waypoints.back()};
    return q;
}

NewtonOptions options_from(const PathSpec& p) {
    NewtonOptions o;
    o.tolerance = p.newton_tol;
    o.max_iterations = p.max_newton_iters;
    return o;
}

RunOutcome run_unchecked(Subcommand sub, const RunConfig& c) {
    switch (sub) {
        case Subcommand::Stability: {
            if (!c.stability) {
                fail(ErrorCode::Config, "config needs a 'stability' section");
            }
            const Json report = to_json(gieseker_verdict(*c.stability));
            ensure_directory(c.output_dir);
            write_json(c.output_dir / "stability.json", report);
            return {0, "", report};
        }
        case Subcommand::Checks: {
            const Json report = identity_checks(c.n);
            ensure_directory(c.output_dir);
            write_json(c.output_dir / "checks.json", report);
            const bool pass = report.at("all_pass").get<bool>();
            return {pass ? 0 : static_cast<int>(ErrorCode::Monitor), pass ? "" : "identity check failed", report};
        }
        case Subcommand::Solve: {
            const Setup su = make_setup(c);
            const PathSpec spec = endpoint_only(c.path);
            const ScalarField seed = family_seed(su.grid, su.family, su.bundle, options_from(c.path));
            const PathResult r = continue_path(su.grid, su.family, su.bundle, spec, seed);
            return finish_states(c, sub, su, r.states, r.completed, r.failure);
        }
        case Subcommand::Path: {
            const Setup su = make_setup(c);
            const ScalarField seed = family_seed(su.grid, su.family, su.bundle, options_from(c.path));
            const PathResult r = continue_path(su.grid, su.family, su.bundle, c.path, seed);
            return finish_states(c, sub, su, r.states, r.completed, r.failure,
                                 {{"rejected_steps", r.rejected_steps}});
        }
        case Subcommand::Roundtrip: {
            const Setup su = make_setup(c);
            const ScalarField seed = family_seed(su.grid, su.family, su.bundle, options_from(c.path));
            RoundtripResult rt;
            try {
                rt = uniqueness_roundtrip(su.grid, su.family, su.bundle, c.path, seed,
                                          roundtrip_perturbation(su.grid, c.roundtrip));
            } catch (const Error& e) {
                if (e.code() != ErrorCode::NonConvergence) {
                    throw;
                }
                return finish_states(c, sub, su, rt.forward.states, false, e.what());
            }
            std::vector<SolverState> states = rt.forward.states;
            states.push_back(rt.perturbed);
            states.insert(states.end(), rt.backward.states.begin(), rt.backward.states.end());
            states.insert(states.end(), rt.forward_again.states.begin(), rt.forward_again.states.end());
            const Json extra = {{"discrepancy", rt.discrepancy},
                                {"legs",
                                 {{"forward", rt.forward.states.size()},
                                  {"perturbed", 1},
                                  {"backward", rt.backward.states.size()},
                                  {"forward_again", rt.forward_again.states.size()}}},
                                {"perturbation",
                                 {{"amplitude", c.roundtrip.amplitude}, {"kx", c.roundtrip.kx}, {"ky", c.roundtrip.ky}}}};
            return finish_states(c, sub, su, states, true, "", extra);
        }
    }
    fail(ErrorCode::Internal, "unhandled subcommand");
}

}  // namespace

RunOutcome run(Subcommand sub, const RunConfig& config) {
    try {
        if (config.output_dir.empty()) {
            fail(ErrorCode::InvalidArgument, "no output directory given");
        }
        return run_unchecked(sub, config);
    } catch (const Error& e) {
        return {static_cast<int>(e.code()), e.what(), Json::object()};
    } catch (const std::exception& e) {
        return {static_cast<int>(ErrorCode::Internal), e.what(), Json::object()};
    }
}

}  // namespace vortexcont
