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

#include "core/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

#include "core/error.hpp"

namespace vortexcont {

namespace {
// JSON has no infinity; keep non-finite values visible as strings.
Json number(double v) {
    if (std::isfinite(v)) {
        return v;
    }
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

std::ofstream open_for_write(const std::filesystem::path& file) {
    std::ofstream os(file, std::ios::binary | std::ios::trunc);
    if (!os) {
        fail(ErrorCode::Io, "cannot write " + file.string());
    }
    return os;
}

void finish(std::ofstream& os, const std::filesystem::path& file) {
    os.flush();
    if (!os) {
        fail(ErrorCode::Io, "write failed for " + file.string());
    }
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
}  // namespace

Json to_json(const HypothesisFlags& f) {
    Json j;
    j["b_cd"] = f.b_cd;
    j["b_kctd"] = f.b_kctd;
    j["de_a"] = f.de_a;
    j["theta0_is_omega"] = f.theta0_is_omega;
    j["b_cd_value"] = number(f.b_cd_value);
    j["b_kctd_value"] = number(f.b_kctd_value);
    j["de_minus_a"] = number(f.de_minus_a);
    return j;
}

Json to_json(const EstimateReport& r) {
    Json j;
    j["flags"] = to_json(r.flags);
    j["observed"] = {{"max_s", number(r.observed.max_s)},
                     {"min_psi", number(r.observed.min_psi)},
                     {"max_psi", number(r.observed.max_psi)},
                     {"degree_error", number(r.observed.degree_error)},
                     {"denom_min", number(r.observed.denom_min)}};
    j["verdicts"] = {{"phi_bound", r.verdicts.phi_bound},
                     {"degree", r.verdicts.degree},
                     {"c0_finite", r.verdicts.c0_finite},
                     {"denominator_positive", r.verdicts.denominator_positive}};
    return j;
}

Json state_record(std::size_t step, const SolverState& st) {
    Json j;
    j["step"] = step;
    j["alpha"] = number(st.alpha);
    j["t"] = number(st.t);
    j["residual_norm"] = number(st.residual_norm);
    j["newton_iters"] = st.newton_iters;
    j["linear_iterations"] = st.linear_iterations;
    j["worst_linear_residual"] = number(st.worst_linear_residual);
    j["monitors"] = to_json(st.monitors);
    return j;
}

Json to_json(const StabilityReport& r) {
    auto q = [](const Rational& v) { return to_fraction_string(v); };
    Json j;
    j["spec"] = {{"genus", r.spec.genus},
                 {"euler_alpha", r.spec.euler_alpha()},
                 {"tau", r.spec.tau},
                 {"power_k", r.spec.power_k},
                 {"r1", r.spec.r1},
                 {"r2", r.spec.r2}};
    j["chern"] = {{"c1_E", {q(r.chern.c1_e.sigma), q(r.chern.c1_e.fs)}},
                  {"c1_S", {q(r.chern.c1_s.sigma), q(r.chern.c1_s.fs)}},
                  {"ch2_E", q(r.chern.ch2_e)},
                  {"ch2_S", q(r.chern.ch2_s)}};
    j["chi_E"] = q(r.chi_e);
    j["chi_S"] = q(r.chi_s);
    j["chi_E_minus_2chi_S"] = q(r.chi_difference);
    j["margin"] = q(r.margin);
    j["verdict"] = r.verdict;
    j["k_tau_plus_alpha_positive"] = r.k_tau_alpha_positive;
    j["R1"] = q(r.reduction.R1);
    j["R2"] = q(r.reduction.R2);
    j["mu"] = q(r.reduction.mu);
    j["R2_half_integer"] = r.reduction.r2_half_integer;
    j["vortex_parameters"] = {{"a", q(r.reduction.a)}, {"b", q(r.reduction.b)}, {"c", q(r.reduction.c)},
                              {"d", q(r.reduction.d)}, {"e", q(r.reduction.e)}, {"k", q(r.reduction.k)}};
    j["ahe_constant"] = q(r.ahe_constant);
    j["ahe_crosscheck"] = q(r.ahe_crosscheck);
    j["ahe_constant_odd"] = r.ahe_constant_odd;
    return j;
}

Json summarize(std::span<const SolverState> states) {
    if (states.empty()) {
        fail(ErrorCode::InvalidArgument, "cannot summarize an empty state list");
    }
    std::vector<EstimateReport> reports;
    Json max_s = Json::array(), degree = Json::array(), alpha = Json::array(), t = Json::array();
    bool all_pass = true;
    for (const auto& st : states) {
        reports.push_back(st.monitors);
        max_s.push_back(number(st.monitors.observed.max_s));
        degree.push_back(number(st.monitors.observed.degree_error));
        alpha.push_back(number(st.alpha));
        t.push_back(number(st.t));
        all_pass = all_pass && st.monitors.monitors_pass();
    }
    const EmpiricalBounds bounds = empirical_bounds(reports);
    Json j;
    j["accepted_states"] = states.size();
    j["empirical_c0"] = {{"lower", number(bounds.lower)}, {"upper", number(bounds.upper)}, {"finite", bounds.finite}};
    j["all_monitors_pass"] = all_pass;
    j["alpha"] = alpha;
    j["t"] = t;
    j["max_s"] = max_s;
    j["degree_error"] = degree;
    j["final_flags"] = to_json(states.back().monitors.flags);
    return j;
}

void write_json(const std::filesystem::path& file, const Json& value) {
    std::ofstream os = open_for_write(file);
    os << value.dump(2) << '\n';
    finish(os, file);
}

void ensure_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        fail(ErrorCode::Io, "cannot create output directory " + dir.string());
    }
}

void emit_report(const std::filesystem::path& dir, const SurfaceGrid& g,
                 std::span<const SolverState> states, bool emit_fields) {
    const Json summary = summarize(states);
    ensure_directory(dir);
    write_json(dir / "summary.json", summary);

    const auto trace_file = dir / "trace.csv";
    std::ofstream trace = open_for_write(trace_file);
    trace << "step,alpha,t,residual_norm,newton_iters,max_s,min_psi,max_psi,degree_error,denom_min\n";
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto& st = states[i];
        const auto& o = st.monitors.observed;
        trace << i << ',' << fmt(st.alpha) << ',' << fmt(st.t) << ',' << fmt(st.residual_norm) << ','
              << st.newton_iters << ',' << fmt(o.max_s) << ',' << fmt(o.min_psi) << ',' << fmt(o.max_psi)
              << ',' << fmt(o.degree_error) << ',' << fmt(o.denom_min) << '\n';
    }
    finish(trace, trace_file);

    if (emit_fields) {
        const auto fields = dir / "fields";
        ensure_directory(fields);
        for (std::size_t i = 0; i < states.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof name, "psi_step_%04zu.csv", i);
            std::ofstream os = open_for_write(fields / name);
            write_csv(os, g, states[i].psi);
            finish(os, fields / name);
        }
    }
}

}  // namespace vortexcont
