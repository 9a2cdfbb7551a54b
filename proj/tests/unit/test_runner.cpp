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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "core/error.hpp"
#include "core/runner.hpp"

using namespace vortexcont;
namespace fs = std::filesystem;

namespace {
fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / "vortexcont_unit" / name;
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

RunConfig config(const char* text, const fs::path& out) {
    RunConfig c = parse_config(Json::parse(text));
    c.output_dir = out;
    return c;
}

int config_code(const char* text) {
    try {
        parse_config(Json::parse(text));
    } catch (const Error& e) {
        return static_cast<int>(e.code());
    }
    return 0;
}
}  // namespace

TEST_CASE("schema validation") {
    CHECK(config_code(R"({"grid":{"n":32}})") == 0);
    CHECK(config_code(R"({"grid":{"n":32,"m":1}})") == 2);
    CHECK(config_code(R"({"extra":1})") == 2);
    CHECK(config_code(R"({"grid":{"n":31}})") == 2);
    CHECK(config_code(R"({"grid":{"n":"64"}})") == 2);
    CHECK(config_code(R"({"family":{"tag":"vbma","r1":2,"r2":2}})") == 2);
    CHECK(config_code(R"({"family":{"tag":"vbma","tau":4}})") == 2);
    CHECK(config_code(R"({"family":{"tag":"cym"}})") == 2);  // needs waypoints
    CHECK(config_code(R"({"family":{"tag":"vbma"},"path":{"waypoints":[[0,0],[0,2]]}})") == 2);
    CHECK(config_code(R"({"family":{"tag":"vbma"},"path":{"waypoints":[[0]]}})") == 2);
    CHECK(config_code(R"({"stability":{"tau":5}})") == 2);
    CHECK(config_code(R"({"output":{"emit_fields":1}})") == 2);
    CHECK(config_code(R"({"tolerances":{"max_step":0.2,"min_step":0.5},"family":{"tag":"vbma"}})") == 2);
}

TEST_CASE("defaults") {
    const RunConfig c = parse_config(Json::parse(R"({"family":{"tag":"vbma"}})"));
    CHECK(c.n == 64);
    REQUIRE(c.path.waypoints.size() == 2);
    CHECK(c.path.waypoints[1].t == 1.0);
    CHECK_FALSE(c.cap.has_value());
    CHECK(c.roundtrip.amplitude == 0.5);
    CHECK(c.roundtrip.ky == 1);
}

TEST_CASE("load_config reports unreadable and malformed files") {
    const fs::path dir = scratch("load");
    fs::create_directories(dir);
    CHECK_THROWS_AS(load_config(dir / "missing.json"), Error);
    std::ofstream(dir / "bad.json") << "{ not json";
    try {
        load_config(dir / "bad.json");
        FAIL("expected failure");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Config);
    }
}

TEST_CASE("path run writes ledger, summary and trace deterministically") {
    const char* text = R"({"grid":{"n":32},"family":{"tag":"vbma","r1":3,"r2":2}})";
    const fs::path a = scratch("det_a"), b = scratch("det_b");
    RunConfig ca = config(text, a);
    ca.emit_fields = true;
    const RunOutcome ra = run(Subcommand::Path, ca);
    const RunOutcome rb = run(Subcommand::Path, config(text, b));
    CHECK(ra.exit_code == 0);
    CHECK(rb.exit_code == 0);
    CHECK(slurp(a / "ledger.json") == slurp(b / "ledger.json"));
    CHECK(slurp(a / "summary.json") == slurp(b / "summary.json"));
    CHECK(fs::exists(a / "fields" / "psi_step_0000.csv"));
    CHECK_FALSE(fs::exists(b / "fields"));

    // Monotone parameter column and max_s <= 1 + 1e-8 in the trace.
    std::ifstream trace(a / "trace.csv");
    std::string line;
    std::getline(trace, line);
    double last_t = -1.0;
    int rows = 0;
    while (std::getline(trace, line)) {
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> v;
        while (std::getline(ss, cell, ',')) {
            v.push_back(std::stod(cell));
        }
        CHECK(v[2] > last_t);
        CHECK(v[5] <= 1.0 + 1e-8);
        last_t = v[2];
        ++rows;
    }
    CHECK(rows == static_cast<int>(ra.result.at("steps").size()));
}

TEST_CASE("exit codes") {
    SUBCASE("admissibility gate") {
        const RunOutcome r = run(Subcommand::Path,
                                 config(R"({"grid":{"n":16},"family":{"tag":"general","a":2,"b":0.5,"c":1,"d":1,"e":5}})",
                                        scratch("gate")));
        CHECK(r.exit_code == 2);
        CHECK(r.message.find("b - c d") != std::string::npos);
    }
    SUBCASE("nonconvergence") {
        const RunOutcome r = run(Subcommand::Path,
                                 config(R"({"grid":{"n":16},"family":{"tag":"vbma"},
                                           "tolerances":{"max_newton_iters":1,"max_step":0.5,"min_step":0.3}})",
                                        scratch("nonconv")));
        CHECK(r.exit_code == 3);
        CHECK(r.result.at("converged") == false);
        CHECK(r.result.at("steps").size() == 1);
    }
    SUBCASE("io") {
        const fs::path blocker = scratch("io");
        fs::create_directories(blocker.parent_path());
        std::ofstream(blocker) << "file, not a directory";
        const RunOutcome r = run(Subcommand::Stability,
                                 config(R"({"stability":{"genus":0,"tau":4,"power_k":1,"r1":3,"r2":2}})", blocker / "sub"));
        CHECK(r.exit_code == 6);
    }
    SUBCASE("missing section") {
        CHECK(run(Subcommand::Stability, config(R"({})", scratch("nostab"))).exit_code == 2);
        CHECK(run(Subcommand::Path, config(R"({})", scratch("nofam"))).exit_code == 2);
    }
    SUBCASE("no output directory") {
        CHECK(run(Subcommand::Checks, parse_config(Json::parse("{}"))).exit_code == 1);
    }
}

TEST_CASE("stability artifact") {
    const fs::path out = scratch("stab");
    const RunOutcome r =
        run(Subcommand::Stability, config(R"({"stability":{"genus":0,"tau":4,"power_k":1,"r1":3,"r2":2}})", out));
    REQUIRE(r.exit_code == 0);
    const Json j = Json::parse(slurp(out / "stability.json"));
    CHECK(j.at("margin") == "5/1");
    CHECK(j.at("R1") == "6/1");
    CHECK(j.at("R2") == "7/2");
    CHECK(j.at("mu") == "103/1");
}

TEST_CASE("checks artifact") {
    const fs::path out = scratch("checks");
    const RunOutcome r = run(Subcommand::Checks, config(R"({"grid":{"n":64}})", out));
    CHECK(r.exit_code == 0);
    CHECK(Json::parse(slurp(out / "checks.json")).at("all_pass") == true);
}

TEST_CASE("roundtrip and solve") {
    const char* text = R"({"grid":{"n":32},"family":{"tag":"vbma"}})";
    const RunOutcome rt = run(Subcommand::Roundtrip, config(text, scratch("rt")));
    CHECK(rt.exit_code == 0);
    CHECK(rt.result.at("discrepancy").get<double>() <= 1e-6);
    const RunOutcome sv = run(Subcommand::Solve, config(text, scratch("solve")));
    CHECK(sv.exit_code == 0);
    CHECK(sv.result.at("steps").size() == 1);
    CHECK(sv.result.at("steps")[0].at("t") == 1.0);
}

TEST_CASE("summary") {
    const SurfaceGrid g(16);
    SolverState st;
    st.psi = ScalarField(g, FieldKind::Function);
    const LineBundleData b = make_background(g, 0.5);
    st.monitors = evaluate_estimates(g, make_params(g, VbmaArgs{3, 2}, b, 0.0, 0.0), b, st.psi);
    const std::vector<SolverState> one{st};
    const Json s = summarize(one);
    CHECK(s.at("empirical_c0").at("lower") == 0.0);
    CHECK(s.at("empirical_c0").at("upper") == 0.0);
    CHECK_THROWS_AS(summarize(std::vector<SolverState>{}), Error);
    CHECK_THROWS_AS(emit_report(scratch("empty"), g, std::vector<SolverState>{}, false), Error);
}
