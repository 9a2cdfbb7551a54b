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

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "vortexcont/vortexcont.h"

int main(int argc, char** argv) {
    CLI::App app{"Continuation solver for vortex-type equations on the flat torus"};
    app.set_version_flag("--version", std::string(vc_version()));
    app.require_subcommand(1);

    std::string config;
    std::string out;
    bool emit_fields = false;
    for (const char* name : {"solve", "path", "roundtrip", "stability", "checks"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config, "JSON run configuration")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out, "output directory")->required();
        sub->add_flag("--emit-fields", emit_fields, "dump psi for every accepted state as CSV");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : VC_INVALID_ARGUMENT;
    }

    const std::string subcommand = app.get_subcommands().front()->get_name();
    const vc_status status = vc_run(subcommand.c_str(), config.c_str(), out.c_str(), emit_fields ? 1 : 0);
    if (status != VC_OK) {
        std::fprintf(stderr, "vortexcont %s: %s\n", subcommand.c_str(), vc_last_error());
    }
    return static_cast<int>(status);
}
