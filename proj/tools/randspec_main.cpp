// Copyright 2026 The randspec developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command line front end. Talks to the library exclusively through the
// C interface in randspec.h.

#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "randspec/randspec.h"

namespace {

struct CommonArgs {
    std::string scenario_path;
    std::string field;
    std::string with_field;
    std::string function;
    std::string cells;
    std::string mode;
    double tol = -1.0;
    std::uint64_t seed = 0;
    std::string out;
};

int fail_with_last_error() {
    std::fprintf(stderr, "error: %s\n", rs_last_error());
    return 1;
}

int write_file(const std::string& path, const char* text) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (f == nullptr) {
        std::fprintf(stderr, "error: cannot write '%s'\n", path.c_str());
        return 1;
    }
    const std::size_t len = std::char_traits<char>::length(text);
    const std::size_t written = std::fwrite(text, 1, len, f);
    const int closed = std::fclose(f);
    if (written != len || closed != 0) {
        std::fprintf(stderr, "error: short write to '%s'\n", path.c_str());
        return 1;
    }
    return 0;
}

int run_scenario_command(const char* command, const CommonArgs& args) {
    rs_scenario* scenario = nullptr;
    if (rs_scenario_load(args.scenario_path.c_str(), &scenario) != RS_OK) {
        return fail_with_last_error();
    }

    rs_run_options options{};
    options.field = args.field.empty() ? nullptr : args.field.c_str();
    options.with_field =
        args.with_field.empty() ? nullptr : args.with_field.c_str();
    options.function = args.function.empty() ? nullptr : args.function.c_str();
    options.cells = args.cells.empty() ? nullptr : args.cells.c_str();
    options.mode = args.mode.empty() ? nullptr : args.mode.c_str();
    options.tol = args.tol;
    options.seed = args.seed;

    rs_result* result = nullptr;
    const rs_status status = rs_run(scenario, command, &options, &result);
    rs_scenario_free(scenario);
    if (status != RS_OK) {
        return fail_with_last_error();
    }

    std::fputs(rs_result_report(result), stdout);
    int exit_code = rs_result_exit_code(result);
    if (!args.out.empty()) {
        const char* artifact = rs_result_artifact(result);
        if (artifact == nullptr) {
            std::fprintf(stderr, "error: command produces no artifact\n");
            exit_code = 1;
        } else if (write_file(args.out, artifact) != 0) {
            exit_code = 1;
        }
    }
    rs_result_free(result);
    return exit_code;
}

void add_common(CLI::App* cmd, CommonArgs& args, const char* command) {
    cmd->add_option("scenario", args.scenario_path, "Scenario JSON file")
        ->required();
    cmd->add_option("--field", args.field, "Field to act on (default: A)");
    if (std::string(command) == "compose") {
        cmd->add_option("--with", args.with_field, "Right factor field")
            ->required();
    }
    if (std::string(command) == "integrate") {
        cmd->add_option("--function", args.function, "Integrand name")
            ->required();
    }
    if (std::string(command) == "decompose") {
        cmd->add_option("--cells", args.cells,
                        "'auto', or a cells JSON file (default: scenario "
                        "cells, else auto)");
    }
    if (std::string(command) == "transform") {
        cmd->add_option("--mode", args.mode,
                        "'z' (to contraction, default) or 't' (back)");
    }
    cmd->add_option("--tol", args.tol, "Headline tolerance override");
    cmd->add_option("--seed", args.seed, "Seed override");
    cmd->add_option("--out", args.out, "Write the machine artifact here");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random operator spectral toolkit"};
    app.set_version_flag("--version", std::string("randspec ") + rs_version());
    app.require_subcommand(1);

    const char* commands[] = {"validate",  "adjoint",  "compose",
                              "classify",  "transform", "decompose",
                              "pipeline",  "integrate"};
    const char* descriptions[] = {
        "Check measure axioms and field predicates",
        "Atom-wise conjugate transpose of a field",
        "Atom-wise product of two fields",
        "Norm statistics and integrability classes of a field",
        "Bounded transform of a field (or its inverse with --mode t)",
        "Spectral measure of a normal field",
        "Transform, decompose in the disc, and pull back",
        "Integrate a cell function against the scenario measure"};

    CommonArgs args[8];
    CLI::App* subs[8];
    for (int i = 0; i < 8; ++i) {
        subs[i] = app.add_subcommand(commands[i], descriptions[i]);
        add_common(subs[i], args[i], commands[i]);
    }

    std::string gen_kind;
    int gen_dim = 4;
    int gen_atoms = 8;
    std::uint64_t gen_seed = 1;
    double gen_disorder = 1.0;
    std::string gen_out;
    CLI::App* gen = app.add_subcommand(
        "generate", "Draw a scenario from a named ensemble");
    gen->add_option("--kind", gen_kind,
                    "hermitian-gaussian | normal | projection-valued | "
                    "anderson-tridiagonal | pure-contraction")
        ->required();
    gen->add_option("--dim", gen_dim, "Hilbert space dimension");
    gen->add_option("--atoms", gen_atoms, "Number of atoms");
    gen->add_option("--seed", gen_seed, "Generator seed");
    gen->add_option("--disorder", gen_disorder,
                    "Diagonal half-width for anderson-tridiagonal");
    gen->add_option("--out", gen_out, "Output scenario path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    for (int i = 0; i < 8; ++i) {
        if (subs[i]->parsed()) {
            return run_scenario_command(commands[i], args[i]);
        }
    }

    if (gen->parsed()) {
        rs_scenario* scenario = nullptr;
        if (rs_scenario_generate(gen_kind.c_str(), gen_dim, gen_atoms,
                                 gen_seed, gen_disorder,
                                 &scenario) != RS_OK) {
            return fail_with_last_error();
        }
        int code = 0;
        if (gen_out.empty()) {
            char* text = nullptr;
            if (rs_scenario_to_json(scenario, &text) != RS_OK) {
                code = fail_with_last_error();
            } else {
                std::fputs(text, stdout);
                rs_string_free(text);
            }
        } else {
            if (rs_scenario_save(scenario, gen_out.c_str()) != RS_OK) {
                code = fail_with_last_error();
            } else {
                std::printf("wrote %s\n", gen_out.c_str());
            }
        }
        rs_scenario_free(scenario);
        return code;
    }

    return 0;
}
