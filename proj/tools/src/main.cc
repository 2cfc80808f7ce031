// Copyright 2026 The cohdistill Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <string>

#include "CLI/CLI11.hpp"
#include "commands.h"

using namespace cohdistill::cli;

int main(int argc, char **argv) {
    CLI::App app{"Coherence and entanglement distillation with strictly incoherent channels."};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions options;
    std::string format = "json";
    app.add_option("--seed", options.seed, "Seed for sampling and optimizer restarts")->capture_default_str();
    app.add_option("--out", options.out, "Write the report or CSV here instead of stdout");
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

    std::string state_path;
    auto add_state_command = [&](const char *name, const char *help) {
        auto *cmd = app.add_subcommand(name, help);
        cmd->add_option("state", state_path, "State file (JSON)")->required();
        return cmd;
    };
    auto *distill = add_state_command("distill", "One-step distillation report");
    auto *nowaste = add_state_command("nowaste", "Two-step distillation through an intermediate state");
    auto *entangle = add_state_command("entangle", "Two-step entanglement distillation on Schmidt coefficients");
    auto *verify = add_state_command("verify", "Run the full invariant suite on a state");

    SampleOptions sample;
    auto *sample_cmd = add_state_command("sample", "Sample distillation outcomes");
    sample_cmd->add_option("--n", sample.n, "Number of samples")->capture_default_str();
    sample_cmd->add_option("--workers", sample.workers, "Worker threads; counts do not depend on this")
        ->capture_default_str();
    sample_cmd->add_flag("--two-step", sample.two_step, "Sample the two-step ensemble");

    Figure2Options figure;
    auto *figure2 = app.add_subcommand("figure2", "Input/output coherence tradeoff sweep as CSV");
    figure2->add_option("--dim", figure.dim, "Dimension")->capture_default_str();
    figure2->add_option("--points", figure.points, "Number of matched points")->capture_default_str();
    figure2->add_option("--restarts", figure.restarts, "Optimizer restarts per point")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    }
    options.format = format == "csv" ? Format::kCsv : Format::kJson;

    if (distill->parsed()) {
        return run_distill(state_path, options, std::cout, std::cerr);
    }
    if (nowaste->parsed()) {
        return run_nowaste(state_path, options, std::cout, std::cerr);
    }
    if (entangle->parsed()) {
        return run_entangle(state_path, options, std::cout, std::cerr);
    }
    if (verify->parsed()) {
        return run_verify(state_path, options, std::cout, std::cerr);
    }
    if (sample_cmd->parsed()) {
        return run_sample(state_path, sample, options, std::cout, std::cerr);
    }
    return run_figure2(figure, options, std::cout, std::cerr);
}
