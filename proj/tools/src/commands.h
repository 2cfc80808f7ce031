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

#ifndef COHDISTILL_TOOLS_COMMANDS_H
#define COHDISTILL_TOOLS_COMMANDS_H

#include <cstdint>
#include <iosfwd>
#include <string>

namespace cohdistill::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitCheckFailed = 1,
    kExitParse = 2,
    kExitInvalidState = 3,
    kExitInfeasible = 4,
    kExitIo = 5,
};

enum class Format { kJson, kCsv };

struct GlobalOptions {
    uint64_t seed = 0x5EED;
    /// Empty means stdout.
    std::string out;
    Format format = Format::kJson;
};

struct SampleOptions {
    uint64_t n = 1000000;
    size_t workers = 1;
    /// Sample the two-step (intermediate state) ensemble instead of the
    /// one-step ensemble.
    bool two_step = false;
};

struct Figure2Options {
    size_t dim = 4;
    size_t points = 50;
    size_t restarts = 32;
};

/// Each command writes its report to options.out (or `out`) and diagnostics
/// to `err`, and returns the process exit code.
int run_distill(const std::string &state_path, const GlobalOptions &options, std::ostream &out, std::ostream &err);
int run_nowaste(const std::string &state_path, const GlobalOptions &options, std::ostream &out, std::ostream &err);
int run_entangle(const std::string &state_path, const GlobalOptions &options, std::ostream &out, std::ostream &err);
int run_verify(const std::string &state_path, const GlobalOptions &options, std::ostream &out, std::ostream &err);
int run_sample(const std::string &state_path, const SampleOptions &sample, const GlobalOptions &options,
               std::ostream &out, std::ostream &err);
int run_figure2(const Figure2Options &figure, const GlobalOptions &options, std::ostream &out, std::ostream &err);

/// Rounds to 12 significant digits, the precision of every reported number.
double report_number(double x);

}  // namespace cohdistill::cli

#endif
