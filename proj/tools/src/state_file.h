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

#ifndef COHDISTILL_TOOLS_STATE_FILE_H
#define COHDISTILL_TOOLS_STATE_FILE_H

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cohdistill/state.h"

namespace cohdistill::cli {

/// Malformed document: bad JSON, missing or duplicate fields, wrong types,
/// length mismatches. Maps to exit code 2.
class StateFileError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// File could not be opened or read. Maps to exit code 5.
class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

enum class StateField { kAmps, kProbs, kSchmidt };

const char *field_name(StateField field);

/// {"dim": d, "amps" | "probs" | "schmidt": [...], "phases": [...]?}
///
/// Exactly one value field is allowed. `amps` and `schmidt` hold amplitudes
/// (Schmidt coefficients for the latter), `probs` holds their squares.
/// `phases` is optional, in radians, and never affects results.
struct StateFile {
    size_t dim = 0;
    StateField field = StateField::kAmps;
    std::vector<double> values;
    std::optional<std::vector<double>> phases;
};

StateFile parse_state_file(const std::string &text);
StateFile load_state_file(const std::string &path);

struct LoadedState {
    StateFile file;
    /// |norm - 1| of the input before renormalization.
    double norm_deviation;
    PureCoherentState state;
};

/// Validates and canonicalizes the values. Throws std::invalid_argument for
/// physically invalid input (negative entries, bad norm, null state).
LoadedState to_state(const StateFile &file);

}  // namespace cohdistill::cli

#endif
