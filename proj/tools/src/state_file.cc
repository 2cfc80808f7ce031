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

#include "state_file.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "nlohmann/json.hpp"

namespace cohdistill::cli {

namespace {

std::vector<double> number_array(const nlohmann::json &doc, const char *key) {
    const auto &node = doc.at(key);
    if (!node.is_array()) {
        throw StateFileError(std::string("field '") + key + "' must be an array");
    }
    std::vector<double> values;
    for (const auto &x : node) {
        if (!x.is_number()) {
            throw StateFileError(std::string("field '") + key + "' must contain only numbers");
        }
        values.push_back(x.get<double>());
    }
    return values;
}

}  // namespace

const char *field_name(StateField field) {
    switch (field) {
        case StateField::kAmps:
            return "amps";
        case StateField::kProbs:
            return "probs";
        case StateField::kSchmidt:
            return "schmidt";
    }
    return "";
}

StateFile parse_state_file(const std::string &text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw StateFileError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw StateFileError("state file must be a JSON object");
    }
    for (const auto &item : doc.items()) {
        const auto &key = item.key();
        if (key != "dim" && key != "amps" && key != "probs" && key != "schmidt" && key != "phases") {
            throw StateFileError("unknown field '" + key + "'");
        }
    }

    StateFile file;
    if (!doc.contains("dim") || !doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 1) {
        throw StateFileError("field 'dim' must be a positive integer");
    }
    file.dim = doc["dim"].get<size_t>();

    int present = 0;
    for (auto field : {StateField::kAmps, StateField::kProbs, StateField::kSchmidt}) {
        if (doc.contains(field_name(field))) {
            ++present;
            file.field = field;
        }
    }
    if (present != 1) {
        throw StateFileError("exactly one of 'amps', 'probs', 'schmidt' is required");
    }
    file.values = number_array(doc, field_name(file.field));
    if (file.values.size() != file.dim) {
        throw StateFileError("field '" + std::string(field_name(file.field)) + "' has " +
                             std::to_string(file.values.size()) + " entries, expected dim = " +
                             std::to_string(file.dim));
    }
    if (doc.contains("phases")) {
        file.phases = number_array(doc, "phases");
        if (file.phases->size() != file.dim) {
            throw StateFileError("field 'phases' must have dim entries");
        }
    }
    return file;
}

StateFile load_state_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw IoError("cannot read '" + path + "'");
    }
    return parse_state_file(buffer.str());
}

LoadedState to_state(const StateFile &file) {
    std::vector<PhasedAmplitude> entries;
    for (size_t i = 0; i < file.values.size(); ++i) {
        double v = file.values[i];
        double magnitude = v;
        if (file.field == StateField::kProbs) {
            if (v < 0) {
                throw std::invalid_argument("negative probability at index " + std::to_string(i));
            }
            magnitude = std::sqrt(v);
        }
        entries.push_back({magnitude, file.phases ? (*file.phases)[i] : 0.0});
    }
    RawPureState raw(std::move(entries));
    return {file, raw.norm_deviation(), canonicalize(raw)};
}

}  // namespace cohdistill::cli
