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

#include "cohdistill/state.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cohdistill/tolerances.h"

namespace cohdistill {

namespace {

double sum_of_squares(std::span<const double> xs) {
    double total = 0;
    for (double x : xs) {
        total += x * x;
    }
    return total;
}

bool within_input_tolerance(double squared_norm) {
    return std::abs(squared_norm - 1.0) <= kInputNormTolerance + kInputNormSlack;
}

void check_magnitude(double m, size_t index) {
    if (!std::isfinite(m) || m < 0) {
        throw std::invalid_argument("amplitude " + std::to_string(index + 1) + " must be finite and nonnegative");
    }
}

}  // namespace

RawPureState::RawPureState(std::vector<PhasedAmplitude> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) {
        throw std::invalid_argument("a state needs at least one amplitude");
    }
    double squared_norm = 0;
    for (size_t i = 0; i < entries_.size(); ++i) {
        auto &e = entries_[i];
        check_magnitude(e.magnitude, i);
        if (!std::isfinite(e.phase)) {
            throw std::invalid_argument("phase " + std::to_string(i + 1) + " must be finite");
        }
        e.phase = std::fmod(e.phase, 2 * std::numbers::pi);
        if (e.phase < 0) {
            e.phase += 2 * std::numbers::pi;
        }
        squared_norm += e.magnitude * e.magnitude;
    }
    if (squared_norm == 0) {
        throw std::invalid_argument("null state");
    }
    norm_deviation_ = std::abs(squared_norm - 1.0);
    if (!within_input_tolerance(squared_norm)) {
        throw std::invalid_argument(
            "squared amplitudes sum to " + std::to_string(squared_norm) + ", not 1 within 1e-9");
    }
}

PureCoherentState::PureCoherentState(std::vector<double> amps) : amps_(std::move(amps)) {
    if (amps_.empty()) {
        throw std::invalid_argument("a state needs at least one amplitude");
    }
    for (size_t i = 0; i < amps_.size(); ++i) {
        check_magnitude(amps_[i], i);
        if (i > 0 && amps_[i] > amps_[i - 1]) {
            throw std::invalid_argument("amplitudes must be nonincreasing (canonicalize unsorted input)");
        }
    }
    double squared_norm = sum_of_squares(amps_);
    if (squared_norm == 0) {
        throw std::invalid_argument("null state");
    }
    if (!within_input_tolerance(squared_norm)) {
        throw std::invalid_argument(
            "squared amplitudes sum to " + std::to_string(squared_norm) + ", not 1 within 1e-9");
    }
    double norm = std::sqrt(squared_norm);
    for (double &a : amps_) {
        a /= norm;
    }
    if (std::abs(sum_of_squares(amps_) - 1.0) > kInternalTolerance) {
        throw std::logic_error("renormalization failed");
    }
}

PureCoherentState PureCoherentState::from_probabilities(std::span<const double> probs) {
    std::vector<double> amps;
    amps.reserve(probs.size());
    for (size_t i = 0; i < probs.size(); ++i) {
        check_magnitude(probs[i], i);
        amps.push_back(std::sqrt(probs[i]));
    }
    return PureCoherentState(std::move(amps));
}

std::vector<double> PureCoherentState::weights() const {
    std::vector<double> w(amps_.size());
    std::transform(amps_.begin(), amps_.end(), w.begin(), [](double a) {
        return a * a;
    });
    return w;
}

size_t PureCoherentState::support() const {
    return static_cast<size_t>(std::count_if(amps_.begin(), amps_.end(), [](double a) {
        return a > 0;
    }));
}

PureCoherentState canonicalize(const RawPureState &raw) {
    std::vector<double> magnitudes;
    magnitudes.reserve(raw.dim());
    for (const auto &e : raw.entries()) {
        magnitudes.push_back(e.magnitude);
    }
    std::stable_sort(magnitudes.begin(), magnitudes.end(), std::greater<>());
    double norm = std::sqrt(sum_of_squares(magnitudes));
    if (norm == 0) {
        throw std::invalid_argument("null state");
    }
    for (double &m : magnitudes) {
        m /= norm;
    }
    return PureCoherentState(std::move(magnitudes));
}

PureCoherentState max_coherent(size_t d) {
    if (d == 0) {
        throw std::invalid_argument("dimension must be positive");
    }
    return PureCoherentState(std::vector<double>(d, 1.0 / std::sqrt(static_cast<double>(d))));
}

double l1_coherence(const PureCoherentState &s) {
    double total = std::accumulate(s.amps().begin(), s.amps().end(), 0.0);
    double c = total * total - 1.0;
    return std::clamp(c, 0.0, static_cast<double>(s.dim() - 1));
}

PureCoherentState harmonic_power_state(size_t d, double alpha) {
    if (d == 0) {
        throw std::invalid_argument("dimension must be positive");
    }
    if (!std::isfinite(alpha) || alpha < 0) {
        throw std::invalid_argument("alpha must be finite and nonnegative");
    }
    std::vector<double> amps(d);
    double harmonic = 0;
    for (size_t i = 0; i < d; ++i) {
        amps[i] = std::pow(static_cast<double>(i + 1), -alpha);
        harmonic += amps[i] * amps[i];
    }
    double scale = 1.0 / std::sqrt(harmonic);
    for (double &a : amps) {
        a *= scale;
    }
    return PureCoherentState(std::move(amps));
}

bool majorizes(const PureCoherentState &x, const PureCoherentState &y, double tolerance) {
    size_t n = std::max(x.dim(), y.dim());
    double partial_x = 0;
    double partial_y = 0;
    for (size_t i = 0; i < n; ++i) {
        partial_x += x.weight(i);
        partial_y += y.weight(i);
        if (partial_x < partial_y - tolerance) {
            return false;
        }
    }
    return true;
}

}  // namespace cohdistill
