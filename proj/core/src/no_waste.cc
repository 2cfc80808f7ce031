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

#include "cohdistill/no_waste.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cohdistill/tolerances.h"

namespace cohdistill {

namespace {

IntermediatePlan make_plan(const PureCoherentState &s, size_t k, double psi_prime) {
    std::vector<double> amps(s.dim());
    std::fill(amps.begin(), amps.begin() + static_cast<std::ptrdiff_t>(k), s.amp(0));
    if (k < s.dim()) {
        amps[k] = psi_prime;
        for (size_t i = k + 1; i < s.dim(); ++i) {
            amps[i] = s.amp(i);
        }
    }
    IntermediatePlan plan{k, psi_prime, PureCoherentState(std::move(amps))};
    if (!majorizes(plan.chi, s)) {
        throw std::logic_error("intermediate state is not reachable deterministically");
    }
    return plan;
}

}  // namespace

IntermediateSearch find_intermediate(const PureCoherentState &s) {
    size_t d = s.dim();
    if (d < 2) {
        throw std::invalid_argument("the two-step protocol needs dimension at least 2");
    }
    double top = s.weight(0);

    // Uniform input (up to rounding in the entered decimals): the intermediate
    // is the exactly uniform state, so every outcome below d vanishes exactly.
    if (std::abs(top - 1.0 / static_cast<double>(d)) <= kInternalTolerance) {
        auto chi = max_coherent(d);
        double psi_prime = chi.amp(d - 1);
        return {IntermediatePlan{d, psi_prime, std::move(chi)}, {}};
    }
    if (top >= 0.5 - kInternalTolerance) {
        return {std::nullopt, reason::kTopWeightTooLarge};
    }

    // tail[j] = sum_{i >= j} psi_i^2, 0-based.
    std::vector<double> tail(d + 1, 0.0);
    for (size_t i = d; i-- > 0;) {
        tail[i] = tail[i + 1] + s.weight(i);
    }

    for (size_t k = d - 1; k >= 2; --k) {
        // Weight that slot k+1 (0-based k) must carry to keep the state normalized.
        double needed = 1.0 - static_cast<double>(k) * top - tail[k + 1];
        if (k == d - 1) {
            // Slot k+1 is psi_d itself; only acceptable if nothing changes there.
            if (std::abs(needed - s.weight(d - 1)) <= kInternalTolerance) {
                return {make_plan(s, k, s.amp(d - 1)), {}};
            }
            continue;
        }
        double lower = s.weight(k + 1);
        if (needed < lower - kInternalTolerance || needed > top + kInternalTolerance) {
            continue;
        }
        double psi_prime = std::clamp(std::sqrt(std::max(needed, 0.0)), s.amp(k + 1), s.amp(0));
        return {make_plan(s, k, psi_prime), {}};
    }
    return {std::nullopt, reason::kNoValidK};
}

TwoStepResult two_step_distill(const PureCoherentState &s) {
    IntermediateSearch search = find_intermediate(s);
    if (!search.feasible()) {
        throw InfeasibleError(search.reason);
    }
    IntermediatePlan plan = std::move(*search.plan);
    OutcomeEnsemble ensemble = outcome_probabilities(plan.chi);
    for (size_t q = 1; q < plan.k; ++q) {
        if (ensemble.probability(q) != 0) {
            throw std::logic_error("two-step ensemble has weight below level k");
        }
    }
    size_t d = s.dim();
    if (std::abs(ensemble.probability(d) - static_cast<double>(d) * s.weight(d - 1)) > kInternalTolerance) {
        throw std::logic_error("two-step protocol changed the top outcome probability");
    }
    return {std::move(plan), std::move(ensemble)};
}

}  // namespace cohdistill
