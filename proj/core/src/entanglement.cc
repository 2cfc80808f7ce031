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

#include "cohdistill/entanglement.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cohdistill/no_waste.h"
#include "cohdistill/tolerances.h"

namespace cohdistill {

EntanglementSearch ent_intermediate(const SchmidtState &s) {
    size_t d = s.dim();
    if (d < 3) {
        return {std::nullopt, reason::kDimensionBelowThree};
    }
    const PureCoherentState &phi = s.as_coherent();
    double top = phi.weight(0);
    if (top > 0.5 + kInternalTolerance) {
        return {std::nullopt, reason::kTopWeightAboveHalf};
    }
    // weight(3) is 0 for d = 3.
    if (phi.weight(2) - phi.weight(3) < phi.weight(0) - phi.weight(1) - kInternalTolerance) {
        return {std::nullopt, reason::kGapCondition};
    }

    double tail = 0;
    for (size_t i = 3; i < d; ++i) {
        tail += phi.weight(i);
    }
    double needed = std::clamp(1.0 - 2 * top - tail, phi.weight(3), top);
    double phi3_prime = std::clamp(std::sqrt(needed), d > 3 ? phi.amp(3) : 0.0, phi.amp(0));

    std::vector<double> coeffs(phi.amps().begin(), phi.amps().end());
    coeffs[1] = coeffs[0];
    coeffs[2] = phi3_prime;
    SchmidtState intermediate(std::move(coeffs));
    if (!majorizes(intermediate.as_coherent(), phi)) {
        throw std::logic_error("entanglement intermediate is not reachable deterministically");
    }
    bool boundary = std::abs(top - 0.5) <= kInternalTolerance;
    return {EntanglementPlan{std::move(intermediate), phi3_prime, boundary}, {}};
}

OutcomeEnsemble ent_one_step(const SchmidtState &s) {
    return outcome_probabilities(s.as_coherent());
}

OutcomeEnsemble ent_distill(const SchmidtState &s) {
    EntanglementSearch search = ent_intermediate(s);
    if (!search.feasible()) {
        throw InfeasibleError(search.reason);
    }
    const EntanglementPlan &plan = *search.plan;
    OutcomeEnsemble ensemble = outcome_probabilities(plan.intermediate.as_coherent());
    OutcomeEnsemble one_step = ent_one_step(s);

    const PureCoherentState &phi = s.as_coherent();
    double top = phi.weight(0);
    double prime2 = plan.phi3_prime * plan.phi3_prime;
    if (ensemble.probability(1) != 0) {
        throw std::logic_error("separable outcome survived the intermediate step");
    }
    if (std::abs(ensemble.probability(2) - 2 * (top - prime2)) > kInternalTolerance ||
        std::abs(ensemble.probability(3) - 3 * (prime2 - phi.weight(3))) > kInternalTolerance) {
        throw std::logic_error("p_2 or p_3 disagrees with the intermediate coefficients");
    }
    for (size_t q = 4; q <= s.dim(); ++q) {
        if (std::abs(ensemble.probability(q) - one_step.probability(q)) > kInternalTolerance) {
            throw std::logic_error("intermediate step changed p_q for q >= 4");
        }
    }
    return ensemble;
}

double max_distilled_entanglement(const SchmidtState &s) {
    const PureCoherentState &phi = s.as_coherent();
    double total = 0;
    for (size_t j = 1; j <= s.dim(); ++j) {
        double jd = static_cast<double>(j);
        total += (phi.weight(j - 1) - phi.weight(j)) * jd * std::log(jd);
    }
    return total;
}

}  // namespace cohdistill
