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

#ifndef COHDISTILL_ENTANGLEMENT_H
#define COHDISTILL_ENTANGLEMENT_H

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cohdistill/protocol.h"
#include "cohdistill/state.h"

namespace cohdistill {

/// Bipartite pure state sum_i phi_i |ii>, held as its Schmidt coefficients.
/// Same ordering and normalization rules as PureCoherentState, whose formulas
/// it shares.
class SchmidtState {
   public:
    explicit SchmidtState(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    }
    explicit SchmidtState(PureCoherentState coeffs) : coeffs_(std::move(coeffs)) {
    }
    /// From the Schmidt spectrum lambda_j = phi_j^2.
    static SchmidtState from_spectrum(std::span<const double> lambdas) {
        return SchmidtState(PureCoherentState::from_probabilities(lambdas));
    }

    size_t dim() const {
        return coeffs_.dim();
    }
    std::span<const double> coeffs() const {
        return coeffs_.amps();
    }
    std::vector<double> spectrum() const {
        return coeffs_.weights();
    }
    const PureCoherentState &as_coherent() const {
        return coeffs_;
    }

    bool operator==(const SchmidtState &other) const = default;

   private:
    PureCoherentState coeffs_;
};

namespace reason {
inline constexpr const char *kDimensionBelowThree = "dimension must be at least 3";
inline constexpr const char *kTopWeightAboveHalf = "phi_1^2 <= 1/2 violated";
inline constexpr const char *kGapCondition = "phi_3^2 - phi_4^2 >= phi_1^2 - phi_2^2 violated";
}  // namespace reason

/// phi = (phi_1, phi_1, phi_3', phi_4, ..., phi_d).
struct EntanglementPlan {
    SchmidtState intermediate;
    double phi3_prime;
    /// phi_1^2 == 1/2 (accepted here, rejected on the coherence side).
    bool at_boundary;
};

struct EntanglementSearch {
    std::optional<EntanglementPlan> plan;
    std::string reason;

    bool feasible() const {
        return plan.has_value();
    }
};

/// Equalizes the two leading Schmidt coefficients, with
/// phi_3'^2 = 1 - 2 phi_1^2 - sum_{i>=4} phi_i^2. Requires d >= 3,
/// phi_1^2 <= 1/2 and phi_3^2 - phi_4^2 >= phi_1^2 - phi_2^2; each failure is
/// reported by name.
EntanglementSearch ent_intermediate(const SchmidtState &s);

/// One-step ensemble: the coherence formulas on the Schmidt coefficients.
OutcomeEnsemble ent_one_step(const SchmidtState &s);

/// Ensemble of phi -> varphi -> {(p_q, Phi_q)}_{q=2..d}. p_1 = 0 and
/// p_q for q >= 4 equal the one-step values. Throws InfeasibleError.
OutcomeEnsemble ent_distill(const SchmidtState &s);

/// <E>_max = sum_j (lambda_j - lambda_{j+1}) j ln j, in nats.
double max_distilled_entanglement(const SchmidtState &s);

}  // namespace cohdistill

#endif
