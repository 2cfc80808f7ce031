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

#ifndef COHDISTILL_NO_WASTE_H
#define COHDISTILL_NO_WASTE_H

#include <optional>
#include <stdexcept>
#include <string>

#include "cohdistill/protocol.h"
#include "cohdistill/state.h"

namespace cohdistill {

/// Raised when a two-step protocol is requested for an input that admits no
/// valid intermediate state. what() names the failed condition.
class InfeasibleError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

namespace reason {
inline constexpr const char *kTopWeightTooLarge = "top weight too large";
inline constexpr const char *kNoValidK = "no valid k";
}  // namespace reason

/// Intermediate state chi = (psi_1, ..., psi_1, psi', psi_{k+2}, ..., psi_d)
/// with k leading copies of psi_1.
struct IntermediatePlan {
    size_t k;
    double psi_prime;
    PureCoherentState chi;
};

struct IntermediateSearch {
    std::optional<IntermediatePlan> plan;
    /// Empty when feasible.
    std::string reason;

    bool feasible() const {
        return plan.has_value();
    }
};

/// Searches k from d down to 2 for an intermediate state that equalizes the
/// k leading weights, keeps psi_d (so p_d = d psi_d^2 is untouched) and is
/// reachable deterministically from `s`.
///
/// k = d is accepted only for the uniform state and k = d - 1 only if the
/// required psi' coincides with psi_d; for 2 <= k <= d - 2 the condition is
/// psi_{k+2}^2 <= psi'^2 <= psi_1^2 with psi'^2 = 1 - k psi_1^2 - sum_{i>=k+2} psi_i^2.
/// Inputs with psi_1^2 >= 1/2 (other than the uniform d = 2 state) are
/// rejected as reason::kTopWeightTooLarge. Requires d >= 2.
IntermediateSearch find_intermediate(const PureCoherentState &s);

struct TwoStepResult {
    IntermediatePlan plan;
    /// Outcome probabilities of the channel built for plan.chi; p_q = 0 for q < k.
    OutcomeEnsemble ensemble;
};

/// psi -> chi (deterministic) -> {(p_q, Psi_q)}_{q=k..d}. Throws InfeasibleError.
TwoStepResult two_step_distill(const PureCoherentState &s);

}  // namespace cohdistill

#endif
