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

#include "cohdistill/invariants.h"

#include <cmath>
#include <exception>
#include <functional>
#include <sstream>

#include "cohdistill/entanglement.h"
#include "cohdistill/no_waste.h"
#include "cohdistill/protocol.h"
#include "cohdistill/tolerances.h"

namespace cohdistill {

namespace {

std::string format_number(double x) {
    std::ostringstream out;
    out.precision(3);
    out << x;
    return out.str();
}

/// Wraps a check so that internal-consistency exceptions become failures.
InvariantCheck run(const std::string &name, const std::function<InvariantCheck()> &body) {
    try {
        return body();
    } catch (const std::exception &e) {
        return {name, false, e.what()};
    }
}

}  // namespace

std::vector<InvariantCheck> check_invariants(const PureCoherentState &s) {
    const size_t d = s.dim();
    std::vector<InvariantCheck> checks;

    checks.push_back(run("channel_completeness", [&]() -> InvariantCheck {
        auto report = verify_sio(build_channel(s));
        return {"channel_completeness", report.completeness_deviation < kInternalTolerance,
                "max deviation " + format_number(report.completeness_deviation)};
    }));

    checks.push_back(run("strict_incoherence", [&]() -> InvariantCheck {
        return {"strict_incoherence", verify_sio(build_channel(s)).sio_ok, ""};
    }));

    checks.push_back(run("kraus_images", [&]() -> InvariantCheck {
        auto channel = build_channel(s);
        auto ensemble = outcome_probabilities(s);
        double worst_prob = 0;
        double worst_state = 0;
        for (size_t q = 1; q <= d; ++q) {
            auto image = apply_kraus(channel.at_level(q), s);
            worst_prob = std::max(worst_prob, std::abs(image.probability - ensemble.probability(q)));
            if (!image.has_outcome()) {
                continue;
            }
            double uniform = 1 / std::sqrt(static_cast<double>(q));
            for (size_t i = 0; i < d; ++i) {
                worst_state = std::max(worst_state, std::abs(image.post->amp(i) - (i < q ? uniform : 0.0)));
            }
        }
        bool ok = worst_prob <= kInternalTolerance && worst_state <= kInternalTolerance;
        return {"kraus_images", ok,
                "probability error " + format_number(worst_prob) + ", state error " + format_number(worst_state)};
    }));

    checks.push_back(run("optimality", [&]() -> InvariantCheck {
        double best = max_success_probability(s);
        double top = outcome_probabilities(s).probability(d);
        return {"optimality", std::abs(best - top) <= kInternalTolerance, "p_d = " + format_number(top)};
    }));

    checks.push_back(run("monotonicity", [&]() -> InvariantCheck {
        double c_in = l1_coherence(s);
        double c_out = average_output_coherence(s);
        return {"monotonicity", c_in >= c_out - kInternalTolerance,
                "c_in " + format_number(c_in) + " >= c_out " + format_number(c_out)};
    }));

    checks.push_back(run("closed_forms", [&]() -> InvariantCheck {
        // Both functions throw if a closed form disagrees with its sum.
        average_output_coherence(s);
        coherence_loss(s);
        return {"closed_forms", true, ""};
    }));

    checks.push_back(run("no_waste", [&]() -> InvariantCheck {
        if (d < 2) {
            return {"no_waste", true, "not applicable: dimension 1"};
        }
        auto search = find_intermediate(s);
        if (!search.feasible()) {
            return {"no_waste", true, "not applicable: " + search.reason};
        }
        auto result = two_step_distill(s);
        bool ok = majorizes(result.plan.chi, s) && result.ensemble.probability(1) == 0 &&
                  result.ensemble.average_coherence() <= average_output_coherence(s) + kInternalTolerance;
        return {"no_waste", ok, "k = " + std::to_string(result.plan.k)};
    }));

    checks.push_back(run("entanglement_adapter", [&]() -> InvariantCheck {
        SchmidtState schmidt(s);
        auto a = ent_one_step(schmidt);
        auto b = outcome_probabilities(s);
        bool ok = true;
        for (size_t q = 1; q <= d; ++q) {
            ok = ok && a.probability(q) == b.probability(q);
        }
        auto search = ent_intermediate(schmidt);
        if (!search.feasible()) {
            return {"entanglement_adapter", ok, "no intermediate: " + search.reason};
        }
        ent_distill(schmidt);
        ok = ok && max_distilled_entanglement(search.plan->intermediate) <=
                       max_distilled_entanglement(schmidt) + kInternalTolerance;
        return {"entanglement_adapter", ok, ""};
    }));

    return checks;
}

}  // namespace cohdistill
