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

#ifndef COHDISTILL_INVARIANTS_H
#define COHDISTILL_INVARIANTS_H

#include <string>
#include <vector>

#include "cohdistill/state.h"

namespace cohdistill {

struct InvariantCheck {
    std::string name;
    bool passed;
    std::string detail;
};

/// Runs every channel, probability and coherence invariant of the protocols
/// on one state: completeness and strict incoherence of the channel,
/// agreement of each Kraus image with its outcome probability and target
/// state, optimality of p_d, l1 monotonicity, closed-form agreement, the
/// two-step guarantees (when an intermediate state exists) and the
/// entanglement adapter. Checks that do not apply pass with a note.
std::vector<InvariantCheck> check_invariants(const PureCoherentState &s);

}  // namespace cohdistill

#endif
