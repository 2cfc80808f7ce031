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

#ifndef COHDISTILL_TOLERANCES_H
#define COHDISTILL_TOLERANCES_H

namespace cohdistill {

/// Accepted deviation of the squared norm of user-supplied amplitudes from 1.
/// Large enough for hand-typed decimals such as 0.35.
inline constexpr double kInputNormTolerance = 1e-9;

/// Rounding slack added on top of kInputNormTolerance when comparing a
/// decimal sum against it (0.999999999 must be accepted).
inline constexpr double kInputNormSlack = 1e-14;

/// Internal consistency bound for normalization, completeness and the
/// agreement of closed forms with their defining sums.
inline constexpr double kInternalTolerance = 1e-12;

/// Negative probabilities from cancellation at or above this are clamped to 0.
inline constexpr double kNegativeProbabilityClamp = -1e-15;

}  // namespace cohdistill

#endif
