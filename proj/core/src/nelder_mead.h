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

#ifndef COHDISTILL_SRC_NELDER_MEAD_H
#define COHDISTILL_SRC_NELDER_MEAD_H

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace cohdistill::internal {

struct NelderMeadOptions {
    double initial_step = 1.0;
    /// Stop once the spread of simplex values is below f_tolerance and every
    /// vertex is within x_tolerance (max-norm) of the best one.
    double f_tolerance = 1e-15;
    double x_tolerance = 1e-10;
    size_t max_evaluations = 20000;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value;
    size_t evaluations;
};

/// Derivative-free minimization (standard reflection/expansion/contraction/
/// shrink coefficients 1, 2, 1/2, 1/2). +inf is a valid objective value and
/// marks points to move away from.
NelderMeadResult nelder_mead(
    const std::function<double(std::span<const double>)> &objective,
    std::vector<double> start,
    const NelderMeadOptions &options = {});

}  // namespace cohdistill::internal

#endif
