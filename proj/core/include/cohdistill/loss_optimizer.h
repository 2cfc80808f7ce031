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

#ifndef COHDISTILL_LOSS_OPTIMIZER_H
#define COHDISTILL_LOSS_OPTIMIZER_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace cohdistill {

enum class CurveTag { kHarmonic, kOptimized };

/// A point of the output-vs-input coherence trade-off.
struct TradeoffPoint {
    double c_in = 0;
    double c_out = 0;
    std::vector<double> amps;
    CurveTag tag = CurveTag::kHarmonic;
    /// Exponent of the harmonic power state; +inf for the (1, 0, ..., 0) limit.
    std::optional<double> alpha;
};

/// One point per alpha along the harmonic power states of dimension d.
std::vector<TradeoffPoint> harmonic_curve(size_t d, std::span<const double> alphas);

/// Exponent alpha whose harmonic power state has l1 coherence c_target, found
/// by bisection (c_in is strictly decreasing in alpha). Returns +inf for
/// c_target = 0 and 0 for c_target = d - 1.
double harmonic_alpha_for_coherence(size_t d, double c_target);

struct OptimizerOptions {
    size_t restarts = 32;
    uint64_t seed = 0x5EED;
};

/// Minimizes the average output coherence 2 sum_i (i - 1) psi_i^2 over
/// canonical states with l1 coherence exactly c_target.
///
/// Multi-start Nelder-Mead over log-increments of a sorted amplitude profile.
/// The coherence constraint is not penalized; each trial profile is
/// power-tilted (psi_i ~ v_i^beta) with beta solved by TOMS 748 so that every
/// evaluated point is feasible to rounding. Restart 0 starts from the harmonic
/// state with the same c_in; the others are drawn from per-restart substreams
/// of `options.seed`. Throws std::invalid_argument unless 0 <= c_target <= d - 1.
TradeoffPoint min_output_coherence(size_t d, double c_target, const OptimizerOptions &options = {});

struct SweepRow {
    double c_target;
    TradeoffPoint harmonic;
    TradeoffPoint optimized;

    double gap() const {
        return harmonic.c_out - optimized.c_out;
    }
};

/// n_points targets evenly spaced on [0, d - 1] (endpoints included), each
/// paired with the harmonic state of matching c_in and the optimized state.
std::vector<SweepRow> figure2_sweep(size_t d, size_t n_points, const OptimizerOptions &options = {});

/// CSV with header `curve,alpha,c_in,c_out,gap`, one harmonic and one
/// optimized row per sweep row, in sweep order (ascending c_in). Numbers use
/// 12 significant digits; alpha is empty on optimized rows.
void write_sweep_csv(std::ostream &out, std::span<const SweepRow> rows);

}  // namespace cohdistill

#endif
