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

#include "cohdistill/loss_optimizer.h"

#include <algorithm>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "cohdistill/counter_rng.h"
#include "cohdistill/protocol.h"
#include "cohdistill/state.h"
#include "nelder_mead.h"

namespace cohdistill {

namespace {

constexpr double kEndpointTolerance = 1e-12;
constexpr double kProjectionResidual = 1e-9;

/// 2 sum_i (i - 1) psi_i^2 for normalized, sorted amplitudes.
double output_coherence(std::span<const double> amps) {
    double total = 0;
    for (size_t i = 0; i < amps.size(); ++i) {
        total += static_cast<double>(i) * amps[i] * amps[i];
    }
    return 2 * total;
}

double input_coherence(std::span<const double> amps) {
    double sum = 0;
    double squares = 0;
    for (double a : amps) {
        sum += a;
        squares += a * a;
    }
    return sum * sum / squares - 1.0;
}

std::vector<double> basis_state(size_t d) {
    std::vector<double> amps(d, 0.0);
    amps[0] = 1.0;
    return amps;
}

TradeoffPoint make_point(std::vector<double> amps, CurveTag tag, std::optional<double> alpha) {
    // Round-trip through the canonical state type to enforce its invariants.
    PureCoherentState state(std::move(amps));
    TradeoffPoint p;
    p.c_in = l1_coherence(state);
    p.c_out = output_coherence(state.amps());
    p.amps.assign(state.amps().begin(), state.amps().end());
    p.tag = tag;
    p.alpha = alpha;
    return p;
}

TradeoffPoint harmonic_point(size_t d, double alpha) {
    if (std::isinf(alpha)) {
        return make_point(basis_state(d), CurveTag::kHarmonic, alpha);
    }
    auto state = harmonic_power_state(d, alpha);
    return make_point({state.amps().begin(), state.amps().end()}, CurveTag::kHarmonic, alpha);
}

void check_range(size_t d, double c_target) {
    if (d < 2) {
        throw std::invalid_argument("dimension must be at least 2");
    }
    double top = static_cast<double>(d - 1);
    if (!std::isfinite(c_target) || c_target < -kEndpointTolerance || c_target > top + kEndpointTolerance) {
        throw std::invalid_argument("target coherence must lie in [0, d - 1]");
    }
}

/// Maps d - 1 log-increments z to a sorted profile log v, v_d = 1 and
/// v_i = v_{i+1} + exp(z_i).
void log_profile(std::span<const double> z, std::vector<double> &log_v) {
    size_t d = z.size() + 1;
    log_v.assign(d, 0.0);
    double v = 1.0;
    for (size_t i = d - 1; i-- > 0;) {
        v += std::exp(z[i]);
        log_v[i] = std::log(v);
    }
}

/// Amplitudes proportional to v^beta, normalized.
void tilt(std::span<const double> log_v, double beta, std::vector<double> &amps) {
    amps.resize(log_v.size());
    double top = beta * log_v[0];
    double squares = 0;
    for (size_t i = 0; i < log_v.size(); ++i) {
        amps[i] = std::exp(beta * log_v[i] - top);
        squares += amps[i] * amps[i];
    }
    double scale = 1.0 / std::sqrt(squares);
    for (double &a : amps) {
        a *= scale;
    }
}

/// Power-tilts the profile so that its l1 coherence equals c_target. The
/// coherence of v^beta falls monotonically from d - 1 (beta = 0) towards 0.
bool project_to_target(std::span<const double> log_v, double c_target, std::vector<double> &amps) {
    if (!std::all_of(log_v.begin(), log_v.end(), [](double x) {
            return std::isfinite(x);
        })) {
        return false;
    }
    auto residual = [&](double beta) {
        tilt(log_v, beta, amps);
        return input_coherence(amps) - c_target;
    };
    double lo = 0;
    double hi = 1;
    double f_lo = residual(lo);
    double f_hi = residual(hi);
    if (!(f_lo > 0)) {
        return false;
    }
    while (f_hi > 0) {
        lo = hi;
        f_lo = f_hi;
        hi *= 2;
        if (hi > 1e7) {
            return false;
        }
        f_hi = residual(hi);
    }
    if (!(f_hi <= 0)) {
        return false;
    }
    double beta = hi;
    if (f_hi != 0) {
        boost::uintmax_t max_iter = 200;
        auto bracket = boost::math::tools::toms748_solve(
            residual, lo, hi, f_lo, f_hi, boost::math::tools::eps_tolerance<double>(52), max_iter);
        beta = 0.5 * (bracket.first + bracket.second);
    }
    return std::abs(residual(beta)) <= kProjectionResidual;
}

std::vector<double> log_increments(std::span<const double> amps) {
    size_t d = amps.size();
    std::vector<double> z(d - 1);
    for (size_t i = 0; i + 1 < d; ++i) {
        z[i] = std::log((amps[i] - amps[i + 1]) / amps[d - 1]);
    }
    return z;
}

}  // namespace

std::vector<TradeoffPoint> harmonic_curve(size_t d, std::span<const double> alphas) {
    if (d < 2) {
        throw std::invalid_argument("dimension must be at least 2");
    }
    std::vector<TradeoffPoint> points;
    points.reserve(alphas.size());
    for (double alpha : alphas) {
        if (std::isnan(alpha) || alpha < 0) {
            throw std::invalid_argument("alpha must be nonnegative");
        }
        points.push_back(harmonic_point(d, alpha));
    }
    return points;
}

double harmonic_alpha_for_coherence(size_t d, double c_target) {
    check_range(d, c_target);
    if (c_target <= kEndpointTolerance) {
        return std::numeric_limits<double>::infinity();
    }
    if (c_target >= static_cast<double>(d - 1) - kEndpointTolerance) {
        return 0.0;
    }
    auto coherence = [d](double alpha) {
        return l1_coherence(harmonic_power_state(d, alpha));
    };
    double lo = 0;
    double hi = 1;
    while (coherence(hi) > c_target) {
        lo = hi;
        hi *= 2;
    }
    for (int iter = 0; iter < 200 && hi - lo > 4 * std::numeric_limits<double>::epsilon() * hi; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (coherence(mid) > c_target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    double alpha = 0.5 * (lo + hi);
    if (std::abs(coherence(alpha) - c_target) > 1e-9) {
        throw std::logic_error("harmonic exponent bisection did not converge");
    }
    return alpha;
}

TradeoffPoint min_output_coherence(size_t d, double c_target, const OptimizerOptions &options) {
    check_range(d, c_target);
    if (c_target <= kEndpointTolerance) {
        return make_point(basis_state(d), CurveTag::kOptimized, std::nullopt);
    }
    if (c_target >= static_cast<double>(d - 1) - kEndpointTolerance) {
        return make_point(std::vector<double>(d, 1.0 / std::sqrt(static_cast<double>(d))), CurveTag::kOptimized,
                          std::nullopt);
    }

    TradeoffPoint harmonic = harmonic_point(d, harmonic_alpha_for_coherence(d, c_target));
    std::vector<double> best_amps = harmonic.amps;
    double best_value = harmonic.c_out;

    std::vector<double> log_v;
    std::vector<double> amps;
    auto objective = [&](std::span<const double> z) {
        log_profile(z, log_v);
        if (!project_to_target(log_v, c_target, amps)) {
            return std::numeric_limits<double>::infinity();
        }
        return output_coherence(amps);
    };

    CounterRng master(options.seed);
    size_t restarts = std::max<size_t>(options.restarts, 1);
    for (size_t r = 0; r < restarts; ++r) {
        std::vector<double> start;
        if (r == 0) {
            start = log_increments(harmonic.amps);
        }
        if (r != 0 || !std::all_of(start.begin(), start.end(), [](double z) {
                return std::isfinite(z);
            })) {
            CounterRng stream = master.substream(r);
            start.resize(d - 1);
            for (size_t j = 0; j + 1 < d; ++j) {
                start[j] = -6.0 + 12.0 * stream.uniform(j);
            }
        }

        // Re-seed the simplex around the incumbent until it stops improving.
        internal::NelderMeadResult result = internal::nelder_mead(objective, start);
        for (int round = 0; round < 8; ++round) {
            internal::NelderMeadOptions polish;
            polish.initial_step = 0.1;
            auto next = internal::nelder_mead(objective, result.x, polish);
            bool improved = next.value < result.value - 1e-15;
            if (next.value < result.value) {
                result = std::move(next);
            }
            if (!improved) {
                break;
            }
        }
        if (result.value < best_value) {
            log_profile(result.x, log_v);
            if (project_to_target(log_v, c_target, amps)) {
                best_value = output_coherence(amps);
                best_amps = amps;
            }
        }
    }

    TradeoffPoint point = make_point(std::move(best_amps), CurveTag::kOptimized, std::nullopt);
    if (std::abs(point.c_in - c_target) > 1e-6) {
        throw std::logic_error("optimized point violates the coherence constraint");
    }
    return point;
}

std::vector<SweepRow> figure2_sweep(size_t d, size_t n_points, const OptimizerOptions &options) {
    if (d < 2 || n_points < 2) {
        throw std::invalid_argument("sweep needs d >= 2 and at least 2 points");
    }
    double top = static_cast<double>(d - 1);
    std::vector<SweepRow> rows;
    rows.reserve(n_points);
    for (size_t j = 0; j < n_points; ++j) {
        double c = j + 1 == n_points ? top : top * static_cast<double>(j) / static_cast<double>(n_points - 1);
        SweepRow row{c, harmonic_point(d, harmonic_alpha_for_coherence(d, c)), min_output_coherence(d, c, options)};
        if (row.optimized.c_out > row.harmonic.c_out + 1e-6) {
            throw std::logic_error("optimized curve lies above the harmonic curve");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_sweep_csv(std::ostream &out, std::span<const SweepRow> rows) {
    auto num = [](double x) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.12g", x);
        return std::string(buf);
    };
    out << "curve,alpha,c_in,c_out,gap\n";
    for (const auto &row : rows) {
        std::string gap = num(row.gap());
        std::string alpha = row.harmonic.alpha ? num(*row.harmonic.alpha) : "";
        out << "harmonic," << alpha << ',' << num(row.harmonic.c_in) << ',' << num(row.harmonic.c_out) << ','
            << gap << '\n';
        out << "optimized,," << num(row.optimized.c_in) << ',' << num(row.optimized.c_out) << ',' << gap << '\n';
    }
}

}  // namespace cohdistill
