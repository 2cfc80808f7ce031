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

#ifndef COHDISTILL_STATE_H
#define COHDISTILL_STATE_H

#include <cstddef>
#include <span>
#include <vector>

namespace cohdistill {

struct PhasedAmplitude {
    double magnitude;
    double phase;
};

/// A pure state as entered by a user: magnitudes with arbitrary phases, in any
/// order. Construction rejects null, negative, non-finite or unnormalized
/// input (squared norm off by more than kInputNormTolerance). Phases are
/// reduced into [0, 2pi); they never influence anything downstream.
class RawPureState {
   public:
    explicit RawPureState(std::vector<PhasedAmplitude> entries);

    size_t dim() const {
        return entries_.size();
    }
    std::span<const PhasedAmplitude> entries() const {
        return entries_;
    }
    /// |sum of squared magnitudes - 1| as supplied.
    double norm_deviation() const {
        return norm_deviation_;
    }

   private:
    std::vector<PhasedAmplitude> entries_;
    double norm_deviation_;
};

/// Canonical pure coherent state: real nonnegative amplitudes in
/// nonincreasing order with unit 2-norm. Zero amplitudes are kept, so the
/// dimension is always explicit.
class PureCoherentState {
   public:
    /// Requires nonincreasing, finite, nonnegative amplitudes whose squared
    /// norm is within kInputNormTolerance of 1. The stored vector is
    /// renormalized. Throws std::invalid_argument otherwise.
    explicit PureCoherentState(std::vector<double> amps);

    /// Builds the state with amplitudes sqrt(probs[i]). probs must already be
    /// nonincreasing.
    static PureCoherentState from_probabilities(std::span<const double> probs);

    size_t dim() const {
        return amps_.size();
    }
    std::span<const double> amps() const {
        return amps_;
    }
    /// 0-based amplitude access.
    double amp(size_t i) const {
        return amps_[i];
    }
    /// Squared amplitude, 0-based. Returns 0 past the end.
    double weight(size_t i) const {
        return i < amps_.size() ? amps_[i] * amps_[i] : 0.0;
    }
    std::vector<double> weights() const;

    /// Number of strictly positive amplitudes (they form a prefix).
    size_t support() const;

    bool operator==(const PureCoherentState &other) const = default;

   private:
    std::vector<double> amps_;
};

/// Drops phases, sorts magnitudes nonincreasing (stable) and renormalizes.
PureCoherentState canonicalize(const RawPureState &raw);

/// Uniform superposition of the first d basis states.
PureCoherentState max_coherent(size_t d);

/// l1 norm of coherence of a pure state, (sum_i psi_i)^2 - 1, in [0, d-1].
double l1_coherence(const PureCoherentState &s);

/// psi_i = i^-alpha / sqrt(H_d^(2 alpha)) with the generalized harmonic number
/// H_d^(2 alpha) = sum_j j^(-2 alpha).
PureCoherentState harmonic_power_state(size_t d, double alpha);

/// True iff the squared-amplitude vector of x majorizes that of y, i.e. every
/// partial sum of x's weights is at least the matching partial sum of y's
/// (within `tolerance`). The shorter state is padded with zeros. Equivalent to
/// the deterministic reachability of x from y.
bool majorizes(const PureCoherentState &x, const PureCoherentState &y, double tolerance = 1e-12);

}  // namespace cohdistill

#endif
