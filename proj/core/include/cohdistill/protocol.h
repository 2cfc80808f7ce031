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

#ifndef COHDISTILL_PROTOCOL_H
#define COHDISTILL_PROTOCOL_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cohdistill/state.h"

namespace cohdistill {

/// Diagonal Kraus operator of outcome level q (1-based). Only the first q
/// diagonal entries may be nonzero. Stored as its diagonal; the dense matrix
/// is only materialized by verify_sio.
class KrausOperator {
   public:
    KrausOperator(size_t level, std::vector<double> diag);

    size_t level() const {
        return level_;
    }
    size_t dim() const {
        return diag_.size();
    }
    std::span<const double> diag() const {
        return diag_;
    }
    bool is_zero() const;

   private:
    size_t level_;
    std::vector<double> diag_;
};

/// Ordered family K_1..K_d. The constructor only checks shape (levels 1..d in
/// order, equal dimensions); completeness and strict incoherence are checked
/// by verify_sio, so hand-built or perturbed channels can be represented.
class DistillationChannel {
   public:
    explicit DistillationChannel(std::vector<KrausOperator> kraus);

    size_t dim() const {
        return kraus_.size();
    }
    std::span<const KrausOperator> kraus() const {
        return kraus_;
    }
    /// Operator of outcome level q, 1-based.
    const KrausOperator &at_level(size_t q) const;

   private:
    std::vector<KrausOperator> kraus_;
};

struct Outcome {
    size_t level;
    double probability;
};

/// (level, probability) pairs. Probabilities in [kNegativeProbabilityClamp, 0)
/// are clamped to 0; anything more negative, or a total off 1 by more than
/// kInternalTolerance, is rejected with std::domain_error.
class OutcomeEnsemble {
   public:
    explicit OutcomeEnsemble(std::vector<Outcome> entries);

    std::span<const Outcome> entries() const {
        return entries_;
    }
    /// Probability of the given level; 0 if the level is absent.
    double probability(size_t level) const;
    /// sum_q p_q (q - 1): ensemble-average l1 coherence of the outputs.
    double average_coherence() const;

   private:
    std::vector<Outcome> entries_;
};

/// p_d = d psi_d^2 and p_q = q (psi_q^2 - psi_{q+1}^2) for q < d.
OutcomeEnsemble outcome_probabilities(const PureCoherentState &s);

/// K_q = sqrt(p_q / q) diag(1/psi_1, ..., 1/psi_q, 0, ...).
///
/// Operators with p_q = 0 are built as zero operators without dividing. When
/// the state has zero amplitudes (support r < d) the diagonal entries of K_d
/// past the support are set to 1, which completes the channel on the unused
/// subspace without touching any outcome on the input state.
DistillationChannel build_channel(const PureCoherentState &s);

struct KrausImage {
    double probability = 0;
    /// Normalized (and canonicalized) image; empty when the image is zero.
    std::optional<PureCoherentState> post;

    bool has_outcome() const {
        return post.has_value();
    }
};

KrausImage apply_kraus(const KrausOperator &k, const PureCoherentState &s);

struct ChannelReport {
    /// max_ij |(sum_q K_q^dagger K_q - I)_ij|
    double completeness_deviation = 0;
    /// Every K_q |i><i| K_q^dagger and K_q^dagger |i><i| K_q is diagonal.
    bool sio_ok = false;
};

ChannelReport verify_sio(const DistillationChannel &c);

/// min_k d sum_{i>=k} psi_i^2 / (d - k + 1), evaluated explicitly. Checked
/// against the closed form d psi_d^2.
double max_success_probability(const PureCoherentState &s);

/// Ensemble average of output l1 coherence, checked against the closed form
/// 2 sum_i (i - 1) psi_i^2.
double average_output_coherence(const PureCoherentState &s);

/// l1_coherence(s) - average_output_coherence(s), checked against
/// (sum_i psi_i)^2 - 2 sum_i i psi_i^2 + 1. Never negative.
double coherence_loss(const PureCoherentState &s);

/// n draws from the outcome distribution of `ensemble` by inverse CDF.
/// counts[q - 1] is the number of draws of level q. The result depends only
/// on (ensemble, n, seed), not on `workers`.
std::vector<uint64_t> sample_ensemble(const OutcomeEnsemble &ensemble, uint64_t n, uint64_t seed, size_t workers = 1);

std::vector<uint64_t> sample_outcomes(const PureCoherentState &s, uint64_t n, uint64_t seed, size_t workers = 1);

struct SampledOutcome {
    size_t level;
    uint64_t count;
    double expected_probability;
    double frequency;
    /// Binomial z-score; empty when the expected probability is 0 or 1
    /// (within kInternalTolerance).
    std::optional<double> z;
    /// For degenerate entries: whether the count equals n * p exactly.
    bool exact_match;
};

/// Compares sampled counts (indexed by level - 1) with the ensemble.
std::vector<SampledOutcome> summarize_counts(const OutcomeEnsemble &ensemble, std::span<const uint64_t> counts);

}  // namespace cohdistill

#endif
