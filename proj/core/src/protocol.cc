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

#include "cohdistill/protocol.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "cohdistill/counter_rng.h"
#include "cohdistill/tolerances.h"

namespace cohdistill {

namespace {

void check_agreement(double a, double b, const char *what) {
    if (!(std::abs(a - b) <= kInternalTolerance)) {
        throw std::logic_error(std::string(what) + ": closed form disagrees with its definition");
    }
}

}  // namespace

KrausOperator::KrausOperator(size_t level, std::vector<double> diag) : level_(level), diag_(std::move(diag)) {
    if (level_ == 0 || level_ > diag_.size()) {
        throw std::invalid_argument("Kraus level must lie in 1..d");
    }
    for (double x : diag_) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument("Kraus entries must be finite");
        }
    }
}

bool KrausOperator::is_zero() const {
    return std::all_of(diag_.begin(), diag_.end(), [](double x) {
        return x == 0;
    });
}

DistillationChannel::DistillationChannel(std::vector<KrausOperator> kraus) : kraus_(std::move(kraus)) {
    if (kraus_.empty()) {
        throw std::invalid_argument("a channel needs at least one Kraus operator");
    }
    for (size_t q = 1; q <= kraus_.size(); ++q) {
        const auto &k = kraus_[q - 1];
        if (k.level() != q || k.dim() != kraus_.size()) {
            throw std::invalid_argument("Kraus operators must be K_1..K_d, each of dimension d");
        }
    }
}

const KrausOperator &DistillationChannel::at_level(size_t q) const {
    if (q == 0 || q > kraus_.size()) {
        throw std::out_of_range("Kraus level out of range");
    }
    return kraus_[q - 1];
}

OutcomeEnsemble::OutcomeEnsemble(std::vector<Outcome> entries) : entries_(std::move(entries)) {
    double total = 0;
    for (auto &e : entries_) {
        if (!std::isfinite(e.probability) || e.probability < kNegativeProbabilityClamp) {
            throw std::domain_error("negative outcome probability for level " + std::to_string(e.level));
        }
        e.probability = std::max(e.probability, 0.0);
        total += e.probability;
    }
    if (std::abs(total - 1.0) > kInternalTolerance) {
        throw std::domain_error("outcome probabilities sum to " + std::to_string(total));
    }
}

double OutcomeEnsemble::probability(size_t level) const {
    for (const auto &e : entries_) {
        if (e.level == level) {
            return e.probability;
        }
    }
    return 0;
}

double OutcomeEnsemble::average_coherence() const {
    double total = 0;
    for (const auto &e : entries_) {
        total += e.probability * static_cast<double>(e.level - 1);
    }
    return total;
}

OutcomeEnsemble outcome_probabilities(const PureCoherentState &s) {
    size_t d = s.dim();
    std::vector<Outcome> entries;
    entries.reserve(d);
    for (size_t q = 1; q <= d; ++q) {
        double p = static_cast<double>(q) * (s.weight(q - 1) - s.weight(q));
        entries.push_back({q, p});
    }
    return OutcomeEnsemble(std::move(entries));
}

DistillationChannel build_channel(const PureCoherentState &s) {
    size_t d = s.dim();
    OutcomeEnsemble probs = outcome_probabilities(s);
    std::vector<KrausOperator> kraus;
    kraus.reserve(d);
    for (size_t q = 1; q <= d; ++q) {
        std::vector<double> diag(d, 0.0);
        double p = probs.probability(q);
        if (p > 0) {
            double scale = std::sqrt(p / static_cast<double>(q));
            for (size_t i = 0; i < q; ++i) {
                if (s.amp(i) == 0) {
                    throw std::invalid_argument("state support too small");
                }
                diag[i] = scale / s.amp(i);
            }
        }
        kraus.emplace_back(q, std::move(diag));
    }
    size_t support = s.support();
    if (support < d) {
        std::vector<double> completed(kraus.back().diag().begin(), kraus.back().diag().end());
        for (size_t i = support; i < d; ++i) {
            completed[i] = 1.0;
        }
        kraus.back() = KrausOperator(d, std::move(completed));
    }
    return DistillationChannel(std::move(kraus));
}

KrausImage apply_kraus(const KrausOperator &k, const PureCoherentState &s) {
    if (k.dim() != s.dim()) {
        throw std::invalid_argument("Kraus operator and state dimensions differ");
    }
    std::vector<double> image(s.dim());
    double squared_norm = 0;
    for (size_t i = 0; i < s.dim(); ++i) {
        // Diagonal entries may be negative; |.| is a diagonal unitary away.
        image[i] = std::abs(k.diag()[i] * s.amp(i));
        squared_norm += image[i] * image[i];
    }
    KrausImage result;
    result.probability = squared_norm;
    if (squared_norm == 0) {
        return result;
    }
    double norm = std::sqrt(squared_norm);
    for (double &x : image) {
        x /= norm;
    }
    std::stable_sort(image.begin(), image.end(), std::greater<>());
    result.post.emplace(std::move(image));
    return result;
}

ChannelReport verify_sio(const DistillationChannel &c) {
    const Eigen::Index d = static_cast<Eigen::Index>(c.dim());
    Eigen::MatrixXd total = Eigen::MatrixXd::Zero(d, d);
    Eigen::MatrixXd dense(d, d);
    Eigen::MatrixXd forward(d, d);
    Eigen::MatrixXd adjoint(d, d);
    bool sio_ok = true;
    for (const auto &k : c.kraus()) {
        dense = Eigen::Map<const Eigen::VectorXd>(k.diag().data(), d).asDiagonal();
        total.noalias() += dense.transpose() * dense;
        for (Eigen::Index i = 0; i < d; ++i) {
            // K |i><i| K^dagger and K^dagger |i><i| K are outer products of a
            // column and of a row of K respectively.
            forward.noalias() = dense.col(i) * dense.col(i).transpose();
            adjoint.noalias() = dense.row(i).transpose() * dense.row(i);
            forward.diagonal().setZero();
            adjoint.diagonal().setZero();
            if (forward.cwiseAbs().maxCoeff() != 0 || adjoint.cwiseAbs().maxCoeff() != 0) {
                sio_ok = false;
            }
        }
    }
    total -= Eigen::MatrixXd::Identity(d, d);
    return {total.cwiseAbs().maxCoeff(), sio_ok};
}

double max_success_probability(const PureCoherentState &s) {
    size_t d = s.dim();
    double best = std::numeric_limits<double>::infinity();
    double tail = 0;
    for (size_t k = d; k >= 1; --k) {
        tail += s.weight(k - 1);
        double candidate = static_cast<double>(d) * tail / static_cast<double>(d - k + 1);
        best = std::min(best, candidate);
    }
    check_agreement(best, static_cast<double>(d) * s.weight(d - 1), "max_success_probability");
    return best;
}

double average_output_coherence(const PureCoherentState &s) {
    double ensemble_sum = outcome_probabilities(s).average_coherence();
    double closed = 0;
    for (size_t i = 0; i < s.dim(); ++i) {
        closed += static_cast<double>(i) * s.weight(i);
    }
    closed *= 2;
    check_agreement(ensemble_sum, closed, "average_output_coherence");
    return ensemble_sum;
}

double coherence_loss(const PureCoherentState &s) {
    double loss = l1_coherence(s) - average_output_coherence(s);
    double total = std::accumulate(s.amps().begin(), s.amps().end(), 0.0);
    double weighted = 0;
    for (size_t i = 0; i < s.dim(); ++i) {
        weighted += static_cast<double>(i + 1) * s.weight(i);
    }
    check_agreement(loss, total * total - 2 * weighted + 1, "coherence_loss");
    if (loss < -kInternalTolerance) {
        throw std::logic_error("coherence increased on average");
    }
    return std::max(loss, 0.0);
}

std::vector<uint64_t> sample_ensemble(const OutcomeEnsemble &ensemble, uint64_t n, uint64_t seed, size_t workers) {
    if (n == 0) {
        throw std::invalid_argument("sample count must be positive");
    }
    auto entries = ensemble.entries();
    size_t max_level = 0;
    std::vector<double> cdf;
    cdf.reserve(entries.size());
    size_t last_positive = 0;
    double running = 0;
    for (size_t j = 0; j < entries.size(); ++j) {
        max_level = std::max(max_level, entries[j].level);
        running += entries[j].probability;
        cdf.push_back(running);
        if (entries[j].probability > 0) {
            last_positive = j;
        }
    }

    CounterRng rng(seed);
    auto count_range = [&](uint64_t begin, uint64_t end, std::vector<uint64_t> &counts) {
        for (uint64_t i = begin; i < end; ++i) {
            double u = rng.uniform(i);
            size_t j = static_cast<size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
            if (j >= entries.size()) {
                j = last_positive;
            }
            ++counts[entries[j].level - 1];
        }
    };

    workers = std::clamp<size_t>(workers, 1, static_cast<size_t>(std::min<uint64_t>(n, 256)));
    std::vector<std::vector<uint64_t>> partial(workers, std::vector<uint64_t>(max_level, 0));
    if (workers == 1) {
        count_range(0, n, partial[0]);
    } else {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        for (size_t w = 0; w < workers; ++w) {
            uint64_t begin = n * w / workers;
            uint64_t end = n * (w + 1) / workers;
            threads.emplace_back([&, begin, end, w] {
                count_range(begin, end, partial[w]);
            });
        }
    }
    std::vector<uint64_t> counts(max_level, 0);
    for (const auto &p : partial) {
        for (size_t q = 0; q < max_level; ++q) {
            counts[q] += p[q];
        }
    }
    return counts;
}

std::vector<uint64_t> sample_outcomes(const PureCoherentState &s, uint64_t n, uint64_t seed, size_t workers) {
    return sample_ensemble(outcome_probabilities(s), n, seed, workers);
}

std::vector<SampledOutcome> summarize_counts(const OutcomeEnsemble &ensemble, std::span<const uint64_t> counts) {
    size_t max_level = 0;
    for (const auto &o : ensemble.entries()) {
        max_level = std::max(max_level, o.level);
    }
    if (counts.size() != max_level) {
        throw std::invalid_argument("count vector does not match the ensemble levels");
    }
    uint64_t n = std::accumulate(counts.begin(), counts.end(), uint64_t{0});
    if (n == 0) {
        throw std::invalid_argument("no samples");
    }
    std::vector<SampledOutcome> result;
    for (size_t q = 1; q <= counts.size(); ++q) {
        double p = ensemble.probability(q);
        uint64_t count = counts[q - 1];
        SampledOutcome row{q, count, p, static_cast<double>(count) / static_cast<double>(n), std::nullopt, false};
        if (p <= kInternalTolerance || p >= 1 - kInternalTolerance) {
            row.exact_match = count == (p <= kInternalTolerance ? 0 : n);
        } else {
            double mean = static_cast<double>(n) * p;
            row.z = (static_cast<double>(count) - mean) / std::sqrt(mean * (1 - p));
        }
        result.push_back(row);
    }
    return result;
}

}  // namespace cohdistill
