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

#include "nelder_mead.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cohdistill::internal {

NelderMeadResult nelder_mead(
    const std::function<double(std::span<const double>)> &objective,
    std::vector<double> start,
    const NelderMeadOptions &options) {
    const size_t n = start.size();
    size_t evaluations = 0;
    auto eval = [&](const std::vector<double> &x) {
        ++evaluations;
        double v = objective(x);
        return std::isnan(v) ? INFINITY : v;
    };

    std::vector<std::vector<double>> simplex(n + 1, start);
    for (size_t i = 0; i < n; ++i) {
        simplex[i + 1][i] += options.initial_step;
    }
    std::vector<double> values(n + 1);
    for (size_t i = 0; i <= n; ++i) {
        values[i] = eval(simplex[i]);
    }

    std::vector<size_t> order(n + 1);
    std::vector<double> centroid(n), trial(n), trial2(n);
    auto point_along = [&](double t, std::vector<double> &out, const std::vector<double> &worst) {
        for (size_t j = 0; j < n; ++j) {
            out[j] = centroid[j] + t * (worst[j] - centroid[j]);
        }
    };

    while (evaluations < options.max_evaluations) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            return values[a] < values[b];
        });
        const size_t best = order.front();
        const size_t worst = order.back();
        const size_t second_worst = order[n - 1];

        double spread = values[worst] - values[best];
        double size = 0;
        for (size_t i = 0; i <= n; ++i) {
            for (size_t j = 0; j < n; ++j) {
                size = std::max(size, std::abs(simplex[i][j] - simplex[best][j]));
            }
        }
        if (std::isfinite(values[worst]) && spread <= options.f_tolerance && size <= options.x_tolerance) {
            break;
        }
        if (size == 0) {
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (size_t i = 0; i <= n; ++i) {
            if (i == worst) {
                continue;
            }
            for (size_t j = 0; j < n; ++j) {
                centroid[j] += simplex[i][j] / static_cast<double>(n);
            }
        }

        point_along(-1.0, trial, simplex[worst]);
        double reflected = eval(trial);
        if (reflected < values[best]) {
            point_along(-2.0, trial2, simplex[worst]);
            double expanded = eval(trial2);
            if (expanded < reflected) {
                simplex[worst] = trial2;
                values[worst] = expanded;
            } else {
                simplex[worst] = trial;
                values[worst] = reflected;
            }
            continue;
        }
        if (reflected < values[second_worst]) {
            simplex[worst] = trial;
            values[worst] = reflected;
            continue;
        }
        bool outside = reflected < values[worst];
        point_along(outside ? -0.5 : 0.5, trial2, simplex[worst]);
        double contracted = eval(trial2);
        if (contracted < (outside ? reflected : values[worst])) {
            simplex[worst] = trial2;
            values[worst] = contracted;
            continue;
        }
        for (size_t i = 0; i <= n; ++i) {
            if (i == best) {
                continue;
            }
            for (size_t j = 0; j < n; ++j) {
                simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
            }
            values[i] = eval(simplex[i]);
        }
    }

    size_t best = static_cast<size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    return {simplex[best], values[best], evaluations};
}

}  // namespace cohdistill::internal
