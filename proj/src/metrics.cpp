/* Copyright 2026 The ksatptf Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "ksat/metrics.hpp"

#include "compensated_sum.hpp"
#include "ksat/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <vector>

namespace ksat::eval {

LogErrorStats log_error_stats_from_residuals(std::span<const double> residuals)
{
    if (residuals.empty())
        throw Error(ErrorCode::EmptySeries, "no pairs to compare");

    std::vector<double> sorted(residuals.begin(), residuals.end());
    std::sort(sorted.begin(), sorted.end());

    detail::CompensatedSum sum;
    detail::CompensatedSum sum_sq;
    for (double r : sorted) {
        sum.add(r);
        sum_sq.add(r * r);
    }
    const auto n = static_cast<double>(sorted.size());
    const double mean = sum.value() / n;
    const double root_mean_sq = std::max(std::sqrt(sum_sq.value() / n), std::abs(mean));
    return {sorted.size(), mean, root_mean_sq};
}

LogErrorStats log_error_stats(std::span<const double> estimated, std::span<const double> measured)
{
    if (estimated.size() != measured.size())
        throw Error(ErrorCode::LengthMismatch,
                    fmt::format("{} estimates vs {} measurements", estimated.size(), measured.size()));
    if (estimated.empty())
        throw Error(ErrorCode::EmptySeries, "no pairs to compare");

    std::vector<double> residuals(estimated.size());
    for (std::size_t i = 0; i < estimated.size(); ++i) {
        if (!(estimated[i] > 0.0) || !std::isfinite(estimated[i]))
            throw Error(ErrorCode::NonPositiveValue, fmt::format("estimated[{}] = {}", i, estimated[i]));
        if (!(measured[i] > 0.0) || !std::isfinite(measured[i]))
            throw Error(ErrorCode::NonPositiveValue, fmt::format("measured[{}] = {}", i, measured[i]));
        residuals[i] = std::log10(estimated[i]) - std::log10(measured[i]);
    }
    return log_error_stats_from_residuals(residuals);
}

double rmsle(std::span<const double> estimated, std::span<const double> measured)
{
    return log_error_stats(estimated, measured).rmsle;
}

double mle(std::span<const double> estimated, std::span<const double> measured)
{
    return log_error_stats(estimated, measured).mle;
}

} // namespace ksat::eval
