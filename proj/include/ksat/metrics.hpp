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
#pragma once

#include <cstddef>
#include <span>

namespace ksat::eval {

/// Log-space error summary of estimated vs measured conductivities:
///   mle   = (1/n) sum (log10 est - log10 meas)
///   rmsle = sqrt((1/n) sum (log10 est - log10 meas)^2)
/// A negative mle means the model underestimates on average.
struct LogErrorStats {
    std::size_t n = 0;
    double mle = 0.0;
    double rmsle = 0.0;
};

/// Residuals are sorted before compensated accumulation, so the result is
/// bit-identical under any reordering of the pairs. Throws EmptySeries,
/// LengthMismatch or NonPositiveValue.
LogErrorStats log_error_stats(std::span<const double> estimated, std::span<const double> measured);

double rmsle(std::span<const double> estimated, std::span<const double> measured);
double mle(std::span<const double> estimated, std::span<const double> measured);

/// Same summary from precomputed residuals log10(est) - log10(meas).
LogErrorStats log_error_stats_from_residuals(std::span<const double> residuals);

} // namespace ksat::eval
