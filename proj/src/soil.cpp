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
#include "ksat/soil.hpp"

#include "ksat/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fmt/format.h>

namespace ksat {

namespace {

void require_percent(const char* field, double v)
{
    if (!std::isfinite(v) || v < 0.0 || v > 100.0)
        throw Error(ErrorCode::PercentOutOfRange, fmt::format("{} = {}", field, v));
}

void require_positive(const char* field, double v)
{
    if (!std::isfinite(v) || v <= 0.0)
        throw Error(ErrorCode::NonPositiveField, fmt::format("{} = {}", field, v));
}

double texture_sum(const SoilSample& s) { return s.sand_pct + s.silt_pct + s.clay_pct; }

void renormalize_texture(SoilSample& s)
{
    const double total = texture_sum(s);
    if (total == 100.0)
        return;
    const double scale = 100.0 / total;
    s.sand_pct *= scale;
    s.silt_pct *= scale;
    s.clay_pct *= scale;

    std::array<double*, 3> parts = {&s.sand_pct, &s.silt_pct, &s.clay_pct};
    std::sort(parts.begin(), parts.end(), [](const double* a, const double* b) { return *a > *b; });
    for (int pass = 0; pass < 4 && texture_sum(s) != 100.0; ++pass)
        *parts[0] += 100.0 - texture_sum(s);
    for (double* part : parts) {
        for (int step = 0; step < 64 && texture_sum(s) != 100.0; ++step) {
            const double toward = texture_sum(s) < 100.0 ? 100.0 : 0.0;
            *part = std::nextafter(*part, toward);
        }
    }
}

} // namespace

SoilSample validate_sample(SoilSample raw, const ValidationOptions& options)
{
    require_percent("sand_pct", raw.sand_pct);
    require_percent("silt_pct", raw.silt_pct);
    require_percent("clay_pct", raw.clay_pct);

    const double total = texture_sum(raw);
    if (!(std::abs(total - 100.0) <= options.texture_tolerance))
        throw Error(ErrorCode::TextureSumViolation,
                    fmt::format("sand_pct + silt_pct + clay_pct = {} (tolerance {})", total,
                                options.texture_tolerance));

    require_positive("bulk_density", raw.bulk_density);
    if (raw.height)
        require_positive("height", *raw.height);
    if (raw.diameter)
        require_positive("diameter", *raw.diameter);
    if (raw.ksat_measured)
        require_positive("ksat_measured", *raw.ksat_measured);

    if (options.renormalize)
        renormalize_texture(raw);
    return raw;
}

double compute_porosity(double bulk_density, const PhysicalConstants& constants)
{
    if (!std::isfinite(bulk_density) || bulk_density <= 0.0 || bulk_density >= constants.particle_density)
        throw Error(ErrorCode::NonphysicalDensity,
                    fmt::format("bulk_density = {} (particle density {})", bulk_density,
                                constants.particle_density));
    return 1.0 - bulk_density / constants.particle_density;
}

ParticleStats derive_particle_stats(double sand_pct, double silt_pct, double clay_pct,
                                    const PhysicalConstants& constants)
{
    require_percent("sand_pct", sand_pct);
    require_percent("silt_pct", silt_pct);
    require_percent("clay_pct", clay_pct);
    const double total = sand_pct + silt_pct + clay_pct;
    if (total <= 0.0)
        throw Error(ErrorCode::PercentOutOfRange, "texture triple sums to zero");

    const std::array<double, 3> fraction = {sand_pct / total, silt_pct / total, clay_pct / total};
    const std::array<double, 3> diameter = {constants.sand_diameter_mm, constants.silt_diameter_mm,
                                            constants.clay_diameter_mm};

    // single-component mixture
    for (std::size_t i = 0; i < 3; ++i) {
        if (fraction[i] == 1.0)
            return {diameter[i], 1.0};
    }

    std::array<double, 3> log_d{};
    double mean_log = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        log_d[i] = std::log(diameter[i]);
        mean_log += fraction[i] * log_d[i];
    }
    // Central form of sum f (ln M)^2 - (ln d_g)^2.
    double variance = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        const double dev = log_d[i] - mean_log;
        variance += fraction[i] * dev * dev;
    }

    const auto [lo, hi] = std::minmax_element(diameter.begin(), diameter.end());
    return {std::clamp(std::exp(mean_log), *lo, *hi), std::exp(std::sqrt(variance))};
}

FeatureVector derive_features(const SoilSample& sample, const PhysicalConstants& constants)
{
    if (!sample.height)
        throw Error(ErrorCode::MissingFeature, fmt::format("sample '{}' has no height (L)", sample.id));
    if (!sample.diameter)
        throw Error(ErrorCode::MissingFeature, fmt::format("sample '{}' has no diameter (ID)", sample.id));

    const auto stats = derive_particle_stats(sample.sand_pct, sample.silt_pct, sample.clay_pct, constants);
    return FeatureVector{
        .sand = sample.sand_pct,
        .silt = sample.silt_pct,
        .clay = sample.clay_pct,
        .geometric_mean_mm = stats.geometric_mean_mm,
        .geometric_sd = stats.geometric_sd,
        .bulk_density = sample.bulk_density,
        .diameter = *sample.diameter,
        .height = *sample.height,
    };
}

} // namespace ksat
