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

#include <optional>
#include <string>

namespace ksat {

/// One measured soil core. Percentages are by mass, lengths in cm,
/// conductivity in cm/day. Sample dimensions and the measured conductivity
/// are optional because estimation-only inputs and the classic models do not
/// need them.
struct SoilSample {
    std::string id;
    std::string source;
    std::string method;
    double sand_pct = 0.0;
    double silt_pct = 0.0;
    double clay_pct = 0.0;
    double bulk_density = 0.0; // g/cm3
    std::optional<double> height;   // sample length L
    std::optional<double> diameter; // internal diameter ID
    std::optional<double> ksat_measured;

    bool operator==(const SoilSample&) const = default;
};

/// Particle density plus the representative diameters used to summarise a
/// three-fraction texture as a log-normal particle-size distribution.
struct PhysicalConstants {
    double particle_density = 2.65; // g/cm3
    double clay_diameter_mm = 0.001;
    double silt_diameter_mm = 0.026;
    double sand_diameter_mm = 1.025;
};

struct ValidationOptions {
    double texture_tolerance = 0.5; // percent
    bool renormalize = false;
};

/// Checks every SoilSample invariant and returns the (optionally
/// renormalized) sample. Throws Error with TextureSumViolation,
/// NonPositiveField or PercentOutOfRange.
///
/// With renormalize on, the texture triple is scaled by 100/sum and the
/// largest fraction absorbs any remaining rounding so that
/// (sand + silt) + clay == 100 holds exactly in double arithmetic. A triple
/// that already sums to exactly 100 is returned unchanged, which makes the
/// operation idempotent.
SoilSample validate_sample(SoilSample raw, const ValidationOptions& options = {});

/// 1 - bulk_density / particle_density. Throws NonphysicalDensity unless
/// 0 < bulk_density < particle_density.
double compute_porosity(double bulk_density, const PhysicalConstants& constants = {});

struct ParticleStats {
    double geometric_mean_mm = 0.0; // d_g
    double geometric_sd = 1.0;      // sigma_g, dimensionless
};

/// Log-normal summary of a sand/silt/clay triple:
///   ln d_g   = sum f_i ln M_i
///   sigma_g  = exp(sqrt(sum f_i (ln M_i - ln d_g)^2))
/// where f_i are the mass fractions (normalised by their actual sum) and M_i
/// the representative diameters from `constants`.
ParticleStats derive_particle_stats(double sand_pct, double silt_pct, double clay_pct,
                                    const PhysicalConstants& constants = {});

/// Predictor set for the pattern-aided regression model.
struct FeatureVector {
    double sand = 0.0;
    double silt = 0.0;
    double clay = 0.0;
    double geometric_mean_mm = 0.0;
    double geometric_sd = 1.0;
    double bulk_density = 0.0;
    double diameter = 0.0;
    double height = 0.0;
};

/// Builds the full predictor set. Throws MissingFeature when the sample has
/// no height or diameter.
FeatureVector derive_features(const SoilSample& sample, const PhysicalConstants& constants = {});

} // namespace ksat
