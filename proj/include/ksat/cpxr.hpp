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

#include "ksat/conductivity.hpp"
#include "ksat/soil.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ksat::cpxr {

/// Half-open interval [lower, upper). A missing bound is unbounded on that
/// side. Containment is exact; there is no tolerance at the edges.
struct Interval {
    std::optional<double> lower;
    std::optional<double> upper;

    bool contains(double x) const noexcept
    {
        return (!lower || x >= *lower) && (!upper || x < *upper);
    }

    bool operator==(const Interval&) const = default;
};

struct Criterion {
    std::size_t feature = 0; // index into CpxrModel::feature_names
    Interval interval;

    bool operator==(const Criterion&) const = default;
};

struct Pattern {
    int id = 0;
    std::vector<Criterion> criteria;
    double arr = 0.0;     // average residual reduction
    double support = 0.0; // percent of training rows matched

    bool operator==(const Pattern&) const = default;
};

struct Term {
    std::size_t feature = 0;
    double coefficient = 0.0;

    bool operator==(const Term&) const = default;
};

/// intercept + sum coefficient * feature. Features without a term
/// contribute nothing.
struct LinearModel {
    double intercept = 0.0;
    std::vector<Term> terms;

    bool operator==(const LinearModel&) const = default;
};

struct Entry {
    Pattern pattern;
    LinearModel local;

    bool operator==(const Entry&) const = default;
};

enum class Weighting { ArrProportional, Uniform };
enum class AveragingSpace { Log10, Linear };

struct CpxrModel {
    std::vector<std::string> feature_names;
    std::string output;
    LinearModel baseline;
    std::vector<Entry> entries;
    Weighting weighting = Weighting::ArrProportional;
    AveragingSpace averaging = AveragingSpace::Log10;

    std::optional<std::size_t> feature_index(std::string_view name) const noexcept;

    bool operator==(const CpxrModel&) const = default;
};

/// Feature values aligned with CpxrModel::feature_names; nullopt marks a
/// value the caller does not have.
using FeatureRow = std::span<const std::optional<double>>;

/// Throws MissingFeature if a criterion refers to an absent value.
bool pattern_matches(const Pattern& pattern, FeatureRow features);

/// Throws MissingFeature if a term refers to an absent value.
double evaluate_linear(const LinearModel& model, FeatureRow features);

struct TraceItem {
    int pattern_id = 0;
    double weight = 0.0;
    double local_log10 = 0.0;
};

struct Prediction {
    double log10_value = 0.0;
    std::vector<TraceItem> trace; // empty when the baseline was used
};

/// Per-call overrides of the model's default combination scheme.
struct PredictOptions {
    std::optional<Weighting> weighting;
    std::optional<AveragingSpace> averaging;
};

/// Log10 prediction of a row.
///
/// No matching pattern: the baseline value, bit for bit, with an empty
/// trace. One match: that local model's value, bit for bit, weight 1.
/// Several matches: a weighted mean of the local values. Weights are
/// proportional to ARR (or uniform) over the matching entries and normalised
/// to sum to 1; the mean is taken in log10 space by default, or of the
/// conductivities themselves with AveragingSpace::Linear. With ARR weighting
/// and every matching ARR equal to zero the weights fall back to uniform.
Prediction predict_log(const CpxrModel& model, FeatureRow features, const PredictOptions& options = {});

/// Maps the soil predictor set onto the model's declared features. Known
/// names: Sa Si Cl dg sigma_g rho_b ID L. Throws SchemaError for others.
std::vector<std::optional<double>> bind_features(const CpxrModel& model, const FeatureVector& features);

/// 10^predict_log of the sample's derived features.
Conductivity predict_ksat(const CpxrModel& model, const SoilSample& sample, const PredictOptions& options = {},
                          const PhysicalConstants& constants = {});

/// Same as predict_ksat but also returns the trace.
Prediction predict_sample_log(const CpxrModel& model, const SoilSample& sample,
                              const PredictOptions& options = {}, const PhysicalConstants& constants = {});

/// Parses a bundle document (grammar in docs/bundle-format.md). Throws
/// ParseError with a line number, or SchemaError.
CpxrModel load_bundle(std::string_view text);

/// Canonical text form; load_bundle(serialize_bundle(m)) == m.
std::string serialize_bundle(const CpxrModel& model);

/// Text of the shipped K_sat model, data/ksat_cpxr_default.bundle.
std::string_view default_bundle_text() noexcept;

/// The shipped model, parsed once.
const CpxrModel& default_model();

std::string_view to_string(Weighting w) noexcept;
std::string_view to_string(AveragingSpace a) noexcept;
std::optional<Weighting> parse_weighting(std::string_view text) noexcept;
std::optional<AveragingSpace> parse_averaging(std::string_view text) noexcept;

} // namespace ksat::cpxr
