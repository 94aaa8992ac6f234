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

#include "ksat/metrics.hpp"
#include "ksat/models.hpp"
#include "ksat/soil.hpp"
#include "ksat/texture.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ksat::eval {

/// Estimates of one model over a dataset, index-aligned with the samples.
struct ModelRun {
    ModelId model{};
    std::vector<std::optional<double>> estimate; // cm/day, nullopt when excluded
    std::vector<std::optional<ExclusionReason>> excluded;
};

/// Runs every estimator over every sample. Samples must carry a measured
/// K_sat. Throws EmptyDataset.
std::vector<ModelRun> run_models(std::span<const SoilSample> samples, std::span<const Estimator> estimators);

struct ReportCell {
    std::size_t n = 0;
    std::optional<double> mle;   // absent when n == 0
    std::optional<double> rmsle; // absent when n == 0
    bool best = false;           // minimal RMSLE in this column
};

struct ModelReport {
    ModelId model{};
    std::array<ReportCell, 12> by_class{}; // indexed by index_of(TextureClass)
    ReportCell overall;
    std::array<std::size_t, 5> excluded{}; // indexed by ExclusionReason
};

/// Per-model, per-texture-class MLE/RMSLE. A model's n counts only the
/// samples it applies to. In each column every model within
/// kBestTieTolerance of the smallest RMSLE is flagged.
struct EvalReport {
    std::vector<ModelReport> rows;
    std::array<std::size_t, 12> class_counts{};
    std::size_t total = 0;
};

inline constexpr double kBestTieTolerance = 1e-12;

EvalReport build_report(std::span<const SoilSample> samples, std::span<const ModelRun> runs);

/// run_models followed by build_report.
EvalReport per_class_report(std::span<const SoilSample> samples, std::span<const Estimator> estimators);

/// One point of a measured-vs-estimated scatter.
struct ScatterPoint {
    ModelId model{};
    TextureClass texture{};
    std::string sample_id;
    double log10_measured = 0.0;
    double log10_estimated = 0.0;
};

/// Model-major, then sample order. One point per applicable (model, sample).
std::vector<ScatterPoint> scatter_points(std::span<const SoilSample> samples, std::span<const ModelRun> runs);

struct FieldStats {
    std::size_t n = 0;
    double mean = 0.0;
    double sd = 0.0; // sample (n - 1) standard deviation; 0 for n == 1
};

enum class GroupKey { Source, Method, None };

/// Mean and standard deviation of each sample field for one group.
/// Optional fields (height, diameter, K_sat) are summarised over the
/// samples that have them and are absent when none do.
struct GroupSummary {
    std::string group;
    std::size_t samples = 0;
    bool singleton = false;
    std::string method; // first method label seen in the group
    FieldStats bulk_density;
    FieldStats sand;
    FieldStats silt;
    FieldStats clay;
    std::optional<FieldStats> height;
    std::optional<FieldStats> diameter;
    std::optional<FieldStats> ksat;
};

/// Groups in order of first appearance. GroupKey::None puts everything in a
/// single group named "all". Throws EmptyGroup for an empty dataset.
std::vector<GroupSummary> summary_stats(std::span<const SoilSample> samples, GroupKey key = GroupKey::Source);

FieldStats field_stats(std::span<const double> values);

/// Cartesian position on an equilateral ternary diagram with unit side:
/// sand at (1, 0), clay at (0.5, sqrt(3)/2), silt at the origin.
struct TernaryPoint {
    double x = 0.0;
    double y = 0.0;
};

TernaryPoint ternary_position(double sand_pct, double silt_pct, double clay_pct) noexcept;

struct TextureShare {
    TextureClass texture{};
    std::size_t count = 0;
    double percent = 0.0;
};

/// Sample count and percentage per texture class, all 12 classes in order.
std::array<TextureShare, 12> texture_distribution(std::span<const SoilSample> samples);

} // namespace ksat::eval
