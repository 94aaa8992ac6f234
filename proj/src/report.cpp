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
#include "ksat/report.hpp"

#include "compensated_sum.hpp"
#include "ksat/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>

namespace ksat::eval {

namespace {

std::vector<TextureClass> classify_all(std::span<const SoilSample> samples)
{
    std::vector<TextureClass> out;
    out.reserve(samples.size());
    for (const auto& s : samples)
        out.push_back(classify_texture(s.sand_pct, s.silt_pct, s.clay_pct));
    return out;
}

ReportCell make_cell(std::span<const double> residuals)
{
    ReportCell cell;
    cell.n = residuals.size();
    if (!residuals.empty()) {
        const auto stats = log_error_stats_from_residuals(residuals);
        cell.mle = stats.mle;
        cell.rmsle = stats.rmsle;
    }
    return cell;
}

void flag_best(std::vector<ModelReport>& rows, ReportCell& (*cell_of)(ModelReport&, std::size_t), std::size_t column)
{
    double best = std::numeric_limits<double>::infinity();
    for (auto& row : rows) {
        const auto& c = cell_of(row, column);
        if (c.rmsle)
            best = std::min(best, *c.rmsle);
    }
    for (auto& row : rows) {
        auto& c = cell_of(row, column);
        c.best = c.rmsle && *c.rmsle - best <= kBestTieTolerance;
    }
}

ReportCell& class_cell(ModelReport& row, std::size_t column) { return row.by_class[column]; }
ReportCell& overall_cell(ModelReport& row, std::size_t) { return row.overall; }

} // namespace

std::vector<ModelRun> run_models(std::span<const SoilSample> samples, std::span<const Estimator> estimators)
{
    if (samples.empty())
        throw Error(ErrorCode::EmptyDataset, "no samples to evaluate");
    for (const auto& s : samples) {
        if (!s.ksat_measured)
            throw Error(ErrorCode::MissingFeature, fmt::format("sample '{}' has no measured ksat", s.id));
    }

    std::vector<ModelRun> runs;
    runs.reserve(estimators.size());
    for (const auto& est : estimators) {
        ModelRun run;
        run.model = est.id();
        run.estimate.reserve(samples.size());
        run.excluded.reserve(samples.size());
        for (const auto& s : samples) {
            auto outcome = est.try_estimate(s);
            run.estimate.push_back(outcome.value ? std::optional<double>(outcome.value->cm_per_day) : std::nullopt);
            run.excluded.push_back(outcome.excluded);
        }
        runs.push_back(std::move(run));
    }
    return runs;
}

EvalReport build_report(std::span<const SoilSample> samples, std::span<const ModelRun> runs)
{
    if (samples.empty())
        throw Error(ErrorCode::EmptyDataset, "no samples to evaluate");

    EvalReport report;
    report.total = samples.size();
    const auto classes = classify_all(samples);
    for (auto c : classes)
        ++report.class_counts[index_of(c)];

    for (const auto& run : runs) {
        ModelReport row;
        row.model = run.model;
        std::array<std::vector<double>, 12> per_class;
        std::vector<double> all;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            if (run.excluded[i]) {
                ++row.excluded[static_cast<std::size_t>(*run.excluded[i])];
                continue;
            }
            const double r = std::log10(*run.estimate[i]) - std::log10(*samples[i].ksat_measured);
            per_class[index_of(classes[i])].push_back(r);
            all.push_back(r);
        }
        for (std::size_t c = 0; c < per_class.size(); ++c)
            row.by_class[c] = make_cell(per_class[c]);
        row.overall = make_cell(all);
        report.rows.push_back(row);
    }

    for (std::size_t c = 0; c < 12; ++c)
        flag_best(report.rows, class_cell, c);
    flag_best(report.rows, overall_cell, 0);
    return report;
}

EvalReport per_class_report(std::span<const SoilSample> samples, std::span<const Estimator> estimators)
{
    const auto runs = run_models(samples, estimators);
    return build_report(samples, runs);
}

std::vector<ScatterPoint> scatter_points(std::span<const SoilSample> samples, std::span<const ModelRun> runs)
{
    const auto classes = classify_all(samples);
    std::vector<ScatterPoint> points;
    for (const auto& run : runs) {
        for (std::size_t i = 0; i < samples.size(); ++i) {
            if (!run.estimate[i])
                continue;
            points.push_back({run.model, classes[i], samples[i].id, std::log10(*samples[i].ksat_measured),
                              std::log10(*run.estimate[i])});
        }
    }
    return points;
}

FieldStats field_stats(std::span<const double> values)
{
    if (values.empty())
        throw Error(ErrorCode::EmptyGroup, "no values");
    detail::CompensatedSum sum;
    for (double v : values)
        sum.add(v);
    const auto n = static_cast<double>(values.size());
    const double mean = sum.value() / n;
    if (values.size() == 1)
        return {1, mean, 0.0};
    detail::CompensatedSum sq;
    for (double v : values)
        sq.add((v - mean) * (v - mean));
    return {values.size(), mean, std::sqrt(sq.value() / (n - 1.0))};
}

std::vector<GroupSummary> summary_stats(std::span<const SoilSample> samples, GroupKey key)
{
    if (samples.empty())
        throw Error(ErrorCode::EmptyGroup, "no samples to summarise");

    auto key_of = [key](const SoilSample& s) -> std::string {
        switch (key) {
        case GroupKey::Source: return s.source;
        case GroupKey::Method: return s.method;
        case GroupKey::None: break;
        }
        return "all";
    };

    std::vector<std::string> order;
    std::vector<std::vector<const SoilSample*>> members;
    for (const auto& s : samples) {
        const auto k = key_of(s);
        auto it = std::find(order.begin(), order.end(), k);
        if (it == order.end()) {
            order.push_back(k);
            members.emplace_back();
            it = order.end() - 1;
        }
        members[static_cast<std::size_t>(it - order.begin())].push_back(&s);
    }

    auto collect = [](const std::vector<const SoilSample*>& group, auto getter) {
        std::vector<double> values;
        for (const auto* s : group) {
            if (std::optional<double> v = getter(*s))
                values.push_back(*v);
        }
        return values;
    };
    auto optional_stats = [](const std::vector<double>& values) -> std::optional<FieldStats> {
        if (values.empty())
            return std::nullopt;
        return field_stats(values);
    };

    std::vector<GroupSummary> out;
    for (std::size_t g = 0; g < order.size(); ++g) {
        const auto& group = members[g];
        GroupSummary summary;
        summary.group = order[g];
        summary.samples = group.size();
        summary.singleton = group.size() == 1;
        summary.method = group.front()->method;
        summary.bulk_density = field_stats(collect(group, [](const SoilSample& s) -> std::optional<double> { return s.bulk_density; }));
        summary.sand = field_stats(collect(group, [](const SoilSample& s) -> std::optional<double> { return s.sand_pct; }));
        summary.silt = field_stats(collect(group, [](const SoilSample& s) -> std::optional<double> { return s.silt_pct; }));
        summary.clay = field_stats(collect(group, [](const SoilSample& s) -> std::optional<double> { return s.clay_pct; }));
        summary.height = optional_stats(collect(group, [](const SoilSample& s) { return s.height; }));
        summary.diameter = optional_stats(collect(group, [](const SoilSample& s) { return s.diameter; }));
        summary.ksat = optional_stats(collect(group, [](const SoilSample& s) { return s.ksat_measured; }));
        out.push_back(std::move(summary));
    }
    return out;
}

TernaryPoint ternary_position(double sand_pct, double silt_pct, double clay_pct) noexcept
{
    const double total = sand_pct + silt_pct + clay_pct;
    const double sand = sand_pct / total;
    const double clay = clay_pct / total;
    return {sand + 0.5 * clay, clay * std::sqrt(3.0) / 2.0};
}

std::array<TextureShare, 12> texture_distribution(std::span<const SoilSample> samples)
{
    std::array<TextureShare, 12> out{};
    for (auto c : kAllTextureClasses)
        out[index_of(c)].texture = c;
    for (const auto& s : samples)
        ++out[index_of(classify_texture(s.sand_pct, s.silt_pct, s.clay_pct))].count;
    if (!samples.empty()) {
        for (auto& share : out)
            share.percent = 100.0 * static_cast<double>(share.count) / static_cast<double>(samples.size());
    }
    return out;
}

} // namespace ksat::eval
