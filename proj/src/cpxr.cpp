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
#include "ksat/cpxr.hpp"

#include "compensated_sum.hpp"
#include "ksat/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fmt/format.h>

namespace ksat::cpxr {

namespace {

double feature_value(FeatureRow features, std::size_t index)
{
    if (index >= features.size() || !features[index])
        throw Error(ErrorCode::MissingFeature, fmt::format("feature #{} has no value", index));
    return *features[index];
}

} // namespace

std::optional<std::size_t> CpxrModel::feature_index(std::string_view name) const noexcept
{
    const auto it = std::find(feature_names.begin(), feature_names.end(), name);
    if (it == feature_names.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - feature_names.begin());
}

bool pattern_matches(const Pattern& pattern, FeatureRow features)
{
    bool matched = true;
    for (const auto& c : pattern.criteria)
        matched = c.interval.contains(feature_value(features, c.feature)) && matched;
    return matched;
}

double evaluate_linear(const LinearModel& model, FeatureRow features)
{
    double value = model.intercept;
    for (const auto& term : model.terms)
        value += term.coefficient * feature_value(features, term.feature);
    return value;
}

Prediction predict_log(const CpxrModel& model, FeatureRow features, const PredictOptions& options)
{
    const Weighting weighting = options.weighting.value_or(model.weighting);
    const AveragingSpace averaging = options.averaging.value_or(model.averaging);

    Prediction out;
    std::vector<const Entry*> matched;
    for (const auto& entry : model.entries) {
        if (pattern_matches(entry.pattern, features))
            matched.push_back(&entry);
    }

    if (matched.empty()) {
        out.log10_value = evaluate_linear(model.baseline, features);
        return out;
    }
    if (matched.size() == 1) {
        out.log10_value = evaluate_linear(matched.front()->local, features);
        out.trace.push_back({matched.front()->pattern.id, 1.0, out.log10_value});
        return out;
    }

    bool uniform = weighting == Weighting::Uniform;
    if (!uniform) {
        detail::CompensatedSum arr_total;
        for (const auto* e : matched)
            arr_total.add(e->pattern.arr);
        uniform = !(arr_total.value() > 0.0);
    }

    detail::CompensatedSum raw_total;
    for (const auto* e : matched) {
        const double raw = uniform ? 1.0 : e->pattern.arr;
        raw_total.add(raw);
        out.trace.push_back({e->pattern.id, raw, evaluate_linear(e->local, features)});
    }
    const double total = raw_total.value();
    for (auto& item : out.trace)
        item.weight /= total;

    double lo = out.trace.front().local_log10;
    double hi = lo;
    for (const auto& item : out.trace) {
        lo = std::min(lo, item.local_log10);
        hi = std::max(hi, item.local_log10);
    }
    detail::CompensatedSum combined;
    for (const auto& item : out.trace) {
        if (averaging == AveragingSpace::Log10)
            combined.add(item.weight * item.local_log10);
        else
            combined.add(item.weight * std::pow(10.0, item.local_log10 - hi));
    }
    // Linear averaging is taken relative to the largest local value.
    const double value = averaging == AveragingSpace::Log10 ? combined.value() : hi + std::log10(combined.value());
    out.log10_value = std::clamp(value, lo, hi);
    return out;
}

std::vector<std::optional<double>> bind_features(const CpxrModel& model, const FeatureVector& f)
{
    struct Binding {
        std::string_view name;
        double FeatureVector::*field;
    };
    static constexpr std::array<Binding, 8> kBindings = {{
        {"Sa", &FeatureVector::sand},
        {"Si", &FeatureVector::silt},
        {"Cl", &FeatureVector::clay},
        {"dg", &FeatureVector::geometric_mean_mm},
        {"sigma_g", &FeatureVector::geometric_sd},
        {"rho_b", &FeatureVector::bulk_density},
        {"ID", &FeatureVector::diameter},
        {"L", &FeatureVector::height},
    }};

    std::vector<std::optional<double>> row;
    row.reserve(model.feature_names.size());
    for (const auto& name : model.feature_names) {
        const auto it = std::find_if(kBindings.begin(), kBindings.end(),
                                     [&](const Binding& b) { return b.name == name; });
        if (it == kBindings.end())
            throw Error(ErrorCode::SchemaError, fmt::format("model feature '{}' is not a soil feature", name));
        row.emplace_back(f.*(it->field));
    }
    return row;
}

Prediction predict_sample_log(const CpxrModel& model, const SoilSample& sample, const PredictOptions& options,
                              const PhysicalConstants& constants)
{
    const auto row = bind_features(model, derive_features(sample, constants));
    return predict_log(model, row, options);
}

Conductivity predict_ksat(const CpxrModel& model, const SoilSample& sample, const PredictOptions& options,
                          const PhysicalConstants& constants)
{
    return {std::pow(10.0, predict_sample_log(model, sample, options, constants).log10_value)};
}

std::string_view to_string(Weighting w) noexcept { return w == Weighting::Uniform ? "uniform" : "arr"; }

std::string_view to_string(AveragingSpace a) noexcept { return a == AveragingSpace::Linear ? "linear" : "log"; }

std::optional<Weighting> parse_weighting(std::string_view text) noexcept
{
    if (text == "arr")
        return Weighting::ArrProportional;
    if (text == "uniform")
        return Weighting::Uniform;
    return std::nullopt;
}

std::optional<AveragingSpace> parse_averaging(std::string_view text) noexcept
{
    if (text == "log")
        return AveragingSpace::Log10;
    if (text == "linear")
        return AveragingSpace::Linear;
    return std::nullopt;
}

} // namespace ksat::cpxr
