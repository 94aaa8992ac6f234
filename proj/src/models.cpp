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
#include "ksat/models.hpp"

#include "ksat/error.hpp"

#include <cmath>

namespace ksat {

std::string_view model_key(ModelId id) noexcept
{
    if (auto c = as_classic(id))
        return ptf::model_key(*c);
    return "cpxr";
}

std::string_view model_reference(ModelId id) noexcept
{
    if (auto c = as_classic(id))
        return ptf::model_reference(*c);
    return "CPXR sample-dimension model";
}

std::optional<ModelId> model_from_key(std::string_view key) noexcept
{
    for (auto id : kAllModels) {
        if (model_key(id) == key)
            return id;
    }
    return std::nullopt;
}

std::optional<ptf::ClassicModel> as_classic(ModelId id) noexcept
{
    if (id == ModelId::Cpxr)
        return std::nullopt;
    return static_cast<ptf::ClassicModel>(static_cast<int>(id));
}

std::string_view to_string(ExclusionReason r) noexcept
{
    switch (r) {
    case ExclusionReason::ZeroSilt: return "ZeroSilt";
    case ExclusionReason::ZeroClay: return "ZeroClay";
    case ExclusionReason::MissingDimension: return "MissingDimension";
    case ExclusionReason::NonphysicalDensity: return "NonphysicalDensity";
    case ExclusionReason::NonPositiveEstimate: return "NonPositiveEstimate";
    }
    return "Unknown";
}

Estimator::Estimator(ModelId id, EstimatorConfig config) : id_(id), config_(std::move(config))
{
    if (!config_.cpxr_model)
        config_.cpxr_model = std::shared_ptr<const cpxr::CpxrModel>(std::shared_ptr<void>(), &cpxr::default_model());
}

EstimateOutcome Estimator::try_estimate(const SoilSample& s) const
{
    if (id_ == ModelId::Cpxr) {
        if (!s.height || !s.diameter)
            return {std::nullopt, ExclusionReason::MissingDimension};
        return {cpxr::predict_ksat(*config_.cpxr_model, s, config_.cpxr_options, config_.constants), std::nullopt};
    }

    const auto model = *as_classic(id_);
    if (model == ptf::ClassicModel::Jabro92) {
        if (!(s.silt_pct > 0.0))
            return {std::nullopt, ExclusionReason::ZeroSilt};
        if (!(s.clay_pct > 0.0))
            return {std::nullopt, ExclusionReason::ZeroClay};
    }
    if (model == ptf::ClassicModel::Brakensiek84 && !(s.bulk_density < config_.constants.particle_density))
        return {std::nullopt, ExclusionReason::NonphysicalDensity};

    try {
        return {ptf::estimate_classic(model, s, {config_.constants, config_.jabro_as_printed}), std::nullopt};
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NonPositiveEstimate)
            return {std::nullopt, ExclusionReason::NonPositiveEstimate};
        throw;
    }
}

Conductivity Estimator::estimate(const SoilSample& s) const
{
    if (id_ == ModelId::Cpxr)
        return cpxr::predict_ksat(*config_.cpxr_model, s, config_.cpxr_options, config_.constants);
    return ptf::estimate_classic(*as_classic(id_), s, {config_.constants, config_.jabro_as_printed});
}

} // namespace ksat
