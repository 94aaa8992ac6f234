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
#include "ksat/cpxr.hpp"
#include "ksat/ptf_classic.hpp"
#include "ksat/soil.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string_view>

namespace ksat {

/// The seven closed-form models plus the pattern-aided regression model.
enum class ModelId {
    Brakensiek84,
    CampbellShiozawa94,
    Cosby84,
    Jabro92,
    Puckett85,
    DanePuckett94,
    Saxton86,
    Cpxr,
};

inline constexpr std::array<ModelId, 8> kAllModels = {
    ModelId::Brakensiek84, ModelId::CampbellShiozawa94, ModelId::Cosby84,       ModelId::Jabro92,
    ModelId::Puckett85,    ModelId::DanePuckett94,      ModelId::Saxton86,      ModelId::Cpxr,
};

std::string_view model_key(ModelId id) noexcept;
std::string_view model_reference(ModelId id) noexcept;
std::optional<ModelId> model_from_key(std::string_view key) noexcept;
std::optional<ptf::ClassicModel> as_classic(ModelId id) noexcept;

/// Why a sample was left out of a model's evaluation.
enum class ExclusionReason {
    ZeroSilt,
    ZeroClay,
    MissingDimension,
    NonphysicalDensity,
    NonPositiveEstimate,
};

inline constexpr std::array<ExclusionReason, 5> kAllExclusionReasons = {
    ExclusionReason::ZeroSilt,           ExclusionReason::ZeroClay,           ExclusionReason::MissingDimension,
    ExclusionReason::NonphysicalDensity, ExclusionReason::NonPositiveEstimate,
};

std::string_view to_string(ExclusionReason r) noexcept;

struct EstimatorConfig {
    PhysicalConstants constants{};
    bool jabro_as_printed = false;
    cpxr::PredictOptions cpxr_options{};
    /// Null selects cpxr::default_model().
    std::shared_ptr<const cpxr::CpxrModel> cpxr_model;
};

/// Outcome of running one model on one sample: a value or the reason the
/// sample does not qualify.
struct EstimateOutcome {
    std::optional<Conductivity> value;
    std::optional<ExclusionReason> excluded;
};

/// One configured model. Immutable and safe to share between threads.
class Estimator {
public:
    explicit Estimator(ModelId id, EstimatorConfig config = {});

    ModelId id() const noexcept { return id_; }
    const EstimatorConfig& config() const noexcept { return config_; }
    const cpxr::CpxrModel& cpxr_model() const noexcept { return *config_.cpxr_model; }

    EstimateOutcome try_estimate(const SoilSample& sample) const;
    std::optional<ExclusionReason> exclusion(const SoilSample& sample) const { return try_estimate(sample).excluded; }

    /// Throws the underlying library Error when the sample does not qualify.
    Conductivity estimate(const SoilSample& sample) const;

private:
    ModelId id_;
    EstimatorConfig config_;
};

} // namespace ksat
