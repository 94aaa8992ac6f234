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

#include <array>
#include <optional>
#include <string_view>

namespace ksat::ptf {

/// Closed-form texture/bulk-density pedotransfer functions for K_sat.
enum class ClassicModel {
    Brakensiek84,
    CampbellShiozawa94,
    Cosby84,
    Jabro92,
    Puckett85,
    DanePuckett94,
    Saxton86,
};

inline constexpr std::array<ClassicModel, 7> kAllClassicModels = {
    ClassicModel::Brakensiek84, ClassicModel::CampbellShiozawa94, ClassicModel::Cosby84,
    ClassicModel::Jabro92,      ClassicModel::Puckett85,          ClassicModel::DanePuckett94,
    ClassicModel::Saxton86,
};

/// Lower-case command-line key, e.g. "cosby84".
std::string_view model_key(ClassicModel m) noexcept;
/// Human-readable reference, e.g. "Cosby et al. (1984)".
std::string_view model_reference(ClassicModel m) noexcept;
std::optional<ClassicModel> classic_model_from_key(std::string_view key) noexcept;

struct ClassicOptions {
    PhysicalConstants constants{};
    /// Evaluate Jabro (1992) literally as 24 * [bracket] instead of
    /// 24 * 10^[bracket]. Audit use only: the literal form is negative for
    /// most soils.
    bool jabro_as_printed = false;
};

/// False only for Jabro92 when silt or clay is zero (log of zero).
bool is_applicable(ClassicModel model, const SoilSample& sample) noexcept;

/// K_sat in cm/day. Throws NotApplicable, NonphysicalDensity (Brakensiek84
/// porosity) or NonPositiveEstimate (as-printed Jabro only).
Conductivity estimate_classic(ClassicModel model, const SoilSample& sample, const ClassicOptions& options = {});

/// The Jabro bracket 9.56 - 0.81 log10(Si) - 1.09 log10(Cl) - 4.64 rho_b,
/// i.e. log10 of K_sat in cm/hr.
double jabro_log10_cm_per_hr(const SoilSample& sample);

} // namespace ksat::ptf
