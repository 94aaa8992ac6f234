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
#include "ksat/ptf_classic.hpp"

#include "ksat/error.hpp"

#include <cmath>
#include <fmt/format.h>

namespace ksat::ptf {

namespace {

struct ModelInfo {
    std::string_view key;
    std::string_view reference;
};

constexpr std::array<ModelInfo, 7> kInfo = {{
    {"brakensiek84", "Brakensiek et al. (1984)"},
    {"campbell94", "Campbell and Shiozawa (1994)"},
    {"cosby84", "Cosby et al. (1984)"},
    {"jabro92", "Jabro (1992)"},
    {"puckett85", "Puckett et al. (1985)"},
    {"danepuckett94", "Dane and Puckett (1994)"},
    {"saxton86", "Saxton et al. (1986)"},
}};

double brakensiek(const SoilSample& s, const PhysicalConstants& constants)
{
    const double phi = compute_porosity(s.bulk_density, constants);
    const double sa = s.sand_pct;
    const double cl = s.clay_pct;
    const double phi2 = phi * phi;
    const double sa2 = sa * sa;
    const double cl2 = cl * cl;
    // Terms summed left to right, one exponentiation at the end.
    double e = 19.52348 * phi;
    e -= 8.96847;
    e -= 0.028212 * cl;
    e += 0.00018107 * sa2;
    e -= 0.0094125 * cl2;
    e -= 8.395215 * phi2;
    e += 0.077718 * phi * sa;
    e -= 0.00298 * phi2 * sa2;
    e -= 0.019492 * phi2 * cl2;
    e += 0.0000173 * sa2 * cl;
    e += 0.02733 * phi * cl2;
    e += 0.001434 * phi * sa2;
    e -= 0.0000035 * cl2 * sa;
    return 24.0 * std::exp(e);
}

} // namespace

std::string_view model_key(ClassicModel m) noexcept { return kInfo[static_cast<std::size_t>(m)].key; }

std::string_view model_reference(ClassicModel m) noexcept
{
    return kInfo[static_cast<std::size_t>(m)].reference;
}

std::optional<ClassicModel> classic_model_from_key(std::string_view key) noexcept
{
    for (auto m : kAllClassicModels) {
        if (model_key(m) == key)
            return m;
    }
    return std::nullopt;
}

bool is_applicable(ClassicModel model, const SoilSample& sample) noexcept
{
    if (model == ClassicModel::Jabro92)
        return sample.silt_pct > 0.0 && sample.clay_pct > 0.0;
    return true;
}

double jabro_log10_cm_per_hr(const SoilSample& s)
{
    if (!is_applicable(ClassicModel::Jabro92, s))
        throw Error(ErrorCode::NotApplicable,
                    fmt::format("jabro92 needs positive silt and clay (silt_pct = {}, clay_pct = {})",
                                s.silt_pct, s.clay_pct));
    return 9.56 - 0.81 * std::log10(s.silt_pct) - 1.09 * std::log10(s.clay_pct) - 4.64 * s.bulk_density;
}

Conductivity estimate_classic(ClassicModel model, const SoilSample& s, const ClassicOptions& options)
{
    switch (model) {
    case ClassicModel::Brakensiek84:
        return {brakensiek(s, options.constants)};
    case ClassicModel::CampbellShiozawa94:
        return {129.6 * std::exp(-0.07 * s.silt_pct - 0.167 * s.clay_pct)};
    case ClassicModel::Cosby84:
        return {60.96 * std::pow(10.0, -0.6 + 0.0126 * s.sand_pct - 0.0064 * s.clay_pct)};
    case ClassicModel::Jabro92: {
        const double bracket = jabro_log10_cm_per_hr(s);
        if (!options.jabro_as_printed)
            return {24.0 * std::pow(10.0, bracket)};
        const double literal = 24.0 * bracket;
        if (!(literal > 0.0))
            throw Error(ErrorCode::NonPositiveEstimate,
                        fmt::format("as-printed jabro92 gives {} cm/day for sample '{}'", literal, s.id));
        return {literal};
    }
    case ClassicModel::Puckett85:
        return {376.7 * std::exp(-0.1975 * s.clay_pct)};
    case ClassicModel::DanePuckett94:
        return {729.22 * std::exp(-0.144 * s.clay_pct)};
    case ClassicModel::Saxton86:
        return {24.0 * std::exp(12.012 - 0.0755 * s.sand_pct)};
    }
    throw Error(ErrorCode::NotApplicable, "unknown model");
}

} // namespace ksat::ptf
