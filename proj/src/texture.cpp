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
#include "ksat/texture.hpp"

#include "ksat/error.hpp"

#include <cmath>
#include <string>

namespace ksat {

namespace {

struct ClassNames {
    std::string_view abbrev;
    std::string_view name;
};

constexpr std::array<ClassNames, 12> kNames = {{
    {"Sa", "Sand"},
    {"LSa", "Loamy sand"},
    {"SaL", "Sandy loam"},
    {"L", "Loam"},
    {"SiL", "Silt loam"},
    {"Si", "Silt"},
    {"SaCL", "Sandy clay loam"},
    {"CL", "Clay loam"},
    {"SiCL", "Silty clay loam"},
    {"SaC", "Sandy clay"},
    {"SiC", "Silty clay"},
    {"C", "Clay"},
}};

struct Triple {
    double sand;
    double silt;
    double clay;
};

using Rule = bool (*)(const Triple&);

// Ordered first-match rule list; see the header for the table.
constexpr std::array<std::pair<TextureClass, Rule>, 12> kRules = {{
    {TextureClass::Sand, [](const Triple& t) { return t.silt + 1.5 * t.clay < 15.0; }},
    {TextureClass::LoamySand,
     [](const Triple& t) { return t.silt + 1.5 * t.clay >= 15.0 && t.silt + 2.0 * t.clay < 30.0; }},
    {TextureClass::SandyLoam,
     [](const Triple& t) {
         return (t.clay >= 7.0 && t.clay < 20.0 && t.sand > 52.0 && t.silt + 2.0 * t.clay >= 30.0) ||
                (t.clay < 7.0 && t.silt < 50.0 && t.silt + 2.0 * t.clay >= 30.0);
     }},
    {TextureClass::Loam,
     [](const Triple& t) {
         return t.clay >= 7.0 && t.clay < 27.0 && t.silt >= 28.0 && t.silt < 50.0 && t.sand <= 52.0;
     }},
    {TextureClass::SiltLoam,
     [](const Triple& t) {
         return (t.silt >= 50.0 && t.clay >= 12.0 && t.clay < 27.0) ||
                (t.silt >= 50.0 && t.silt < 80.0 && t.clay < 12.0);
     }},
    {TextureClass::Silt, [](const Triple& t) { return t.silt >= 80.0 && t.clay < 12.0; }},
    {TextureClass::SandyClayLoam,
     [](const Triple& t) { return t.clay >= 20.0 && t.clay < 35.0 && t.silt < 28.0 && t.sand > 45.0; }},
    {TextureClass::ClayLoam,
     [](const Triple& t) { return t.clay >= 27.0 && t.clay < 40.0 && t.sand > 20.0 && t.sand <= 45.0; }},
    {TextureClass::SiltyClayLoam,
     [](const Triple& t) { return t.clay >= 27.0 && t.clay < 40.0 && t.sand <= 20.0; }},
    {TextureClass::SandyClay, [](const Triple& t) { return t.clay >= 35.0 && t.sand > 45.0; }},
    {TextureClass::SiltyClay, [](const Triple& t) { return t.clay >= 40.0 && t.silt >= 40.0; }},
    {TextureClass::Clay,
     [](const Triple& t) { return t.clay >= 40.0 && t.sand <= 45.0 && t.silt < 40.0; }},
}};

std::optional<TextureClass> first_match(const Triple& t)
{
    for (const auto& [cls, rule] : kRules) {
        if (rule(t))
            return cls;
    }
    return std::nullopt;
}

void check_percent(const char* field, double v)
{
    if (!std::isfinite(v) || v < 0.0 || v > 100.0)
        throw Error(ErrorCode::PercentOutOfRange, std::string(field) + " = " + std::to_string(v));
}

} // namespace

std::string_view short_name(TextureClass c) noexcept { return kNames[index_of(c)].abbrev; }

std::string_view long_name(TextureClass c) noexcept { return kNames[index_of(c)].name; }

std::optional<TextureClass> texture_class_from_short_name(std::string_view name) noexcept
{
    for (auto c : kAllTextureClasses) {
        if (short_name(c) == name)
            return c;
    }
    return std::nullopt;
}

TextureClass classify_texture(double sand_pct, double silt_pct, double clay_pct)
{
    check_percent("sand_pct", sand_pct);
    check_percent("silt_pct", silt_pct);
    check_percent("clay_pct", clay_pct);
    const double total = sand_pct + silt_pct + clay_pct;
    if (total <= 0.0)
        throw Error(ErrorCode::PercentOutOfRange, "texture triple sums to zero");

    Triple t{sand_pct, silt_pct, clay_pct};
    if (total != 100.0) {
        t.sand = sand_pct * (100.0 / total);
        t.clay = clay_pct * (100.0 / total);
    }
    t.silt = 100.0 - t.sand - t.clay;

    if (auto cls = first_match(t))
        return *cls;

    Triple snapped{std::round(t.sand), 0.0, std::round(t.clay)};
    snapped.silt = 100.0 - snapped.sand - snapped.clay;
    return first_match(snapped).value_or(TextureClass::Loam);
}

} // namespace ksat
