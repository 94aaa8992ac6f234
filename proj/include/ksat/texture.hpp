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

#include <array>
#include <optional>
#include <string_view>

namespace ksat {

enum class TextureClass {
    Sand,
    LoamySand,
    SandyLoam,
    Loam,
    SiltLoam,
    Silt,
    SandyClayLoam,
    ClayLoam,
    SiltyClayLoam,
    SandyClay,
    SiltyClay,
    Clay,
};

inline constexpr std::array<TextureClass, 12> kAllTextureClasses = {
    TextureClass::Sand,          TextureClass::LoamySand,     TextureClass::SandyLoam,
    TextureClass::Loam,          TextureClass::SiltLoam,      TextureClass::Silt,
    TextureClass::SandyClayLoam, TextureClass::ClayLoam,      TextureClass::SiltyClayLoam,
    TextureClass::SandyClay,     TextureClass::SiltyClay,     TextureClass::Clay,
};

/// Abbreviation used in report headers ("Sa", "LSa", ..., "C").
std::string_view short_name(TextureClass c) noexcept;
std::string_view long_name(TextureClass c) noexcept;
std::optional<TextureClass> texture_class_from_short_name(std::string_view name) noexcept;

constexpr std::size_t index_of(TextureClass c) noexcept { return static_cast<std::size_t>(c); }

/// USDA texture class of a sand/silt/clay triple.
///
/// The triple is first rescaled to sum to 100, silt is taken as the
/// remainder, and then the rules below are tried in order; the first match
/// wins. The rules partition the texture triangle, so the order only matters
/// for reproducibility.
///
///   Sand             silt + 1.5 clay < 15
///   LoamySand        silt + 1.5 clay >= 15 and silt + 2 clay < 30
///   SandyLoam        (7 <= clay < 20 and sand > 52 and silt + 2 clay >= 30)
///                    or (clay < 7 and silt < 50 and silt + 2 clay >= 30)
///   Loam             7 <= clay < 27 and 28 <= silt < 50 and sand <= 52
///   SiltLoam         (silt >= 50 and 12 <= clay < 27)
///                    or (50 <= silt < 80 and clay < 12)
///   Silt             silt >= 80 and clay < 12
///   SandyClayLoam    20 <= clay < 35 and silt < 28 and sand > 45
///   ClayLoam         27 <= clay < 40 and 20 < sand <= 45
///   SiltyClayLoam    27 <= clay < 40 and sand <= 20
///   SandyClay        clay >= 35 and sand > 45
///   SiltyClay        clay >= 40 and silt >= 40
///   Clay             clay >= 40 and sand <= 45 and silt < 40
///
/// Throws PercentOutOfRange for negative, non-finite or all-zero input.
TextureClass classify_texture(double sand_pct, double silt_pct, double clay_pct);

} // namespace ksat
