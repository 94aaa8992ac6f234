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
#include "ksat/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <random>

namespace ksat::data {

namespace {

constexpr std::uint64_t kTextureUnits = 6400; // 1/64 percent resolution

class UnitDraw {
public:
    explicit UnitDraw(std::uint64_t seed) : engine_(seed) {}

    double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double in(const Range& r) { return r.lo + next() * (r.hi - r.lo); }

private:
    std::mt19937_64 engine_;
};

void check_range(const char* name, const Range& r, bool positive)
{
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || !(r.lo < r.hi) || (positive && !(r.lo > 0.0)))
        throw Error(ErrorCode::InvalidConfig, fmt::format("{} range [{}, {}] is invalid", name, r.lo, r.hi));
}

} // namespace

std::vector<SoilSample> generate_synthetic(const SynthConfig& config)
{
    if (config.count == 0)
        throw Error(ErrorCode::InvalidConfig, "count must be at least 1");
    check_range("bulk_density", config.bulk_density, true);
    if (config.bulk_density.hi > PhysicalConstants{}.particle_density)
        throw Error(ErrorCode::InvalidConfig, "bulk_density range exceeds the particle density");
    check_range("height", config.height, true);
    check_range("diameter", config.diameter, true);
    check_range("log10_ksat", config.log10_ksat, false);

    UnitDraw draw(config.seed);
    const int width = static_cast<int>(std::to_string(config.count).size());
    std::vector<SoilSample> out;
    out.reserve(config.count);
    for (std::size_t i = 0; i < config.count; ++i) {
        const auto a = static_cast<std::uint64_t>(draw.next() * static_cast<double>(kTextureUnits + 1));
        const auto b = static_cast<std::uint64_t>(draw.next() * static_cast<double>(kTextureUnits + 1));
        const auto [lo, hi] = std::minmax(a, b);

        SoilSample s;
        s.id = fmt::format("syn-{:0{}}", i + 1, width);
        s.source = config.source;
        s.method = config.method;
        s.sand_pct = static_cast<double>(lo) / 64.0;
        s.silt_pct = static_cast<double>(hi - lo) / 64.0;
        s.clay_pct = static_cast<double>(kTextureUnits - hi) / 64.0;
        s.bulk_density = draw.in(config.bulk_density);
        s.height = draw.in(config.height);
        s.diameter = draw.in(config.diameter);
        s.ksat_measured = std::pow(10.0, draw.in(config.log10_ksat));
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace ksat::data
