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
#include "ksat/error.hpp"
#include "ksat/ptf_classic.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace ksat;
using namespace ksat::ptf;

namespace {

SoilSample make(double sa, double si, double cl, double bd = 1.5)
{
    SoilSample s;
    s.id = "t";
    s.sand_pct = sa;
    s.silt_pct = si;
    s.clay_pct = cl;
    s.bulk_density = bd;
    s.height = 5.0;
    s.diameter = 5.0;
    return s;
}

double k(ClassicModel m, const SoilSample& s, const ClassicOptions& o = {}) { return estimate_classic(m, s, o).cm_per_day; }

oracle::Big reference(ClassicModel m, const SoilSample& s)
{
    switch (m) {
    case ClassicModel::Brakensiek84: return oracle::brakensiek(s.sand_pct, s.clay_pct, s.bulk_density);
    case ClassicModel::CampbellShiozawa94: return oracle::campbell(s.silt_pct, s.clay_pct);
    case ClassicModel::Cosby84: return oracle::cosby(s.sand_pct, s.clay_pct);
    case ClassicModel::Jabro92: return oracle::jabro(s.silt_pct, s.clay_pct, s.bulk_density);
    case ClassicModel::Puckett85: return oracle::puckett(s.clay_pct);
    case ClassicModel::DanePuckett94: return oracle::dane_puckett(s.clay_pct);
    case ClassicModel::Saxton86: return oracle::saxton(s.sand_pct);
    }
    return 0;
}

} // namespace

TEST_CASE("exp(0) spot values are exact")
{
    CHECK(k(ClassicModel::Puckett85, make(60, 40, 0)) == 376.7);
    CHECK(k(ClassicModel::DanePuckett94, make(60, 40, 0)) == 729.22);
    CHECK(k(ClassicModel::CampbellShiozawa94, make(100, 0, 0)) == 129.6);
}

TEST_CASE("printed-formula spot values")
{
    // 50-digit evaluations of the printed formulas
    CHECK(k(ClassicModel::Cosby84, make(40, 40, 20)) == doctest::Approx(36.395270).epsilon(1e-7));
    CHECK(k(ClassicModel::Saxton86, make(90, 5, 5)) == doctest::Approx(4425.1250).epsilon(1e-7));
    CHECK(k(ClassicModel::Jabro92, make(30, 50, 20, 1.5)) == doctest::Approx(15.3434437).epsilon(1e-7));
    CHECK(k(ClassicModel::Brakensiek84, make(40, 40, 20, 1.325)) == doctest::Approx(28.701580).epsilon(1e-7));
}

TEST_CASE("every model matches its 50-digit transcription on 1000 random samples")
{
    testing::SampleSource src(2024);
    for (auto m : kAllClassicModels) {
        CAPTURE(model_key(m));
        int checked = 0;
        while (checked < 1000) {
            auto s = src.sample();
            s.bulk_density = src.uniform(1.0, 2.0);
            if (!is_applicable(m, s))
                continue;
            REQUIRE(oracle::rel_err(k(m, s), reference(m, s)) <= 1e-12);
            ++checked;
        }
    }
}

TEST_CASE("outputs are positive")
{
    testing::SampleSource src(5);
    for (int i = 0; i < 5000; ++i) {
        const auto s = src.sample();
        for (auto m : kAllClassicModels) {
            if (is_applicable(m, s))
                REQUIRE(k(m, s) > 0.0);
        }
    }
}

TEST_CASE("monotonicity")
{
    double prev_p = k(ClassicModel::Puckett85, make(50, 50, 0));
    double prev_d = k(ClassicModel::DanePuckett94, make(50, 50, 0));
    for (double cl = 1; cl <= 50; ++cl) {
        const auto s = make(50, 50 - cl, cl);
        REQUIRE(k(ClassicModel::Puckett85, s) < prev_p);
        REQUIRE(k(ClassicModel::DanePuckett94, s) < prev_d);
        prev_p = k(ClassicModel::Puckett85, s);
        prev_d = k(ClassicModel::DanePuckett94, s);
    }
    double prev_sx = k(ClassicModel::Saxton86, make(0, 80, 20));
    double prev_cs = k(ClassicModel::Cosby84, make(0, 80, 20));
    for (double sa = 1; sa <= 80; ++sa) {
        const auto s = make(sa, 80 - sa, 20);
        REQUIRE(k(ClassicModel::Saxton86, s) < prev_sx);
        REQUIRE(k(ClassicModel::Cosby84, s) > prev_cs);
        prev_sx = k(ClassicModel::Saxton86, s);
        prev_cs = k(ClassicModel::Cosby84, s);
    }
    prev_cs = k(ClassicModel::Cosby84, make(40, 60, 0));
    for (double cl = 1; cl <= 60; ++cl) {
        const double v = k(ClassicModel::Cosby84, make(40, 60 - cl, cl));
        REQUIRE(v < prev_cs);
        prev_cs = v;
    }
}

TEST_CASE("clay-only models ignore sand, silt and bulk density")
{
    testing::SampleSource src(9);
    for (int i = 0; i < 500; ++i) {
        const double cl = src.uniform(0, 90);
        const double sa = src.uniform(0, 100 - cl);
        const auto a = make(sa, 100 - cl - sa, cl, src.uniform(1.0, 2.0));
        const auto b = make(100 - cl, 0, cl, src.uniform(1.0, 2.0));
        REQUIRE(k(ClassicModel::Puckett85, a) == k(ClassicModel::Puckett85, b));
        REQUIRE(k(ClassicModel::DanePuckett94, a) == k(ClassicModel::DanePuckett94, b));
    }
}

TEST_CASE("applicability")
{
    CHECK_FALSE(is_applicable(ClassicModel::Jabro92, make(90, 0, 10)));
    CHECK_FALSE(is_applicable(ClassicModel::Jabro92, make(50, 50, 0)));
    CHECK(is_applicable(ClassicModel::Jabro92, make(30, 50, 20)));
    CHECK(is_applicable(ClassicModel::Cosby84, make(100, 0, 0)));
    for (auto m : kAllClassicModels) {
        if (m != ClassicModel::Jabro92)
            CHECK(is_applicable(m, make(100, 0, 0)));
    }
    try {
        k(ClassicModel::Jabro92, make(90, 0, 10));
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotApplicable);
    }
}

TEST_CASE("Brakensiek needs a physical porosity")
{
    try {
        k(ClassicModel::Brakensiek84, make(40, 40, 20, 2.7));
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonphysicalDensity);
    }
}

TEST_CASE("Jabro forms")
{
    const auto s = make(30, 50, 20, 1.5);
    // 9.56 - 0.81 log10 50 - 1.09 log10 20 - 6.96
    CHECK(jabro_log10_cm_per_hr(s) == doctest::Approx(-0.194).epsilon(1e-3));
    CHECK(k(ClassicModel::Jabro92, s) == doctest::Approx(24.0 * std::pow(10.0, jabro_log10_cm_per_hr(s))).epsilon(1e-14));

    ClassicOptions printed;
    printed.jabro_as_printed = true;
    try {
        k(ClassicModel::Jabro92, s, printed);
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonPositiveEstimate);
    }
    const auto loose = make(79, 1, 20, 1.0); // bracket > 0
    CHECK(k(ClassicModel::Jabro92, loose, printed) == doctest::Approx(24.0 * jabro_log10_cm_per_hr(loose)));
}

TEST_CASE("model keys round-trip")
{
    for (auto m : kAllClassicModels)
        CHECK(classic_model_from_key(model_key(m)) == m);
    CHECK_FALSE(classic_model_from_key("rosetta").has_value());
}
