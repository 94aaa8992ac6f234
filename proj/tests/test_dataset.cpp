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
#include "ksat/dataset.hpp"
#include "ksat/error.hpp"
#include "ksat/texture.hpp"
#include "oracles.hpp"

#include <doctest.h>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace ksat;
using namespace ksat::data;

namespace {

const std::string kHeader =
    "id,source,method,bulk_density_g_cm3,sand_pct,silt_pct,clay_pct,sample_height_cm,sample_diameter_cm,ksat_cm_per_day\n";

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected ksat::Error");
    return ErrorCode::InvalidConfig;
}

std::filesystem::path temp_file(const std::string& name, const std::string& text)
{
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path, std::ios::binary) << text;
    return path;
}

IngestOptions evaluation()
{
    IngestOptions o;
    o.mode = IngestMode::Evaluation;
    return o;
}

} // namespace

TEST_CASE("ingest a valid file")
{
    const std::string text = kHeader + "a,S1,Constant head,1.5,40,40,20,7.6,7.6,12.5\n"
                                       "b,S1,Falling head,1.3,90,5,5,10,5,300\n"
                                       "\"c,1\",S2,\"Constant head\",1.6,20,50,30,40,10,2\n";
    const auto r = ingest_csv_text(text, evaluation());
    CHECK(r.accepted.size() == 3);
    CHECK(r.rejected.empty());
    CHECK(r.total_rows == 3);
    CHECK(r.accepted[2].id == "c,1");
    CHECK(r.accepted[1].method == "Falling head");
    CHECK(r.accepted[0].ksat_measured == 12.5);
    CHECK(r.accepted[0].height == 7.6);
}

TEST_CASE("invalid rows are rejected with their line number")
{
    const std::string text = kHeader + "a,S1,m,1.5,40,40,20,7.6,7.6,12.5\n"
                                       "b,S1,m,1.5,40,37,20,7.6,7.6,12.5\n"
                                       "c,S1,m,abc,40,40,20,7.6,7.6,12.5\n"
                                       "d,S1,m,1.5,40,40,20,7.6,7.6\n"
                                       "e,S1,m,1.5,40,40,20,7.6,7.6,\n";
    const auto r = ingest_csv_text(text, evaluation());
    CHECK(r.accepted.size() == 1);
    REQUIRE(r.rejected.size() == 4);
    CHECK(r.rejected[0].line == 3);
    CHECK(r.rejected[0].code == ErrorCode::TextureSumViolation);
    CHECK(r.rejected[1].line == 4);
    CHECK(r.rejected[1].code == ErrorCode::ParseError);
    CHECK(r.rejected[2].line == 5);
    CHECK(r.rejected[3].code == ErrorCode::MissingFeature);
    CHECK(r.total_rows == r.accepted.size() + r.rejected.size());

    // estimation mode tolerates an empty ksat cell
    const auto est = ingest_csv_text(text);
    CHECK(est.accepted.size() == 2);
    CHECK_FALSE(est.accepted[1].ksat_measured.has_value());
}

TEST_CASE("renormalization repairs rows only on request")
{
    const std::string text = kHeader + "a,S1,m,1.5,40,40,20.4,7.6,7.6,1\n";
    const auto plain = ingest_csv_text(text);
    REQUIRE(plain.accepted.size() == 1);
    CHECK(plain.accepted[0].clay_pct == 20.4);

    IngestOptions o;
    o.validation.renormalize = true;
    const auto r = ingest_csv_text(text, o);
    REQUIRE(r.accepted.size() == 1);
    const auto& s = r.accepted[0];
    CHECK(s.sand_pct + s.silt_pct + s.clay_pct == 100.0);
    CHECK(s.clay_pct == doctest::Approx(20.3187250996).epsilon(1e-10));

    // the tolerance still applies before rescaling
    const std::string off = kHeader + "a,S1,m,1.5,40,40,21,7.6,7.6,1\n";
    CHECK(ingest_csv_text(off, o).rejected.size() == 1);
}

TEST_CASE("header checks")
{
    const std::string no_ksat =
        "id,source,method,bulk_density_g_cm3,sand_pct,silt_pct,clay_pct,sample_height_cm,sample_diameter_cm\n"
        "a,S1,m,1.5,40,40,20,7.6,7.6\n";
    CHECK(ingest_csv_text(no_ksat).accepted.size() == 1);
    CHECK(code_of([&] { ingest_csv_text(no_ksat, evaluation()); }) == ErrorCode::HeaderMismatch);

    const std::string extra = "note," + kHeader + "x,a,S1,m,1.5,40,40,20,7.6,7.6,1\n";
    CHECK(code_of([&] { ingest_csv_text(extra); }) == ErrorCode::HeaderMismatch);
    IngestOptions o;
    o.ignore_extra = true;
    CHECK(ingest_csv_text(extra, o).accepted.size() == 1);

    const std::string missing = "id,source\n";
    try {
        ingest_csv_text(missing);
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::HeaderMismatch);
        CHECK(std::string(e.what()).find("sand_pct") != std::string::npos);
    }
    CHECK(code_of([] { ingest_csv_text(""); }) == ErrorCode::HeaderMismatch);
    CHECK(code_of([] { ingest_csv("/nonexistent/dir/x.csv"); }) == ErrorCode::FileError);
}

TEST_CASE("re-ingest is idempotent and write_csv round-trips")
{
    SynthConfig cfg;
    cfg.count = 300;
    const auto samples = generate_synthetic(cfg);
    std::ostringstream out;
    write_csv(out, samples);
    const auto path = temp_file("ksat_roundtrip.csv", out.str());
    const auto a = ingest_csv(path, evaluation());
    const auto b = ingest_csv(path, evaluation());
    CHECK(a.accepted == b.accepted);
    CHECK(a.rejected.empty());
    CHECK(a.accepted == samples);
    CHECK(a.path == b.path);
    std::filesystem::remove(path);
}

TEST_CASE("filter_applicable")
{
    SynthConfig cfg;
    cfg.count = 10;
    auto samples = generate_synthetic(cfg);
    for (int i : {2, 7}) {
        samples[i].sand_pct += samples[i].silt_pct;
        samples[i].silt_pct = 0;
    }
    const auto jabro = filter_applicable(samples, Estimator(ModelId::Jabro92));
    CHECK(jabro.kept.size() == 8);
    REQUIRE(jabro.excluded.size() == 2);
    CHECK(jabro.excluded[0].index == 2);
    CHECK(jabro.excluded[0].reason == ExclusionReason::ZeroSilt);
    CHECK(jabro.excluded[1].id == samples[7].id);

    samples[4].diameter.reset();
    const auto cpxr = filter_applicable(samples, Estimator(ModelId::Cpxr));
    CHECK(cpxr.kept.size() == 9);
    REQUIRE(cpxr.excluded.size() == 1);
    CHECK(cpxr.excluded[0].reason == ExclusionReason::MissingDimension);

    CHECK(filter_applicable(samples, Estimator(ModelId::Cosby84)).kept.size() == 10);
}

TEST_CASE("generate_synthetic is deterministic and valid")
{
    SynthConfig cfg;
    cfg.count = 5;
    CHECK(generate_synthetic(cfg) == generate_synthetic(cfg));
    cfg.seed = 43;
    SynthConfig other;
    other.count = 5;
    CHECK(generate_synthetic(cfg) != generate_synthetic(other));

    const auto corpus = generate_synthetic(SynthConfig{});
    REQUIRE(corpus.size() == 10000);
    std::set<std::string> ids;
    for (const auto& s : corpus) {
        REQUIRE(s.sand_pct + s.silt_pct + s.clay_pct == 100.0);
        REQUIRE(validate_sample(s, {0.0, false}) == s);
        REQUIRE(s.ksat_measured.has_value());
        REQUIRE(*s.ksat_measured >= 0.01);
        REQUIRE(*s.ksat_measured <= 1e6);
        ids.insert(s.id);
    }
    CHECK(ids.size() == corpus.size());
}

TEST_CASE("default corpus covers every texture class and every pattern")
{
    const auto corpus = generate_synthetic(SynthConfig{});
    std::set<TextureClass> classes;
    std::set<int> patterns;
    for (const auto& s : corpus) {
        classes.insert(oracle::usda_tree(s.sand_pct, s.silt_pct, s.clay_pct));
        const auto ps = oracle::particle_stats(s.sand_pct, s.silt_pct, s.clay_pct);
        const oracle::Features f{s.sand_pct,
                                 s.silt_pct,
                                 s.clay_pct,
                                 static_cast<double>(ps.dg),
                                 static_cast<double>(ps.sigma),
                                 s.bulk_density,
                                 *s.diameter,
                                 *s.height};
        for (int p = 1; p <= 14; ++p) {
            if (oracle::table_pattern(p, f))
                patterns.insert(p);
        }
    }
    CHECK(classes.size() == 12);
    CHECK(patterns.size() == 14);
}

TEST_CASE("invalid synthetic configs")
{
    SynthConfig zero;
    zero.count = 0;
    CHECK(code_of([&] { generate_synthetic(zero); }) == ErrorCode::InvalidConfig);
    SynthConfig flat;
    flat.height = {5.0, 5.0};
    CHECK(code_of([&] { generate_synthetic(flat); }) == ErrorCode::InvalidConfig);
    SynthConfig dense;
    dense.bulk_density = {1.0, 2.7};
    CHECK(code_of([&] { generate_synthetic(dense); }) == ErrorCode::InvalidConfig);
}
