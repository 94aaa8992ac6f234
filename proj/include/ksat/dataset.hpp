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

#include "ksat/error.hpp"
#include "ksat/models.hpp"
#include "ksat/soil.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ksat::data {

/// Column order of the sample CSV. Files may list the columns in any order.
inline constexpr std::array<std::string_view, 10> kCsvColumns = {
    "id",
    "source",
    "method",
    "bulk_density_g_cm3",
    "sand_pct",
    "silt_pct",
    "clay_pct",
    "sample_height_cm",
    "sample_diameter_cm",
    "ksat_cm_per_day",
};

enum class IngestMode {
    Estimation, // ksat_cm_per_day optional
    Evaluation, // ksat_cm_per_day required in the header and in every row
};

struct IngestOptions {
    ValidationOptions validation{};
    IngestMode mode = IngestMode::Estimation;
    bool ignore_extra = false;
};

struct RejectedRow {
    std::size_t line = 0; // 1-based line in the file; the header is line 1
    ErrorCode code{};
    std::string reason;
};

struct IngestResult {
    std::vector<SoilSample> accepted;
    std::vector<RejectedRow> rejected;
    std::string path;
    std::size_t total_rows = 0; // == accepted.size() + rejected.size()
};

/// Reads a sample CSV. Rows that fail to parse or validate are returned in
/// `rejected`, never dropped. Throws FileError or HeaderMismatch.
IngestResult ingest_csv(const std::filesystem::path& path, const IngestOptions& options = {});

/// Same, from in-memory text. `label` fills IngestResult::path.
IngestResult ingest_csv_text(std::string_view text, const IngestOptions& options = {}, std::string label = "<memory>");

/// Writes samples with the kCsvColumns header. Numbers use the shortest
/// representation that reads back to the same double; absent optional
/// values are empty cells.
void write_csv(std::ostream& out, std::span<const SoilSample> samples);

struct ExcludedSample {
    std::size_t index = 0; // position in the input
    std::string id;
    ExclusionReason reason{};
};

struct FilterResult {
    std::vector<SoilSample> kept;
    std::vector<ExcludedSample> excluded;
};

/// Splits samples into those the estimator can evaluate and those it
/// cannot, with machine-readable reasons. kept + excluded == input.
FilterResult filter_applicable(std::span<const SoilSample> samples, const Estimator& estimator);

struct Range {
    double lo = 0.0;
    double hi = 0.0;
};

/// Synthetic corpus parameters.
///
/// Generator contract (stable across releases and languages): a
/// std::mt19937_64 engine seeded with `seed`; each draw u in [0, 1) is
/// (engine() >> 11) * 2^-53. Per sample, in order:
///   a = floor(u * 6401), b = floor(u * 6401)        texture split points
///   sand = min(a,b)/64, silt = (max(a,b)-min(a,b))/64, clay = (6400-max(a,b))/64
///   bulk_density = lo + u (hi - lo)
///   height       = lo + u (hi - lo)
///   diameter     = lo + u (hi - lo)
///   ksat         = 10^(lo + u (hi - lo))
/// Percentages are multiples of 1/64 so the triple sums to exactly 100.
struct SynthConfig {
    std::uint64_t seed = 42;
    std::size_t count = 10000;
    Range bulk_density{1.1, 1.8};
    Range height{2.0, 50.0};
    Range diameter{3.0, 15.0};
    Range log10_ksat{-2.0, 6.0};
    std::string source = "synthetic";
    std::string method = "Constant head";
};

/// Throws InvalidConfig for count == 0 or a degenerate/invalid range.
std::vector<SoilSample> generate_synthetic(const SynthConfig& config);

} // namespace ksat::data
