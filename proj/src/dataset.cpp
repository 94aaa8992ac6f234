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
#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace ksat::data {

namespace {

enum Column : std::size_t {
    kId,
    kSource,
    kMethod,
    kBulkDensity,
    kSand,
    kSilt,
    kClay,
    kHeight,
    kDiameter,
    kKsat,
};

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

// RFC 4180 style: fields may be double-quoted, with "" for a literal quote.
// Embedded newlines are not supported.
std::optional<std::vector<std::string>> split_csv_line(std::string_view line)
{
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += ch;
            }
        } else if (ch == '"') {
            if (!trim(field).empty())
                return std::nullopt;
            field.clear();
            quoted = true;
            was_quoted = true;
        } else if (ch == ',') {
            fields.push_back(was_quoted ? field : std::string(trim(field)));
            field.clear();
            was_quoted = false;
        } else {
            field += ch;
        }
    }
    if (quoted)
        return std::nullopt;
    fields.push_back(was_quoted ? field : std::string(trim(field)));
    return fields;
}

std::optional<double> parse_double(std::string_view s)
{
    s = trim(s);
    if (s.empty())
        return std::nullopt;
    if (s.front() == '+')
        s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw Error(ErrorCode::ParseError, fmt::format("'{}' is not a number", s));
    return v;
}

double required_number(const std::vector<std::string>& cells, std::size_t col, std::string_view name)
{
    try {
        if (auto v = parse_double(cells[col]))
            return *v;
    } catch (const Error& e) {
        throw Error(ErrorCode::ParseError, fmt::format("{}: {}", name, e.what()));
    }
    throw Error(ErrorCode::ParseError, fmt::format("{} is empty", name));
}

std::optional<double> optional_number(const std::vector<std::string>& cells, std::size_t col, std::string_view name)
{
    try {
        return parse_double(cells[col]);
    } catch (const Error& e) {
        throw Error(ErrorCode::ParseError, fmt::format("{}: {}", name, e.what()));
    }
}

std::string shortest(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string quote_if_needed(const std::string& s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos && trim(s) == s)
        return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"')
            out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

} // namespace

IngestResult ingest_csv_text(std::string_view text, const IngestOptions& options, std::string label)
{
    IngestResult result;
    result.path = std::move(label);

    std::size_t pos = 0;
    std::size_t line_no = 0;
    auto next_line = [&](std::string_view& line) {
        if (pos >= text.size())
            return false;
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        return true;
    };

    std::string_view line;
    if (!next_line(line))
        throw Error(ErrorCode::HeaderMismatch, fmt::format("{}: no header row", result.path));
    if (line.starts_with("\xEF\xBB\xBF"))
        line.remove_prefix(3);
    const auto header = split_csv_line(line);
    if (!header)
        throw Error(ErrorCode::HeaderMismatch, fmt::format("{}: malformed header row", result.path));

    // position of each known column in the file, or npos
    std::array<std::size_t, kCsvColumns.size()> where;
    where.fill(std::string::npos);
    std::vector<std::string> unknown;
    std::vector<std::string> duplicate;
    for (std::size_t i = 0; i < header->size(); ++i) {
        const auto& name = (*header)[i];
        const auto it = std::find(kCsvColumns.begin(), kCsvColumns.end(), name);
        if (it == kCsvColumns.end()) {
            unknown.push_back(name);
            continue;
        }
        auto& slot = where[static_cast<std::size_t>(it - kCsvColumns.begin())];
        if (slot != std::string::npos)
            duplicate.push_back(name);
        slot = i;
    }
    std::vector<std::string> missing;
    for (std::size_t c = 0; c < kCsvColumns.size(); ++c) {
        if (where[c] == std::string::npos && !(c == kKsat && options.mode == IngestMode::Estimation))
            missing.emplace_back(kCsvColumns[c]);
    }
    if (!missing.empty() || !duplicate.empty() || (!unknown.empty() && !options.ignore_extra)) {
        std::string msg = result.path + ":";
        if (!missing.empty())
            msg += fmt::format(" missing columns [{}]", fmt::join(missing, ", "));
        if (!unknown.empty() && !options.ignore_extra)
            msg += fmt::format(" unknown columns [{}] (use --ignore-extra)", fmt::join(unknown, ", "));
        if (!duplicate.empty())
            msg += fmt::format(" duplicate columns [{}]", fmt::join(duplicate, ", "));
        throw Error(ErrorCode::HeaderMismatch, msg);
    }

    while (next_line(line)) {
        if (trim(line).empty())
            continue;
        ++result.total_rows;
        try {
            const auto fields = split_csv_line(line);
            if (!fields)
                throw Error(ErrorCode::ParseError, "unbalanced quotes");
            if (fields->size() != header->size())
                throw Error(ErrorCode::ParseError,
                            fmt::format("expected {} fields, found {}", header->size(), fields->size()));

            std::vector<std::string> cells(kCsvColumns.size());
            for (std::size_t c = 0; c < kCsvColumns.size(); ++c) {
                if (where[c] != std::string::npos)
                    cells[c] = (*fields)[where[c]];
            }

            SoilSample s;
            s.id = cells[kId];
            s.source = cells[kSource];
            s.method = cells[kMethod];
            s.bulk_density = required_number(cells, kBulkDensity, kCsvColumns[kBulkDensity]);
            s.sand_pct = required_number(cells, kSand, kCsvColumns[kSand]);
            s.silt_pct = required_number(cells, kSilt, kCsvColumns[kSilt]);
            s.clay_pct = required_number(cells, kClay, kCsvColumns[kClay]);
            s.height = optional_number(cells, kHeight, kCsvColumns[kHeight]);
            s.diameter = optional_number(cells, kDiameter, kCsvColumns[kDiameter]);
            s.ksat_measured = optional_number(cells, kKsat, kCsvColumns[kKsat]);
            if (options.mode == IngestMode::Evaluation && !s.ksat_measured)
                throw Error(ErrorCode::MissingFeature, "ksat_cm_per_day is empty");

            result.accepted.push_back(validate_sample(std::move(s), options.validation));
        } catch (const Error& e) {
            result.rejected.push_back({line_no, e.code(), e.what()});
        }
    }
    return result;
}

IngestResult ingest_csv(const std::filesystem::path& path, const IngestOptions& options)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::FileError, fmt::format("cannot open '{}'", path.string()));
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad())
        throw Error(ErrorCode::FileError, fmt::format("error reading '{}'", path.string()));
    return ingest_csv_text(buffer.str(), options, path.string());
}

void write_csv(std::ostream& out, std::span<const SoilSample> samples)
{
    out << fmt::format("{}\n", fmt::join(kCsvColumns, ","));
    auto opt = [](const std::optional<double>& v) { return v ? shortest(*v) : std::string(); };
    for (const auto& s : samples) {
        out << quote_if_needed(s.id) << ',' << quote_if_needed(s.source) << ',' << quote_if_needed(s.method) << ','
            << shortest(s.bulk_density) << ',' << shortest(s.sand_pct) << ',' << shortest(s.silt_pct) << ','
            << shortest(s.clay_pct) << ',' << opt(s.height) << ',' << opt(s.diameter) << ','
            << opt(s.ksat_measured) << '\n';
    }
}

FilterResult filter_applicable(std::span<const SoilSample> samples, const Estimator& estimator)
{
    FilterResult result;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (auto reason = estimator.exclusion(samples[i]))
            result.excluded.push_back({i, samples[i].id, *reason});
        else
            result.kept.push_back(samples[i]);
    }
    return result;
}

} // namespace ksat::data
