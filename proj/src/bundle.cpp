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

#include "ksat/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <set>
#include <sstream>

namespace ksat::cpxr {

namespace {

constexpr std::string_view kMagic = "cpxr-bundle";
constexpr int kFormatVersion = 1;

std::vector<std::string_view> split_words(std::string_view line)
{
    std::vector<std::string_view> words;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t'))
            ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t')
            ++i;
        if (i > start)
            words.push_back(line.substr(start, i - start));
    }
    return words;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    CpxrModel parse()
    {
        while (next_line()) {
            const auto& w = words_;
            if (w[0] == kMagic) {
                expect_count(2);
                if (seen_magic_)
                    fail("duplicate format line");
                if (parse_int(w[1]) != kFormatVersion)
                    fail(fmt::format("unsupported format version {}", w[1]));
                seen_magic_ = true;
                continue;
            }
            if (!seen_magic_)
                fail(fmt::format("document must start with '{} {}'", kMagic, kFormatVersion));

            if (w[0] == "features") {
                if (w.size() < 2)
                    fail("features needs at least one name");
                if (!model_.feature_names.empty())
                    fail("duplicate features line");
                for (std::size_t i = 1; i < w.size(); ++i) {
                    if (model_.feature_index(w[i]))
                        schema(fmt::format("feature '{}' declared twice", w[i]));
                    if (w[i] == "intercept")
                        schema("'intercept' is reserved");
                    model_.feature_names.emplace_back(w[i]);
                }
            } else if (w[0] == "output") {
                if (w.size() < 2)
                    fail("output needs a description");
                model_.output = join_rest(1);
            } else if (w[0] == "weighting") {
                expect_count(2);
                auto v = parse_weighting(w[1]);
                if (!v)
                    fail(fmt::format("unknown weighting '{}'", w[1]));
                model_.weighting = *v;
            } else if (w[0] == "averaging") {
                expect_count(2);
                auto v = parse_averaging(w[1]);
                if (!v)
                    fail(fmt::format("unknown averaging '{}'", w[1]));
                model_.averaging = *v;
            } else if (w[0] == "baseline") {
                expect_count(1);
                require_features();
                if (seen_baseline_)
                    schema("duplicate baseline block");
                seen_baseline_ = true;
                model_.baseline = parse_linear_block("baseline");
            } else if (w[0] == "pattern") {
                expect_count(2);
                require_features();
                model_.entries.push_back(parse_pattern_block(parse_int(w[1])));
            } else {
                fail(fmt::format("unexpected '{}'", w[0]));
            }
        }
        if (!seen_magic_)
            fail("empty document");
        if (model_.feature_names.empty())
            schema("no features declared");
        if (model_.output.empty())
            schema("no output declaration");
        if (!seen_baseline_)
            schema("no baseline block");
        return std::move(model_);
    }

private:
    bool next_line()
    {
        while (pos_ < text_.size()) {
            const std::size_t eol = std::min(text_.find('\n', pos_), text_.size());
            std::string_view line = text_.substr(pos_, eol - pos_);
            pos_ = eol + 1;
            ++line_no_;
            if (const auto hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            if (!line.empty() && line.back() == '\r')
                line.remove_suffix(1);
            words_ = split_words(line);
            if (!words_.empty())
                return true;
        }
        words_.clear();
        return false;
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw Error(ErrorCode::ParseError, fmt::format("line {}: {}", line_no_, what));
    }

    [[noreturn]] void schema(const std::string& what) const
    {
        throw Error(ErrorCode::SchemaError, fmt::format("line {}: {}", line_no_, what));
    }

    void expect_count(std::size_t n) const
    {
        if (words_.size() != n)
            fail(fmt::format("'{}' takes {} argument(s), got {}", words_[0], n - 1, words_.size() - 1));
    }

    void require_features() const
    {
        if (model_.feature_names.empty())
            fail("features must be declared before model blocks");
    }

    std::string join_rest(std::size_t from) const
    {
        std::string out;
        for (std::size_t i = from; i < words_.size(); ++i) {
            if (!out.empty())
                out += ' ';
            out += words_[i];
        }
        return out;
    }

    int parse_int(std::string_view s) const
    {
        int v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size())
            fail(fmt::format("'{}' is not an integer", s));
        return v;
    }

    double parse_number(std::string_view s, std::string_view field) const
    {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
            fail(fmt::format("{}: '{}' is not a finite number", field, s));
        return v;
    }

    std::optional<double> parse_bound(std::string_view s, std::string_view infinite) const
    {
        if (s == infinite)
            return std::nullopt;
        return parse_number(s, "bound");
    }

    std::size_t feature(std::string_view name) const
    {
        auto idx = model_.feature_index(name);
        if (!idx)
            schema(fmt::format("unknown feature '{}'", name));
        return *idx;
    }

    // "intercept v" / "feature v" lines up to and including `end`.
    LinearModel parse_linear_block(std::string_view block)
    {
        LinearModel lm;
        bool have_intercept = false;
        std::set<std::size_t> seen;
        while (next_line()) {
            if (words_[0] == "end") {
                expect_count(1);
                if (!have_intercept)
                    schema(fmt::format("{} block has no intercept", block));
                return lm;
            }
            expect_count(2);
            if (words_[0] == "intercept") {
                if (have_intercept)
                    schema(fmt::format("{} block has two intercepts", block));
                lm.intercept = parse_number(words_[1], "intercept");
                have_intercept = true;
                continue;
            }
            const std::size_t f = feature(words_[0]);
            if (!seen.insert(f).second)
                schema(fmt::format("feature '{}' appears twice in {} block", words_[0], block));
            lm.terms.push_back({f, parse_number(words_[1], words_[0])});
        }
        fail(fmt::format("{} block is not closed with 'end'", block));
    }

    Entry parse_pattern_block(int id)
    {
        for (const auto& e : model_.entries) {
            if (e.pattern.id == id)
                schema(fmt::format("pattern {} defined twice", id));
        }
        Entry entry;
        entry.pattern.id = id;
        bool have_arr = false;
        bool have_support = false;
        bool in_criteria = false;
        std::set<std::size_t> seen;
        const std::string block = fmt::format("pattern {}", id);

        while (next_line()) {
            const auto& w = words_;
            if (w[0] == "end")
                schema(fmt::format("{} has no local block", block));
            if (w[0] == "local") {
                expect_count(1);
                if (!have_arr || !have_support)
                    schema(fmt::format("{} needs arr and support before local", block));
                if (entry.pattern.criteria.empty())
                    schema(fmt::format("{} has no criteria", block));
                entry.local = parse_linear_block(block + " local");
                return entry;
            }
            if (w[0] == "criteria") {
                expect_count(1);
                in_criteria = true;
                continue;
            }
            if (!in_criteria && w[0] == "arr") {
                expect_count(2);
                entry.pattern.arr = parse_number(w[1], "arr");
                if (entry.pattern.arr < 0.0)
                    schema(fmt::format("{}: arr must be >= 0", block));
                have_arr = true;
                continue;
            }
            if (!in_criteria && w[0] == "support") {
                expect_count(2);
                entry.pattern.support = parse_number(w[1], "support");
                if (entry.pattern.support < 0.0 || entry.pattern.support > 100.0)
                    schema(fmt::format("{}: support must be a percentage", block));
                have_support = true;
                continue;
            }
            if (!in_criteria)
                fail(fmt::format("unexpected '{}' in {}", w[0], block));

            expect_count(3);
            Criterion c;
            c.feature = feature(w[0]);
            if (!seen.insert(c.feature).second)
                schema(fmt::format("{}: feature '{}' constrained twice", block, w[0]));
            c.interval.lower = parse_bound(w[1], "-inf");
            c.interval.upper = parse_bound(w[2], "+inf");
            if (!c.interval.lower && !c.interval.upper)
                schema(fmt::format("{}: criterion on '{}' has no bound", block, w[0]));
            if (c.interval.lower && c.interval.upper && !(*c.interval.lower < *c.interval.upper))
                schema(fmt::format("{}: criterion on '{}' has lower >= upper", block, w[0]));
            entry.pattern.criteria.push_back(c);
        }
        fail(fmt::format("{} is not closed with 'end'", block));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_no_ = 0;
    std::vector<std::string_view> words_;
    CpxrModel model_;
    bool seen_magic_ = false;
    bool seen_baseline_ = false;
};

std::string shortest(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

void write_linear(std::ostringstream& out, const CpxrModel& m, const LinearModel& lm, std::string_view indent)
{
    out << indent << "intercept " << shortest(lm.intercept) << '\n';
    for (const auto& t : lm.terms)
        out << indent << m.feature_names.at(t.feature) << ' ' << shortest(t.coefficient) << '\n';
}

} // namespace

CpxrModel load_bundle(std::string_view text) { return Parser(text).parse(); }

std::string serialize_bundle(const CpxrModel& m)
{
    std::ostringstream out;
    out << kMagic << ' ' << kFormatVersion << '\n';
    out << "features";
    for (const auto& f : m.feature_names)
        out << ' ' << f;
    out << '\n';
    out << "output " << m.output << '\n';
    out << "weighting " << to_string(m.weighting) << '\n';
    out << "averaging " << to_string(m.averaging) << '\n';
    out << "\nbaseline\n";
    write_linear(out, m, m.baseline, "  ");
    out << "end\n";
    for (const auto& e : m.entries) {
        out << "\npattern " << e.pattern.id << '\n';
        out << "  arr " << shortest(e.pattern.arr) << '\n';
        out << "  support " << shortest(e.pattern.support) << '\n';
        out << "  criteria\n";
        for (const auto& c : e.pattern.criteria) {
            out << "    " << m.feature_names.at(c.feature) << ' '
                << (c.interval.lower ? shortest(*c.interval.lower) : "-inf") << ' '
                << (c.interval.upper ? shortest(*c.interval.upper) : "+inf") << '\n';
        }
        out << "  local\n";
        write_linear(out, m, e.local, "    ");
        out << "end\n";
    }
    return out.str();
}

const CpxrModel& default_model()
{
    static const CpxrModel model = load_bundle(default_bundle_text());
    return model;
}

} // namespace ksat::cpxr
