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
#include "cli.hpp"

#include "ksat/dataset.hpp"
#include "ksat/error.hpp"
#include "ksat/models.hpp"
#include "ksat/report.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace ksat::cli {

namespace fs = std::filesystem;

namespace {

/// Options shared by the dataset commands.
struct Common {
    std::string input;
    std::string output;
    std::string models = "all";
    double tolerance = 0.5;
    bool renormalize = false;
    std::string weighting;
    std::string avg_space;
    bool ignore_extra = false;
    bool jabro_as_printed = false;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string human(double v) { return fmt::format("{:.6g}", v); }

std::string exact(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

void add_common(CLI::App* cmd, Common& c, bool needs_input)
{
    auto* in = cmd->add_option("--input", c.input, "Sample CSV");
    if (needs_input)
        in->required();
    cmd->add_option("--models,--model", c.models, "Comma-separated model keys or 'all'");
    cmd->add_option("--tolerance", c.tolerance, "Allowed |sand + silt + clay - 100| in percent");
    cmd->add_flag("--renormalize", c.renormalize, "Rescale texture triples to sum to 100");
    cmd->add_option("--weighting", c.weighting, "CPXR weights: arr|uniform");
    cmd->add_option("--avg-space", c.avg_space, "CPXR averaging space: log|linear");
    cmd->add_flag("--ignore-extra", c.ignore_extra, "Accept unknown CSV columns");
    cmd->add_flag("--jabro-as-printed", c.jabro_as_printed,
                  "Audit only: evaluate Jabro (1992) as 24*[bracket] instead of 24*10^[bracket]");
}

std::vector<ModelId> parse_models(const std::string& list)
{
    if (list == "all")
        return {kAllModels.begin(), kAllModels.end()};
    std::vector<ModelId> out;
    std::stringstream ss(list);
    std::string key;
    while (std::getline(ss, key, ',')) {
        auto id = model_from_key(key);
        if (!id) {
            std::string known;
            for (auto m : kAllModels)
                known += fmt::format("{}{}", known.empty() ? "" : ", ", model_key(m));
            throw UsageError(fmt::format("unknown model '{}' (known: {})", key, known));
        }
        if (std::find(out.begin(), out.end(), *id) == out.end())
            out.push_back(*id);
    }
    if (out.empty())
        throw UsageError("no models selected");
    return out;
}

std::vector<Estimator> make_estimators(const Common& c)
{
    EstimatorConfig config;
    config.jabro_as_printed = c.jabro_as_printed;
    if (!c.weighting.empty()) {
        config.cpxr_options.weighting = cpxr::parse_weighting(c.weighting);
        if (!config.cpxr_options.weighting)
            throw UsageError(fmt::format("--weighting must be arr or uniform, got '{}'", c.weighting));
    }
    if (!c.avg_space.empty()) {
        config.cpxr_options.averaging = cpxr::parse_averaging(c.avg_space);
        if (!config.cpxr_options.averaging)
            throw UsageError(fmt::format("--avg-space must be log or linear, got '{}'", c.avg_space));
    }
    std::vector<Estimator> out;
    for (auto id : parse_models(c.models))
        out.emplace_back(id, config);
    return out;
}

data::IngestResult load(const Common& c, data::IngestMode mode, std::ostream& err)
{
    data::IngestOptions options;
    options.mode = mode;
    options.ignore_extra = c.ignore_extra;
    options.validation.texture_tolerance = c.tolerance;
    options.validation.renormalize = c.renormalize;
    auto result = data::ingest_csv(c.input, options);
    for (const auto& r : result.rejected)
        err << fmt::format("{}:{}: rejected: {}\n", result.path, r.line, r.reason);
    if (!result.rejected.empty())
        err << fmt::format("{}: rejected {} of {} rows\n", result.path, result.rejected.size(), result.total_rows);
    if (result.accepted.empty())
        throw Error(ErrorCode::EmptyDataset, fmt::format("{}: no valid rows", result.path));
    return result;
}

/// Writes `text` to DIR/name, or to `out` under a heading when no directory
/// was given.
void emit(const Common& c, const std::string& name, const std::string& text, std::ostream& out)
{
    if (c.output.empty()) {
        out << text;
        return;
    }
    std::error_code ec;
    fs::create_directories(c.output, ec);
    const fs::path path = fs::path(c.output) / name;
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw Error(ErrorCode::FileError, fmt::format("cannot write '{}'", path.string()));
    file << text;
}

std::string trace_text(const cpxr::Prediction& p)
{
    std::vector<std::string> ids;
    std::vector<std::string> weights;
    for (const auto& t : p.trace) {
        ids.push_back(std::to_string(t.pattern_id));
        weights.push_back(human(t.weight));
    }
    if (ids.empty())
        return "patterns=[] (baseline)";
    return fmt::format("patterns=[{}] weights=[{}]", fmt::join(ids, ","), fmt::join(weights, ","));
}

// ---------------------------------------------------------------- estimate

struct InlineSample {
    std::optional<double> sand;
    std::optional<double> silt;
    std::optional<double> clay;
    std::optional<double> bulk_density;
    std::optional<double> length;
    std::optional<double> diameter;
};

int run_estimate(const Common& c, const InlineSample& in, std::ostream& out, std::ostream& err)
{
    const auto estimators = make_estimators(c);

    if (!c.input.empty()) {
        const auto data = load(c, data::IngestMode::Estimation, err);
        std::string csv = "id,model,ksat_cm_per_day,excluded,patterns,weights\n";
        for (const auto& s : data.accepted) {
            for (const auto& est : estimators) {
                std::string patterns;
                std::string weights;
                std::string value;
                std::string excluded;
                if (est.id() == ModelId::Cpxr && s.height && s.diameter) {
                    const auto p = cpxr::predict_sample_log(est.cpxr_model(), s, est.config().cpxr_options,
                                                            est.config().constants);
                    value = exact(std::pow(10.0, p.log10_value));
                    for (const auto& t : p.trace) {
                        patterns += fmt::format("{}{}", patterns.empty() ? "" : ";", t.pattern_id);
                        weights += fmt::format("{}{}", weights.empty() ? "" : ";", exact(t.weight));
                    }
                } else {
                    const auto outcome = est.try_estimate(s);
                    if (outcome.value)
                        value = exact(outcome.value->cm_per_day);
                    else
                        excluded = std::string(to_string(*outcome.excluded));
                }
                csv += fmt::format("{},{},{},{},{},{}\n", s.id, model_key(est.id()), value, excluded, patterns,
                                   weights);
            }
        }
        emit(c, "estimates.csv", csv, out);
        return kSuccess;
    }

    if (!in.sand || !in.silt || !in.clay || !in.bulk_density)
        throw UsageError("estimate needs --input or all of --sand, --silt, --clay, --bd");

    SoilSample raw;
    raw.id = "cli";
    raw.sand_pct = *in.sand;
    raw.silt_pct = *in.silt;
    raw.clay_pct = *in.clay;
    raw.bulk_density = *in.bulk_density;
    raw.height = in.length;
    raw.diameter = in.diameter;
    const auto sample = validate_sample(raw, {c.tolerance, c.renormalize});

    std::size_t printed = 0;
    for (const auto& est : estimators) {
        try {
            if (est.id() == ModelId::Cpxr) {
                const auto p = cpxr::predict_sample_log(est.cpxr_model(), sample, est.config().cpxr_options,
                                                        est.config().constants);
                out << fmt::format("{}: {} cm/day {}\n", model_key(est.id()), human(std::pow(10.0, p.log10_value)),
                                   trace_text(p));
            } else {
                out << fmt::format("{}: {} cm/day\n", model_key(est.id()), human(est.estimate(sample).cm_per_day));
            }
            ++printed;
        } catch (const Error& e) {
            err << fmt::format("{}: {}\n", model_key(est.id()), e.what());
        }
    }
    return printed > 0 ? kSuccess : kDataError;
}

// ---------------------------------------------------------------- evaluate

std::string class_table(const eval::EvalReport& report, bool rmsle_table)
{
    std::string text = rmsle_table ? "# RMSLE by USDA texture class (* = least RMSLE in column)\n"
                                   : "# MLE by USDA texture class\n";
    constexpr int kModelWidth = 15;
    constexpr int kCellWidth = 10;
    text += fmt::format("{:<{}}", "model", kModelWidth);
    for (auto cls : kAllTextureClasses)
        text += fmt::format("{:>{}}", short_name(cls), kCellWidth);
    text += fmt::format("{:>{}}\n", "Overall", kCellWidth);

    text += fmt::format("{:<{}}", "n(samples)", kModelWidth);
    for (auto cls : kAllTextureClasses)
        text += fmt::format("{:>{}}", report.class_counts[index_of(cls)], kCellWidth);
    text += fmt::format("{:>{}}\n", report.total, kCellWidth);

    auto cell_text = [&](const eval::ReportCell& cell) {
        const auto& v = rmsle_table ? cell.rmsle : cell.mle;
        if (!v)
            return std::string("-");
        return human(*v) + (rmsle_table && cell.best ? "*" : "");
    };
    for (const auto& row : report.rows) {
        text += fmt::format("{:<{}}", model_key(row.model), kModelWidth);
        for (const auto& cell : row.by_class)
            text += fmt::format("{:>{}}", cell_text(cell), kCellWidth);
        text += fmt::format("{:>{}}\n", cell_text(row.overall), kCellWidth);
    }
    return text;
}

std::string overall_table(const eval::EvalReport& report)
{
    std::string text = "# Overall\n";
    text += fmt::format("{:<15}{:>8}{:>10}{:>12}{:>12}{:>6}  {}\n", "model", "n", "excluded", "MLE", "RMSLE",
                        "best", "reference");
    for (const auto& row : report.rows) {
        std::size_t excluded = 0;
        for (auto n : row.excluded)
            excluded += n;
        text += fmt::format("{:<15}{:>8}{:>10}{:>12}{:>12}{:>6}  {}\n", model_key(row.model), row.overall.n, excluded,
                            row.overall.mle ? human(*row.overall.mle) : "-",
                            row.overall.rmsle ? human(*row.overall.rmsle) : "-", row.overall.best ? "*" : "",
                            model_reference(row.model));
    }
    return text;
}

int run_evaluate(const Common& c, std::ostream& out, std::ostream& err)
{
    const auto estimators = make_estimators(c);
    const auto data = load(c, data::IngestMode::Evaluation, err);
    const auto report = eval::per_class_report(data.accepted, estimators);

    const auto mle = class_table(report, false);
    const auto rmsle = class_table(report, true);
    const auto overall = overall_table(report);
    if (c.output.empty()) {
        out << mle << '\n' << rmsle << '\n' << overall;
    } else {
        emit(c, "mle_by_class.txt", mle, out);
        emit(c, "rmsle_by_class.txt", rmsle, out);
        emit(c, "overall.txt", overall, out);
    }
    return kSuccess;
}

// ---------------------------------------------------------------- report

std::string report_csv(const eval::EvalReport& report)
{
    std::string text = "model,class,n,mle,rmsle,best\n";
    auto line = [&](ModelId m, std::string_view cls, const eval::ReportCell& cell) {
        text += fmt::format("{},{},{},{},{},{}\n", model_key(m), cls, cell.n, cell.mle ? exact(*cell.mle) : "",
                            cell.rmsle ? exact(*cell.rmsle) : "", cell.best ? 1 : 0);
    };
    for (const auto& row : report.rows) {
        for (auto cls : kAllTextureClasses)
            line(row.model, short_name(cls), row.by_class[index_of(cls)]);
        line(row.model, "Overall", row.overall);
    }
    return text;
}

std::string exclusions_csv(const eval::EvalReport& report)
{
    std::string text = "model";
    for (auto r : kAllExclusionReasons)
        text += fmt::format(",{}", to_string(r));
    text += '\n';
    for (const auto& row : report.rows) {
        text += model_key(row.model);
        for (auto n : row.excluded)
            text += fmt::format(",{}", n);
        text += '\n';
    }
    return text;
}

std::string summary_csv(const std::vector<eval::GroupSummary>& groups)
{
    std::string text = "source,samples,method,singleton";
    for (const char* f : {"bulk_density_g_cm3", "sand_pct", "silt_pct", "clay_pct", "sample_height_cm",
                          "sample_diameter_cm", "ksat_cm_per_day"})
        text += fmt::format(",{0}_n,{0}_mean,{0}_sd", f);
    text += '\n';
    auto stats = [](const std::optional<eval::FieldStats>& s) {
        if (!s)
            return std::string("0,,");
        return fmt::format("{},{},{}", s->n, exact(s->mean), exact(s->sd));
    };
    for (const auto& g : groups) {
        text += fmt::format("{},{},{},{}", g.group, g.samples, g.method, g.singleton ? 1 : 0);
        for (const auto& s : {std::optional(g.bulk_density), std::optional(g.sand), std::optional(g.silt),
                              std::optional(g.clay), g.height, g.diameter, g.ksat})
            text += "," + stats(s);
        text += '\n';
    }
    return text;
}

std::string texture_csv(std::span<const SoilSample> samples)
{
    std::string text = "class,name,count,percent\n";
    for (const auto& share : eval::texture_distribution(samples))
        text += fmt::format("{},{},{},{}\n", short_name(share.texture), long_name(share.texture), share.count,
                            exact(share.percent));
    return text;
}

std::string ternary_csv(std::span<const SoilSample> samples)
{
    std::string text = "id,class,sand_pct,silt_pct,clay_pct,x,y\n";
    for (const auto& s : samples) {
        const auto p = eval::ternary_position(s.sand_pct, s.silt_pct, s.clay_pct);
        text += fmt::format("{},{},{},{},{},{},{}\n", s.id,
                            short_name(classify_texture(s.sand_pct, s.silt_pct, s.clay_pct)), exact(s.sand_pct),
                            exact(s.silt_pct), exact(s.clay_pct), exact(p.x), exact(p.y));
    }
    return text;
}

int run_report(const Common& c, std::ostream& out, std::ostream& err)
{
    const auto estimators = make_estimators(c);
    const auto data = load(c, data::IngestMode::Evaluation, err);
    const auto report = eval::per_class_report(data.accepted, estimators);

    if (c.output.empty()) {
        out << report_csv(report);
        return kSuccess;
    }
    emit(c, "eval_report.csv", report_csv(report), out);
    emit(c, "exclusions.csv", exclusions_csv(report), out);
    emit(c, "summary_stats.csv", summary_csv(eval::summary_stats(data.accepted)), out);
    emit(c, "texture_distribution.csv", texture_csv(data.accepted), out);
    emit(c, "ternary_points.csv", ternary_csv(data.accepted), out);
    return kSuccess;
}

// ---------------------------------------------------------------- scatter

std::string scatter_svg(ModelId model, const std::vector<eval::ScatterPoint>& points)
{
    double lo = -2.0;
    double hi = 6.0;
    for (const auto& p : points) {
        if (p.model != model)
            continue;
        lo = std::min({lo, std::floor(p.log10_measured), std::floor(p.log10_estimated)});
        hi = std::max({hi, std::ceil(p.log10_measured), std::ceil(p.log10_estimated)});
    }
    constexpr double kSize = 400.0;
    constexpr double kMargin = 40.0;
    const double span = hi - lo;
    auto px = [&](double v) { return kMargin + (v - lo) / span * kSize; };
    auto py = [&](double v) { return kMargin + kSize - (v - lo) / span * kSize; };

    std::string svg = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">\n",
        kSize + 2 * kMargin);
    svg += fmt::format("<title>{}</title>\n", model_reference(model));
    svg += fmt::format("<rect x=\"{0}\" y=\"{0}\" width=\"{1}\" height=\"{1}\" fill=\"none\" stroke=\"black\"/>\n",
                       kMargin, kSize);
    for (double t = lo; t <= hi; t += 1.0) {
        svg += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"middle\">{}</text>\n", px(t),
                           kMargin + kSize + 14, human(t));
        svg += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"end\">{}</text>\n", kMargin - 4,
                           py(t) + 3, human(t));
    }
    svg += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">log10 measured Ksat "
                       "(cm/day)</text>\n",
                       kMargin + kSize / 2, kMargin + kSize + 32);
    svg += fmt::format("<text x=\"12\" y=\"{0}\" font-size=\"12\" text-anchor=\"middle\" "
                       "transform=\"rotate(-90 12 {0})\">log10 estimated Ksat (cm/day)</text>\n",
                       kMargin + kSize / 2);
    for (const auto& p : points) {
        if (p.model != model)
            continue;
        svg += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"1.5\" fill=\"black\" fill-opacity=\"0.4\"/>\n",
                           human(px(p.log10_measured)), human(py(p.log10_estimated)));
    }
    svg += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"red\" stroke-dasharray=\"6,4\"/>\n",
                       px(lo), py(lo), px(hi), py(hi));
    svg += "</svg>\n";
    return svg;
}

int run_scatter(const Common& c, bool svg, std::ostream& out, std::ostream& err)
{
    const auto estimators = make_estimators(c);
    const auto data = load(c, data::IngestMode::Evaluation, err);
    const auto runs = eval::run_models(data.accepted, estimators);
    const auto points = eval::scatter_points(data.accepted, runs);

    std::string csv = "model,class,log10_measured,log10_estimated\n";
    for (const auto& p : points)
        csv += fmt::format("{},{},{},{}\n", model_key(p.model), short_name(p.texture), exact(p.log10_measured),
                           exact(p.log10_estimated));
    emit(c, "scatter.csv", csv, out);

    if (svg) {
        if (c.output.empty())
            throw UsageError("--svg needs --output DIR");
        for (const auto& est : estimators)
            emit(c, fmt::format("scatter_{}.svg", model_key(est.id())), scatter_svg(est.id(), points), out);
    }
    return kSuccess;
}

// ---------------------------------------------------------------- synth

int run_synth(const data::SynthConfig& config, const std::string& output, std::ostream& out)
{
    const auto samples = data::generate_synthetic(config);
    if (output.empty()) {
        data::write_csv(out, samples);
        return kSuccess;
    }
    std::ofstream file(output, std::ios::binary);
    if (!file)
        throw Error(ErrorCode::FileError, fmt::format("cannot write '{}'", output));
    data::write_csv(file, samples);
    return kSuccess;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Saturated hydraulic conductivity pedotransfer functions", "ksat"};
    app.require_subcommand(1);

    Common common;
    InlineSample inline_sample;
    bool svg = false;
    data::SynthConfig synth;
    std::string synth_output;

    auto* estimate = app.add_subcommand("estimate", "Estimate K_sat for one sample or a CSV of samples");
    add_common(estimate, common, false);
    estimate->add_option("--output", common.output, "Directory for estimates.csv (with --input)");
    estimate->add_option("--sand", inline_sample.sand, "Sand, %");
    estimate->add_option("--silt", inline_sample.silt, "Silt, %");
    estimate->add_option("--clay", inline_sample.clay, "Clay, %");
    estimate->add_option("--bd", inline_sample.bulk_density, "Bulk density, g/cm3");
    estimate->add_option("--length", inline_sample.length, "Sample height L, cm");
    estimate->add_option("--diameter", inline_sample.diameter, "Sample internal diameter ID, cm");

    auto* evaluate = app.add_subcommand("evaluate", "Per-class MLE/RMSLE tables against measured K_sat");
    add_common(evaluate, common, true);
    evaluate->add_option("--output", common.output, "Directory for the tables (default: standard output)");

    auto* report = app.add_subcommand("report", "Machine-readable evaluation report and dataset summaries");
    add_common(report, common, true);
    report->add_option("--output", common.output, "Directory for the CSV files");

    auto* scatter = app.add_subcommand("scatter", "Measured vs estimated log10 K_sat, long format");
    add_common(scatter, common, true);
    scatter->add_option("--output", common.output, "Directory for scatter.csv and SVGs");
    scatter->add_flag("--svg", svg, "Also write one SVG scatter per model with a 1:1 line");

    auto* synth_cmd = app.add_subcommand("synth", "Generate a reproducible synthetic sample corpus");
    synth_cmd->add_option("--seed", synth.seed, "64-bit seed");
    synth_cmd->add_option("--count", synth.count, "Number of samples")->check(CLI::PositiveNumber);
    synth_cmd->add_option("--output", synth_output, "CSV file (default: standard output)");

    std::vector<const char*> argv{"ksat"};
    for (const auto& a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        // --help and --version come through here with exit code 0.
        return app.exit(e, out, err) == 0 ? kSuccess : kUsageError;
    }

    try {
        if (*estimate)
            return run_estimate(common, inline_sample, out, err);
        if (*evaluate)
            return run_evaluate(common, out, err);
        if (*report)
            return run_report(common, out, err);
        if (*scatter)
            return run_scatter(common, svg, out, err);
        if (*synth_cmd)
            return run_synth(synth, synth_output, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsageError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    }
    return kUsageError;
}

} // namespace ksat::cli
