// soclin command-line front end: extract constructions from a CoNLL-U corpus,
// fit distribution laws, mine transformation rules, correlate summary tables,
// and drive the criticality simulators. Every command writes a run manifest
// next to its primary output; `soclin replay <manifest>` re-executes it.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "soclin/adoption.hpp"
#include "soclin/avalanche.hpp"
#include "soclin/common.hpp"
#include "soclin/conllu.hpp"
#include "soclin/constructions.hpp"
#include "soclin/fit.hpp"
#include "soclin/manifest.hpp"
#include "soclin/rules.hpp"
#include "soclin/sandpile.hpp"
#include "soclin/stats.hpp"
#include "soclin/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace soclin;

namespace {

constexpr int kOk = 0;
constexpr int kInputErrorCode = 2;
constexpr int kEmptyResultCode = 3;
constexpr int kNumericErrorCode = 4;

std::ifstream open_input(const std::string& path) {
    if (!fs::is_regular_file(path)) throw InputError("not a readable file: " + path);
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file: " + path);
    return in;
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write output file: " + path);
    out << content;
}

json load_json(const std::string& path) {
    std::ifstream in = open_input(path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
    return j;
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Collects what a command touched and writes the manifest once it succeeded.
struct ManifestScope {
    RunManifest m;

    ManifestScope(std::string command, std::vector<std::string> argv) {
        m.command = std::move(command);
        m.argv = std::move(argv);
        m.started = RunManifest::now_utc();
    }
    void param(const std::string& key, const std::string& value) { m.params[key] = value; }
    void param(const std::string& key, double value) { m.params[key] = fmt(value); }
    void param(const std::string& key, std::int64_t value) { m.params[key] = std::to_string(value); }
    void finish(const std::string& explicit_path) {
        if (m.outputs.empty() && explicit_path.empty()) return;
        m.finished = RunManifest::now_utc();
        m.write(explicit_path.empty() ? m.outputs.front() + ".manifest.json" : explicit_path);
    }
};

// --- extract ----------------------------------------------------------------

struct ExtractArgs {
    std::string corpus_path;
    std::string lemma;
    int min_cluster_size = 7;
    double min_coverage = 0.04;
    bool one_pass_coverage = false;
    bool strict = false;
    std::string out_csv;
    std::string out_json;
    std::string dump_instances;
    std::string manifest_path;
};

int run_extract(const ExtractArgs& args, ManifestScope& scope) {
    scope.m.inputs.push_back(args.corpus_path);
    scope.param("lemma", args.lemma);
    scope.param("min_cluster_size", static_cast<std::int64_t>(args.min_cluster_size));
    scope.param("min_coverage", args.min_coverage);
    scope.param("one_pass_coverage", args.one_pass_coverage ? "true" : "false");
    scope.param("strict", args.strict ? "true" : "false");

    std::ifstream in = open_input(args.corpus_path);
    const ParseResult parsed = parse_corpus(in, ParseOptions{args.strict});
    for (const std::string& w : parsed.warnings) std::cerr << "warning: " << w << "\n";

    const std::vector<Instance> instances = extract_instances(parsed.corpus, args.lemma);

    scope.m.outputs.push_back(args.out_csv); // first output anchors the manifest
    scope.m.outputs.push_back(args.out_json);
    if (!args.dump_instances.empty()) {
        std::ostringstream dump;
        dump_instances_jsonl(instances, dump);
        write_text(args.dump_instances, dump.str());
        scope.m.outputs.push_back(args.dump_instances);
    }

    if (instances.empty()) {
        write_text(args.out_csv,
                   "lemma,signature,incoming_label,frequency,constituent_number,"
                   "first_occurrence_year,coverage\n");
        MetaphorProfile empty;
        empty.lemma = args.lemma;
        write_text(args.out_json, profile_to_json(empty).dump(2) + "\n");
        scope.finish(args.manifest_path);
        std::cerr << "no instances of lemma '" << args.lemma << "' in " << args.corpus_path << "\n";
        return kEmptyResultCode;
    }

    ClusterOptions opts;
    opts.min_cluster_size = args.min_cluster_size;
    opts.min_coverage = args.min_coverage;
    opts.one_pass_coverage = args.one_pass_coverage;
    const MetaphorProfile profile = cluster(instances, args.lemma, opts);

    std::ostringstream csv;
    write_constructions_csv(profile, csv);
    write_text(args.out_csv, csv.str());
    write_text(args.out_json, profile_to_json(profile).dump(2) + "\n");
    scope.finish(args.manifest_path);

    const ProfileSummary summary = summarize(profile);
    std::cout << profile.lemma << ": " << summary.construction_count << " constructions, "
              << summary.retained_instances << "/" << summary.total_instances
              << " instances retained\n";
    if (summary.empty_warning)
        std::cerr << "warning: every signature group fell below the filters\n";
    return kOk;
}

// --- fit --------------------------------------------------------------------

struct FitArgs {
    std::string points_path;
    std::string profile_path;
    std::string batch_dir;
    std::string model = "power";
    std::string method = "nls";
    std::vector<std::string> family;
    std::string out_json;
    std::string out_svg;
    std::string manifest_path;
};

std::vector<std::string> profile_paths_in(const std::string& dir) {
    if (!fs::is_directory(dir)) throw InputError("not a directory: " + dir);
    std::vector<std::string> paths;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json" &&
            entry.path().string().find(".manifest.") == std::string::npos)
            paths.push_back(entry.path().string());
    std::sort(paths.begin(), paths.end());
    if (paths.empty()) throw EmptyInput("no profile JSON files in " + dir);
    return paths;
}

// Rank-frequency power-law fit over every profile in a directory, aggregated.
int run_fit_batch(const FitArgs& args, ManifestScope& scope) {
    std::vector<MetaphorProfile> profiles;
    for (const std::string& path : profile_paths_in(args.batch_dir)) {
        profiles.push_back(profile_from_json(load_json(path)));
        scope.m.inputs.push_back(path);
    }
    const BatchFitSummary summary = batch_fit_summary(
        profiles, args.method == "loglog" ? PowerFitMethod::loglog : PowerFitMethod::nls);
    write_text(args.out_json, batch_summary_to_json(summary).dump(2) + "\n");
    scope.m.outputs.push_back(args.out_json);
    scope.finish(args.manifest_path);
    std::cout << summary.fitted << " profiles fitted, " << summary.failed << " failed; R^2 mean "
              << fmt(summary.mean_r_squared) << " min " << fmt(summary.min_r_squared) << " max "
              << fmt(summary.max_r_squared) << "\n";
    return kOk;
}

std::vector<double> parse_sweep(const std::string& expr) {
    // "0.5:2.5:0.5" -> {0.5, 1.0, 1.5, 2.0, 2.5}; a plain number is a 1-sweep.
    std::vector<double> out;
    const std::size_t c1 = expr.find(':');
    if (c1 == std::string::npos) {
        out.push_back(std::stod(expr));
        return out;
    }
    const std::size_t c2 = expr.find(':', c1 + 1);
    if (c2 == std::string::npos) throw InputError("sweep needs lo:hi:step, got " + expr);
    const double lo = std::stod(expr.substr(0, c1));
    const double hi = std::stod(expr.substr(c1 + 1, c2 - c1 - 1));
    const double step = std::stod(expr.substr(c2 + 1));
    if (step <= 0) throw InputError("sweep step must be positive: " + expr);
    for (double v = lo; v <= hi + 1e-12; v += step) out.push_back(v);
    return out;
}

int run_fit_family(const FitArgs& args, ManifestScope& scope) {
    double a = 2.0;
    std::vector<double> bs;
    for (const std::string& term : args.family) {
        const std::size_t eq = term.find('=');
        if (eq == std::string::npos) throw InputError("family term needs name=value: " + term);
        const std::string name = term.substr(0, eq);
        const std::string value = term.substr(eq + 1);
        if (name == "a")
            a = std::stod(value);
        else if (name == "b")
            bs = parse_sweep(value);
        else
            throw InputError("unknown family parameter: " + name);
    }
    if (bs.empty()) throw InputError("--family needs b=lo:hi:step");
    scope.param("a", a);
    scope.param("family_curves", static_cast<std::int64_t>(bs.size()));

    std::vector<double> xs;
    for (double x = 0.25; x <= 4.0 + 1e-12; x += 0.25) xs.push_back(x);

    SvgPlot plot("Power-law family a = " + fmt(a), "x", "y");
    json curves = json::array();
    const std::vector<std::string> palette = {"#c23b22", "#1f6fb2", "#3a923a", "#8c564b", "#9467bd",
                                              "#e377c2", "#7f7f7f"};
    for (std::size_t i = 0; i < bs.size(); ++i) {
        PowerLawFit f;
        f.a = a;
        f.b = bs[i];
        const auto curve = sample_curve(f, xs);
        plot.add_curve(curve, palette[i % palette.size()], "b=" + fmt(bs[i]));
        json samples = json::array();
        for (const Point& p : curve) samples.push_back({{"x", p.x}, {"y", p.y}});
        curves.push_back({{"a", a}, {"b", bs[i]}, {"samples", samples}});
    }
    write_text(args.out_json, json{{"model", "power_family"}, {"curves", curves}}.dump(2) + "\n");
    scope.m.outputs.push_back(args.out_json);
    if (!args.out_svg.empty()) {
        write_text(args.out_svg, plot.render());
        scope.m.outputs.push_back(args.out_svg);
    }
    scope.finish(args.manifest_path);
    return kOk;
}

int run_fit(const FitArgs& args, ManifestScope& scope) {
    scope.param("model", args.model);
    scope.param("method", args.method);
    if (!args.family.empty()) return run_fit_family(args, scope);
    if (!args.batch_dir.empty()) return run_fit_batch(args, scope);

    PointSet data;
    std::string source;
    if (!args.points_path.empty()) {
        std::ifstream in = open_input(args.points_path);
        data = read_points_csv(in);
        source = args.points_path;
    } else if (!args.profile_path.empty()) {
        data = rank_frequency(profile_from_json(load_json(args.profile_path)));
        source = args.profile_path;
    } else {
        throw InputError("fit needs --points, --profile, --batch or --family");
    }
    scope.m.inputs.push_back(source);

    json fit_json;
    std::vector<Point> curve;
    std::string annotation;
    const auto curve_xs = [&] {
        double lo = data.points.front().x, hi = lo;
        for (const Point& p : data.points) {
            lo = std::min(lo, p.x);
            hi = std::max(hi, p.x);
        }
        std::vector<double> xs;
        for (int i = 0; i <= 100; ++i) xs.push_back(lo + (hi - lo) * i / 100.0);
        return xs;
    };

    if (args.model == "power") {
        const PowerLawFit fit = fit_power_law(
            data, args.method == "loglog" ? PowerFitMethod::loglog : PowerFitMethod::nls);
        fit_json = fit_to_json(fit);
        curve = sample_curve(fit, curve_xs());
        annotation = "y = " + fmt(fit.a) + " x^-" + fmt(fit.b);
    } else if (args.model == "ma" || args.model == "ma_full") {
        const MALawFit fit = fit_ma_law(data, args.model == "ma");
        fit_json = fit_to_json(fit);
        curve = sample_curve(fit, curve_xs());
        annotation = "y = " + fmt(fit.A) + " x^" + fmt(fit.b) +
                     (fit.truncated ? "" : " exp(-" + fmt(fit.c) + " x)");
    } else if (args.model == "logistic") {
        const LogisticFit fit = fit_logistic(data);
        fit_json = fit_to_json(fit);
        curve = sample_curve(fit, curve_xs());
        annotation = "L = " + fmt(fit.L) + ", k = " + fmt(fit.k) + ", x0 = " + fmt(fit.x0);
    } else {
        throw InputError("unknown model: " + args.model);
    }

    write_text(args.out_json, fit_json.dump(2) + "\n");
    scope.m.outputs.push_back(args.out_json);
    if (!args.out_svg.empty()) {
        SvgPlot plot(args.model + " fit", "x", "y");
        plot.add_points(data.points);
        plot.add_curve(curve);
        plot.add_annotation("R^2 = " + fmt(fit_json.at("r_squared").get<double>()));
        plot.add_annotation(annotation);
        write_text(args.out_svg, plot.render());
        scope.m.outputs.push_back(args.out_svg);
    }
    scope.finish(args.manifest_path);
    std::cout << fit_json.at("model").get<std::string>() << " fit of " << source
              << ": R^2 = " << fit_json.at("r_squared").get<double>() << "\n";
    return kOk;
}

// --- rules ------------------------------------------------------------------

struct RulesArgs {
    std::string profiles_dir;
    int min_frequency = 6;
    double min_probability = 0.8;
    std::string denominator = "antecedent";
    std::string out_json;
    std::string out_report;
    std::string manifest_path;
};

int run_rules(const RulesArgs& args, ManifestScope& scope) {
    scope.param("min_frequency", static_cast<std::int64_t>(args.min_frequency));
    scope.param("min_probability", args.min_probability);
    scope.param("denominator", args.denominator);

    const std::vector<std::string> paths = profile_paths_in(args.profiles_dir);
    std::vector<ClassTimeline> timelines;
    for (const std::string& path : paths) {
        const MetaphorProfile profile = profile_from_json(load_json(path));
        scope.m.inputs.push_back(path);
        if (profile.constructions.empty()) {
            std::cerr << "note: profile " << path << " has no constructions, skipped\n";
            continue;
        }
        timelines.push_back(class_timeline(profile));
    }
    if (timelines.empty()) throw EmptyInput("no usable profiles in " + args.profiles_dir);

    MineOptions opts;
    opts.min_frequency = args.min_frequency;
    opts.min_probability = args.min_probability;
    opts.denominator_both_present = args.denominator == "both";
    const std::vector<TransformationRule> rules = mine_rules(timelines, opts);

    json out{{"rules", rules_to_json(rules)}, {"timelines", json::array()}};
    for (const ClassTimeline& t : timelines) out["timelines"].push_back(timeline_to_json(t));
    write_text(args.out_json, out.dump(2) + "\n");
    scope.m.outputs.push_back(args.out_json);

    std::ostringstream report;
    write_rules_report(rules, report);
    write_text(args.out_report, report.str());
    scope.m.outputs.push_back(args.out_report);
    scope.finish(args.manifest_path);

    std::cout << rules.size() << " rules from " << timelines.size() << " profiles\n";
    if (rules.empty())
        std::cerr << "note: no rule passed the filters (frequency >= " << args.min_frequency
                  << ", p >= " << args.min_probability << ")\n";
    return kOk;
}

// --- correlate ----------------------------------------------------------------

struct CorrelateArgs {
    std::string table_path;
    std::string out_csv;
    std::string manifest_path;
};

int run_correlate(const CorrelateArgs& args, ManifestScope& scope) {
    scope.m.inputs.push_back(args.table_path);
    std::ifstream in = open_input(args.table_path);
    const std::vector<MetaphorRow> rows = read_metaphor_rows_csv(in);
    if (rows.size() < 2)
        throw InputError("correlation needs at least 2 rows, got " + std::to_string(rows.size()));
    const CorrelationMatrix m = correlation_matrix(rows);

    std::ostringstream csv;
    write_correlation_csv(m, csv);
    write_text(args.out_csv, csv.str());
    scope.m.outputs.push_back(args.out_csv);
    scope.finish(args.manifest_path);
    std::cout << csv.str();
    return kOk;
}

// --- simulate -----------------------------------------------------------------

struct SimulateOutputs {
    std::string out_records;
    std::string out_avalanches;
    std::string out_hist;
    std::string hist_binning = "log2";
    std::string out_svg;
    std::string manifest_path;
};

void emit_histogram(const std::vector<AvalancheRecord>& records, const SimulateOutputs& io,
                    ManifestScope& scope, const std::string& title) {
    if (io.out_hist.empty() && io.out_svg.empty()) return;
    const PointSet hist = avalanche_distribution(
        records, io.hist_binning == "linear" ? Binning::linear : Binning::log2);
    if (!io.out_hist.empty()) {
        std::ostringstream csv;
        write_points_csv(hist.points, csv);
        write_text(io.out_hist, csv.str());
        scope.m.outputs.push_back(io.out_hist);
    }
    if (!io.out_svg.empty()) {
        SvgPlot plot(title, "avalanche size", "density", true, true);
        plot.add_points(hist.points);
        try {
            const PowerLawFit fit = fit_power_law(hist, PowerFitMethod::nls);
            std::vector<double> xs;
            for (const Point& p : hist.points) xs.push_back(p.x);
            plot.add_curve(sample_curve(fit, xs));
            plot.add_annotation("slope = -" + fmt(fit.b));
            plot.add_annotation("R^2 = " + fmt(fit.quality.r_squared));
        } catch (const NumericError&) {
            plot.add_annotation("fit unavailable");
        }
        write_text(io.out_svg, plot.render());
        scope.m.outputs.push_back(io.out_svg);
    }
}

int run_simulate_sandpile(const SandpileConfig& config, const SimulateOutputs& io,
                          ManifestScope& scope) {
    scope.param("width", static_cast<std::int64_t>(config.width));
    scope.param("height", static_cast<std::int64_t>(config.height));
    scope.param("threshold", static_cast<std::int64_t>(config.threshold));
    scope.param("drops", config.drops);
    scope.param("seed", static_cast<std::int64_t>(config.seed));

    const SandpileResult result = run_sandpile(config);

    std::ostringstream csv;
    csv << "step,size,duration\n";
    for (const AvalancheRecord& r : result.records)
        csv << r.start_step << ',' << r.size << ',' << r.duration << "\n";
    write_text(io.out_records, csv.str());
    scope.m.outputs.push_back(io.out_records);

    if (!io.out_avalanches.empty()) {
        json arr = json::array();
        for (const AvalancheRecord& r : result.records)
            if (r.size > 0)
                arr.push_back({{"start_step", r.start_step}, {"size", r.size},
                               {"duration", r.duration}});
        write_text(io.out_avalanches, arr.dump(2) + "\n");
        scope.m.outputs.push_back(io.out_avalanches);
    }
    emit_histogram(result.records, io, scope, "Sandpile avalanche sizes");
    scope.finish(io.manifest_path);
    std::cout << "sandpile: " << config.drops << " drops, " << result.grains_on_grid
              << " grains on grid, " << result.grains_lost << " lost\n";
    return kOk;
}

int run_simulate_adoption(const AdoptionConfig& config, const SimulateOutputs& io,
                          ManifestScope& scope) {
    scope.param("topology", to_string(config.topology));
    scope.param("n_nodes", static_cast<std::int64_t>(config.n_nodes));
    scope.param("threshold_fraction", config.threshold_fraction);
    scope.param("innovation_rate", config.innovation_rate);
    scope.param("steps", static_cast<std::int64_t>(config.steps));
    scope.param("seed", static_cast<std::int64_t>(config.seed));
    scope.param("rewire_p", config.rewire_p);
    scope.param("ws_neighbors", static_cast<std::int64_t>(config.ws_neighbors));
    scope.param("attach_count", static_cast<std::int64_t>(config.attach_count));

    const AdoptionTrace trace = run_adoption(config);

    std::ostringstream csv;
    csv << "step,cumulative_adopters\n";
    for (std::size_t t = 0; t < trace.cumulative.size(); ++t)
        csv << t << ',' << trace.cumulative[t] << "\n";
    write_text(io.out_records, csv.str());
    scope.m.outputs.push_back(io.out_records);

    if (!io.out_avalanches.empty()) {
        json arr = json::array();
        for (const AvalancheRecord& r : trace.avalanches)
            arr.push_back(
                {{"start_step", r.start_step}, {"size", r.size}, {"duration", r.duration}});
        write_text(io.out_avalanches, arr.dump(2) + "\n");
        scope.m.outputs.push_back(io.out_avalanches);
    }
    if (!trace.avalanches.empty())
        emit_histogram(trace.avalanches, io, scope, "Adoption avalanche sizes");
    scope.finish(io.manifest_path);
    std::cout << "adoption: " << trace.cumulative.back() << "/" << config.n_nodes
              << " adopters after " << config.steps << " steps, " << trace.avalanches.size()
              << " avalanches\n";
    return kOk;
}

// --- report -------------------------------------------------------------------

struct ReportArgs {
    std::string profile_path;
    std::string rules_path;
    std::string out_json;
    std::string out_svg;
    std::string manifest_path;
};

int run_report(const ReportArgs& args, ManifestScope& scope) {
    scope.m.inputs.push_back(args.profile_path);
    const MetaphorProfile profile = profile_from_json(load_json(args.profile_path));
    const ProfileSummary summary = summarize(profile);

    json out{{"lemma", summary.lemma},
             {"construction_count", summary.construction_count},
             {"retained_instances", summary.retained_instances},
             {"total_instances", summary.total_instances}};

    SvgPlot plot("Rank-frequency: " + profile.lemma, "rank", "frequency");
    PointSet data;
    if (!profile.constructions.empty()) {
        data = rank_frequency(profile);
        plot.add_points(data.points);
    }
    try {
        const PowerLawFit fit = fit_power_law(data);
        out["fit"] = fit_to_json(fit);
        std::vector<double> xs;
        for (const Point& p : data.points) xs.push_back(p.x);
        plot.add_curve(sample_curve(fit, xs));
        plot.add_annotation("R^2 = " + fmt(fit.quality.r_squared));
        plot.add_annotation("y = " + fmt(fit.a) + " x^-" + fmt(fit.b));
    } catch (const Error& e) {
        out["fit"] = {{"error", e.what()}};
        plot.add_annotation("fit unavailable");
    }

    if (!args.rules_path.empty()) {
        scope.m.inputs.push_back(args.rules_path);
        const json rules_json = load_json(args.rules_path);
        std::vector<TransformationRule> rules;
        for (const json& rj : rules_json.contains("rules") ? rules_json.at("rules") : rules_json) {
            TransformationRule r;
            r.antecedent = rj.at("antecedent").get<std::string>();
            r.consequent = rj.at("consequent").get<std::string>();
            r.frequency = rj.at("frequency").get<int>();
            r.conditional_probability = rj.at("conditional_probability").get<double>();
            rules.push_back(std::move(r));
        }
        json participation = json::array();
        for (const RulePrediction& p : apply_rules_report(rules, class_timeline(profile)))
            participation.push_back({{"antecedent", p.rule.antecedent},
                                     {"consequent", p.rule.consequent},
                                     {"antecedent_foy", p.antecedent_foy},
                                     {"consequent_foy", p.consequent_foy},
                                     {"satisfied", p.satisfied}});
        out["rule_participation"] = participation;
    }

    write_text(args.out_json, out.dump(2) + "\n");
    scope.m.outputs.push_back(args.out_json);
    if (!args.out_svg.empty() && !profile.constructions.empty()) {
        write_text(args.out_svg, plot.render());
        scope.m.outputs.push_back(args.out_svg);
    } else if (!args.out_svg.empty()) {
        std::cerr << "note: profile has no constructions, skipping SVG\n";
    }
    scope.finish(args.manifest_path);
    return kOk;
}

// --- dispatch -----------------------------------------------------------------

int dispatch(const std::vector<std::string>& argv);

int run_replay(const std::string& manifest_path) {
    const RunManifest m = RunManifest::load(manifest_path);
    if (m.argv.empty()) throw InputError("manifest has no argv to replay: " + manifest_path);
    std::cerr << "replaying " << m.command << " from " << manifest_path << "\n";
    return dispatch(m.argv);
}

int dispatch(const std::vector<std::string>& argv) {
    CLI::App app{"self-organized-criticality toolkit for diachronic construction data", "soclin"};
    app.set_version_flag("--version", std::string("soclin ") + kVersion);
    app.require_subcommand(1);

    ExtractArgs ex;
    CLI::App* extract = app.add_subcommand("extract", "corpus -> constructions CSV + profile JSON");
    extract->add_option("--corpus", ex.corpus_path, "CoNLL-U corpus with # year comments")
        ->required();
    extract->add_option("--lemma", ex.lemma, "vehicle lemma")->required();
    extract->add_option("--min-cluster-size", ex.min_cluster_size,
                        "outlier floor on group size (default 7)");
    extract->add_option("--min-coverage", ex.min_coverage, "coverage floor (default 0.04)");
    extract->add_flag("--one-pass-coverage", ex.one_pass_coverage,
                      "apply the coverage filter once instead of to a fixed point");
    extract->add_flag("--strict", ex.strict, "fail on malformed sentences instead of skipping");
    extract->add_option("--out-csv", ex.out_csv, "constructions CSV")->required();
    extract->add_option("--out-json", ex.out_json, "profile JSON")->required();
    extract->add_option("--dump-instances", ex.dump_instances, "instance JSONL debug dump");
    extract->add_option("--manifest", ex.manifest_path, "manifest path override");

    FitArgs fit;
    CLI::App* fit_cmd = app.add_subcommand("fit", "fit power / MA / logistic models");
    fit_cmd->add_option("--points", fit.points_path, "x,y CSV");
    fit_cmd->add_option("--profile", fit.profile_path, "profile JSON (rank-frequency is fitted)");
    fit_cmd->add_option("--batch", fit.batch_dir,
                        "directory of profile JSONs: per-lemma fits plus R^2 aggregates");
    fit_cmd->add_option("--model", fit.model, "power|ma|ma_full|logistic (default power)");
    fit_cmd->add_option("--method", fit.method, "nls|loglog (power law only, default nls)");
    fit_cmd->add_option("--family", fit.family,
                        "curve family instead of a fit, e.g. --family a=2 b=0.5:2.5:0.5")
        ->expected(-1);
    fit_cmd->add_option("--out-json", fit.out_json, "fit JSON")->required();
    fit_cmd->add_option("--out-svg", fit.out_svg, "plot SVG");
    fit_cmd->add_option("--manifest", fit.manifest_path, "manifest path override");

    RulesArgs rules;
    CLI::App* rules_cmd = app.add_subcommand("rules", "mine transformation rules from profiles");
    rules_cmd->add_option("--profiles", rules.profiles_dir, "directory of profile JSON files")
        ->required();
    rules_cmd->add_option("--min-frequency", rules.min_frequency, "support floor (default 6)");
    rules_cmd->add_option("--min-probability", rules.min_probability,
                          "conditional probability floor (default 0.8)");
    rules_cmd->add_option("--denominator", rules.denominator,
                          "antecedent|both: event space of P(Cj|Ci)");
    rules_cmd->add_option("--out-json", rules.out_json, "rules JSON")->required();
    rules_cmd->add_option("--out-report", rules.out_report, "plain-text rule report")->required();
    rules_cmd->add_option("--manifest", rules.manifest_path, "manifest path override");

    CorrelateArgs corr;
    CLI::App* corr_cmd = app.add_subcommand("correlate", "Pearson matrix of b / FOY / frequency");
    corr_cmd->add_option("--table", corr.table_path, "CSV: lemma,b,foy,frequency")->required();
    corr_cmd->add_option("--out-csv", corr.out_csv, "correlation matrix CSV")->required();
    corr_cmd->add_option("--manifest", corr.manifest_path, "manifest path override");

    CLI::App* sim = app.add_subcommand("simulate", "criticality simulators");
    sim->require_subcommand(1);

    SandpileConfig sand;
    SimulateOutputs sand_io;
    std::string sand_config_path;
    CLI::App* sand_cmd = sim->add_subcommand("sandpile", "abelian sandpile driver");
    sand_cmd->add_option("--config", sand_config_path, "JSON config (flags override)");
    CLI::Option* sw = sand_cmd->add_option("--width", sand.width);
    CLI::Option* sh = sand_cmd->add_option("--height", sand.height);
    CLI::Option* st = sand_cmd->add_option("--threshold", sand.threshold);
    CLI::Option* sd = sand_cmd->add_option("--drops", sand.drops);
    CLI::Option* ss = sand_cmd->add_option("--seed", sand.seed);
    sand_cmd->add_option("--out-records", sand_io.out_records, "per-drop CSV")->required();
    sand_cmd->add_option("--out-avalanches", sand_io.out_avalanches, "avalanche JSON");
    sand_cmd->add_option("--out-hist", sand_io.out_hist, "size histogram CSV");
    sand_cmd->add_option("--hist-binning", sand_io.hist_binning, "log2|linear (default log2)");
    sand_cmd->add_option("--out-svg", sand_io.out_svg, "log-log histogram SVG");
    sand_cmd->add_option("--manifest", sand_io.manifest_path, "manifest path override");

    AdoptionConfig adopt;
    SimulateOutputs adopt_io;
    std::string adopt_config_path;
    std::string adopt_topology = "small_world";
    CLI::App* adopt_cmd = sim->add_subcommand("adoption", "threshold-diffusion cascade");
    adopt_cmd->add_option("--config", adopt_config_path, "JSON config (flags override)");
    CLI::Option* at = adopt_cmd->add_option("--topology", adopt_topology, "grid|small_world|scale_free");
    CLI::Option* an = adopt_cmd->add_option("--nodes", adopt.n_nodes);
    CLI::Option* af = adopt_cmd->add_option("--threshold-fraction", adopt.threshold_fraction);
    CLI::Option* ai = adopt_cmd->add_option("--innovation-rate", adopt.innovation_rate);
    CLI::Option* as = adopt_cmd->add_option("--steps", adopt.steps);
    CLI::Option* ae = adopt_cmd->add_option("--seed", adopt.seed);
    CLI::Option* ar = adopt_cmd->add_option("--rewire-p", adopt.rewire_p);
    CLI::Option* aw = adopt_cmd->add_option("--ws-neighbors", adopt.ws_neighbors);
    CLI::Option* aa = adopt_cmd->add_option("--attach-count", adopt.attach_count);
    adopt_cmd->add_option("--out-records", adopt_io.out_records, "step,cumulative_adopters CSV")
        ->required();
    adopt_cmd->add_option("--out-avalanches", adopt_io.out_avalanches, "avalanche JSON");
    adopt_cmd->add_option("--out-hist", adopt_io.out_hist, "size histogram CSV");
    adopt_cmd->add_option("--hist-binning", adopt_io.hist_binning, "log2|linear (default log2)");
    adopt_cmd->add_option("--out-svg", adopt_io.out_svg, "histogram SVG");
    adopt_cmd->add_option("--manifest", adopt_io.manifest_path, "manifest path override");

    ReportArgs report;
    CLI::App* report_cmd = app.add_subcommand("report", "bundle profile + fit + rules");
    report_cmd->add_option("--profile", report.profile_path, "profile JSON")->required();
    report_cmd->add_option("--rules", report.rules_path, "rules JSON for participation checks");
    report_cmd->add_option("--out-json", report.out_json, "report JSON")->required();
    report_cmd->add_option("--out-svg", report.out_svg, "report SVG");
    report_cmd->add_option("--manifest", report.manifest_path, "manifest path override");

    std::string replay_path;
    CLI::App* replay_cmd = app.add_subcommand("replay", "re-run a command from its manifest");
    replay_cmd->add_option("manifest", replay_path, "manifest JSON")->required();

    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (*extract) {
        ManifestScope scope("extract", argv);
        return run_extract(ex, scope);
    }
    if (*fit_cmd) {
        ManifestScope scope("fit", argv);
        return run_fit(fit, scope);
    }
    if (*rules_cmd) {
        ManifestScope scope("rules", argv);
        return run_rules(rules, scope);
    }
    if (*corr_cmd) {
        ManifestScope scope("correlate", argv);
        return run_correlate(corr, scope);
    }
    if (*sand_cmd) {
        if (!sand_config_path.empty()) {
            const json j = load_json(sand_config_path);
            if (!*sw) sand.width = j.value("width", sand.width);
            if (!*sh) sand.height = j.value("height", sand.height);
            if (!*st) sand.threshold = j.value("threshold", sand.threshold);
            if (!*sd) sand.drops = j.value("drops", sand.drops);
            if (!*ss) sand.seed = j.value("seed", sand.seed);
        }
        ManifestScope scope("simulate sandpile", argv);
        if (!sand_config_path.empty()) scope.m.inputs.push_back(sand_config_path);
        return run_simulate_sandpile(sand, sand_io, scope);
    }
    if (*adopt_cmd) {
        if (!adopt_config_path.empty()) {
            const json j = load_json(adopt_config_path);
            if (!*at) adopt_topology = j.value("topology", adopt_topology);
            if (!*an) adopt.n_nodes = j.value("n_nodes", adopt.n_nodes);
            if (!*af) adopt.threshold_fraction = j.value("threshold_fraction", adopt.threshold_fraction);
            if (!*ai) adopt.innovation_rate = j.value("innovation_rate", adopt.innovation_rate);
            if (!*as) adopt.steps = j.value("steps", adopt.steps);
            if (!*ae) adopt.seed = j.value("seed", adopt.seed);
            if (!*ar) adopt.rewire_p = j.value("rewire_p", adopt.rewire_p);
            if (!*aw) adopt.ws_neighbors = j.value("ws_neighbors", adopt.ws_neighbors);
            if (!*aa) adopt.attach_count = j.value("attach_count", adopt.attach_count);
        }
        adopt.topology = topology_from_string(adopt_topology);
        ManifestScope scope("simulate adoption", argv);
        if (!adopt_config_path.empty()) scope.m.inputs.push_back(adopt_config_path);
        return run_simulate_adoption(adopt, adopt_io, scope);
    }
    if (*report_cmd) {
        ManifestScope scope("report", argv);
        return run_report(report, scope);
    }
    if (*replay_cmd) return run_replay(replay_path);
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return dispatch(args);
    } catch (const EmptyInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kEmptyResultCode;
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumericErrorCode;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputErrorCode;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputErrorCode;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputErrorCode;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
