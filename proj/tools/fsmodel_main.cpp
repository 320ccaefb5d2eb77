// fsmodel: synthesize parallel-filesystem benchmark data, fit per-metric
// linear models, evaluate and cross-validate them, rank feature importance,
// predict throughput and compare cluster designs.

#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fsmodel/advisor.hpp"
#include "fsmodel/core_model.hpp"
#include "fsmodel/error.hpp"
#include "fsmodel/evaluation.hpp"
#include "fsmodel/importance.hpp"
#include "fsmodel/ingest_store.hpp"
#include "fsmodel/regression.hpp"
#include "fsmodel/synthbench.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace fsmodel;

std::string fixed(double value, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, value);
    return buf;
}

void print_row(const std::vector<std::string>& cells, const std::vector<int>& widths) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) line += "  ";
        std::string cell = cells[i];
        const int width = widths[i];
        if (static_cast<int>(cell.size()) < width)
            cell.insert(i == 0 ? cell.end() : cell.begin(),
                        width - cell.size(), ' ');
        line += cell;
    }
    std::cout << line << '\n';
}

void print_table(const std::vector<std::vector<std::string>>& rows) {
    if (rows.empty()) return;
    std::vector<int> widths(rows[0].size(), 0);
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            widths[i] = std::max(widths[i], static_cast<int>(row[i].size()));
    print_row(rows[0], widths);
    std::string rule;
    for (std::size_t i = 0; i < widths.size(); ++i) {
        if (i > 0) rule += "  ";
        rule.append(widths[i], '-');
    }
    std::cout << rule << '\n';
    for (std::size_t r = 1; r < rows.size(); ++r) print_row(rows[r], widths);
}

FeatureSchema resolve_schema(const std::string& name, const std::string& file) {
    if (!file.empty()) return load_schema(file);
    auto schema = FeatureSchema::builtin(name);
    if (!schema)
        raise(ErrorKind::UsageError,
              "unknown schema '" + name + "'; use 'hardware', 'gluster' or --schema-file");
    return *schema;
}

struct CommonFlags {
    std::string format = "table";
};

void add_format_flag(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--format", flags.format, "Output format")
        ->check(CLI::IsMember({"table", "json"}))
        ->capture_default_str();
}

// ---- generate ----------------------------------------------------------

struct GenerateArgs {
    std::string regime = "hardware";
    std::size_t n = 0;
    std::uint64_t seed = 42;
    double noise_sigma = -1.0; // regime default when negative
    std::string o_sync = "on";
    std::string out;
    std::string truth_out;
    CommonFlags common;
};

int run_generate(const GenerateArgs& args) {
    const auto regime = regime_from_name(args.regime);
    if (!regime) raise(ErrorKind::UsageError, "unknown regime '" + args.regime + "'");
    GeneratorConfig config = *regime == Regime::Hardware
                                 ? GeneratorConfig::hardware(args.n, args.seed)
                                 : GeneratorConfig::gluster(args.n, args.seed,
                                                            args.o_sync == "on");
    if (args.noise_sigma >= 0.0) config.noise_sigma = args.noise_sigma;

    const auto [dataset, truth] = generate(config);
    write_csv(dataset, args.out);
    if (!args.truth_out.empty()) save_truth(truth, dataset.schema(), args.truth_out);

    if (args.common.format == "json") {
        json out;
        out["regime"] = regime_name(config.regime);
        out["records"] = dataset.size();
        out["seed"] = config.seed;
        out["noise_sigma"] = config.noise_sigma;
        out["out"] = args.out;
        if (!args.truth_out.empty()) out["truth_out"] = args.truth_out;
        if (config.regime == Regime::Hardware)
            out["population_r2_write"] = hardware_population_r2(0, config.noise_sigma);
        std::cout << out.dump(2) << '\n';
    } else {
        std::cout << "wrote " << dataset.size() << " " << regime_name(config.regime)
                  << " records (seed " << config.seed << ", sigma "
                  << fixed(config.noise_sigma, 3) << ") to " << args.out << '\n';
        if (!args.truth_out.empty())
            std::cout << "wrote planted truth to " << args.truth_out << '\n';
        if (config.regime == Regime::Hardware)
            std::cout << "population R^2 (write): "
                      << fixed(hardware_population_r2(0, config.noise_sigma), 4) << '\n';
    }
    return 0;
}

// ---- fit ---------------------------------------------------------------

struct FitArgs {
    std::string data;
    std::string schema = "hardware";
    std::string schema_file;
    std::string out;
    CommonFlags common;
};

int run_fit(const FitArgs& args) {
    const FeatureSchema schema = resolve_schema(args.schema, args.schema_file);
    const Dataset dataset = load_csv(args.data, schema);
    const FittedModel model = fit(dataset);
    const std::vector<FitStats> stats = evaluate_model(model, dataset);
    const ModelDocument doc = ModelDocument::from_fit(model, stats);
    if (!args.out.empty()) save_model(doc, args.out);

    if (args.common.format == "json") {
        json coeffs;
        for (const auto& [name, beta] : doc.coefficients) coeffs[name] = beta;
        json jstats;
        for (const auto& [name, s] : doc.fit_stats)
            jstats[name] = {{"r2", s.r2}, {"adj_r2", s.adj_r2}, {"n", s.n}, {"k", s.k}};
        json out;
        out["coefficients"] = std::move(coeffs);
        out["fit_stats"] = std::move(jstats);
        if (!args.out.empty()) out["model_out"] = args.out;
        std::cout << out.dump(2) << '\n';
        return 0;
    }

    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{"feature"};
    for (const std::string& m : schema.metrics()) header.push_back(m);
    rows.push_back(header);
    for (std::size_t j = 0; j <= schema.feature_count(); ++j) {
        std::vector<std::string> row;
        row.push_back(j == 0 ? "constant" : schema.features()[j - 1].name);
        for (std::size_t m = 0; m < schema.metric_count(); ++m)
            row.push_back(fixed(model.beta(m)[j], 3));
        rows.push_back(std::move(row));
    }
    std::vector<std::string> r2_row{"adj_r2"};
    for (const auto& s : stats) r2_row.push_back(fixed(s.adj_r2, 4));
    rows.push_back(std::move(r2_row));
    print_table(rows);
    std::cout << "n = " << dataset.size() << ", k = " << schema.feature_count() << '\n';
    if (!args.out.empty()) std::cout << "wrote model to " << args.out << '\n';
    return 0;
}

// ---- eval --------------------------------------------------------------

struct EvalArgs {
    std::string data;
    std::string model;
    CommonFlags common;
};

int run_eval(const EvalArgs& args) {
    const ModelDocument doc = load_model(args.model);
    const FittedModel model = doc.to_model();
    const Dataset dataset = load_csv(args.data, model.schema());
    const std::vector<FitStats> stats = evaluate_model(model, dataset);

    if (args.common.format == "json") {
        json out;
        for (std::size_t m = 0; m < stats.size(); ++m) {
            const FitStats& s = stats[m];
            out[model.schema().metrics()[m]] = {{"tss", s.tss},       {"sse", s.sse},
                                                {"ssr", s.ssr},       {"r2", s.r2},
                                                {"adj_r2", s.adj_r2}, {"n", s.n},
                                                {"k", s.k}};
        }
        std::cout << out.dump(2) << '\n';
        return 0;
    }
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"metric", "r2", "adj_r2", "tss", "sse", "n", "k"});
    for (std::size_t m = 0; m < stats.size(); ++m) {
        const FitStats& s = stats[m];
        rows.push_back({model.schema().metrics()[m], fixed(s.r2, 4), fixed(s.adj_r2, 4),
                        fixed(s.tss, 2), fixed(s.sse, 2), std::to_string(s.n),
                        std::to_string(s.k)});
    }
    print_table(rows);
    return 0;
}

// ---- xval --------------------------------------------------------------

struct XvalArgs {
    std::string data;
    std::string schema = "hardware";
    std::string schema_file;
    double train_frac = 0.75;
    std::uint64_t seed = 42;
    CommonFlags common;
};

int run_xval(const XvalArgs& args) {
    const FeatureSchema schema = resolve_schema(args.schema, args.schema_file);
    const Dataset dataset = load_csv(args.data, schema);
    const CrossValReport report = cross_validate(dataset, args.train_frac, args.seed);

    if (args.common.format == "json") {
        json out;
        out["train_size"] = report.train_size;
        out["validation_size"] = report.validation_size;
        out["train_fraction"] = report.train_fraction;
        out["seed"] = report.seed;
        json metrics;
        for (const MetricCrossVal& m : report.per_metric)
            metrics[m.metric] = {{"train_r2", m.train_r2},
                                 {"train_adj_r2", m.train_adj_r2},
                                 {"validation_r2", m.validation_r2}};
        out["metrics"] = std::move(metrics);
        std::cout << out.dump(2) << '\n';
        return 0;
    }
    std::cout << "split: " << report.train_size << " train / " << report.validation_size
              << " validation (fraction " << fixed(report.train_fraction, 2) << ", seed "
              << report.seed << ")\n";
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"metric", "train_adj_r2", "validation_r2"});
    for (const MetricCrossVal& m : report.per_metric)
        rows.push_back({m.metric, fixed(m.train_adj_r2, 4), fixed(m.validation_r2, 4)});
    print_table(rows);
    return 0;
}

// ---- importance --------------------------------------------------------

struct ImportanceArgs {
    std::string data;
    std::string schema = "gluster";
    std::string schema_file;
    CommonFlags common;
};

int run_importance(const ImportanceArgs& args) {
    const FeatureSchema schema = resolve_schema(args.schema, args.schema_file);
    const Dataset dataset = load_csv(args.data, schema);
    const ImportanceReport report = importance_report(dataset);

    if (args.common.format == "json") {
        json metrics;
        for (const MetricImportance& mi : report.per_metric) {
            if (!mi.ranked) {
                metrics[mi.metric] = nullptr;
                continue;
            }
            json entries = json::array();
            for (const FeatureImportance& e : *mi.ranked)
                entries.push_back({{"feature", e.feature},
                                   {"sensitivity", e.sensitivity},
                                   {"importance", e.importance}});
            metrics[mi.metric] = std::move(entries);
        }
        json binning = json::array();
        for (const FeatureBinning& b : report.binning)
            binning.push_back({{"feature", b.feature},
                               {"group_count", b.group_count},
                               {"group_sizes", b.group_sizes}});
        json out;
        out["metrics"] = std::move(metrics);
        out["binning"] = std::move(binning);
        std::cout << out.dump(2) << '\n';
        return 0;
    }

    // Matrix layout: one row per feature, one VI column per metric. Features
    // that stay below 0.01 everywhere collapse into a single "rest" row when
    // there are more than six of them.
    const std::size_t p = schema.feature_count();
    std::vector<std::vector<double>> vi(p, std::vector<double>(schema.metric_count(), 0.0));
    for (std::size_t m = 0; m < report.per_metric.size(); ++m) {
        if (!report.per_metric[m].ranked) continue;
        for (const FeatureImportance& e : *report.per_metric[m].ranked)
            vi[*schema.feature_index(e.feature)][m] = e.importance;
    }
    std::vector<std::size_t> major;
    std::vector<std::size_t> rest;
    for (std::size_t f = 0; f < p; ++f) {
        double max_vi = 0.0;
        for (double v : vi[f]) max_vi = std::max(max_vi, v);
        (max_vi < 0.01 ? rest : major).push_back(f);
    }
    if (rest.size() <= 6) {
        major.insert(major.end(), rest.begin(), rest.end());
        rest.clear();
    }
    std::stable_sort(major.begin(), major.end(), [&](std::size_t a, std::size_t b) {
        return *std::max_element(vi[a].begin(), vi[a].end()) >
               *std::max_element(vi[b].begin(), vi[b].end());
    });

    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{"feature"};
    for (const std::string& m : schema.metrics()) header.push_back(m);
    rows.push_back(header);
    auto format_cell = [&](std::size_t m, double value) {
        return report.per_metric[m].ranked ? fixed(value, 4) : std::string("undef");
    };
    for (std::size_t f : major) {
        std::vector<std::string> row{schema.features()[f].name};
        for (std::size_t m = 0; m < schema.metric_count(); ++m)
            row.push_back(format_cell(m, vi[f][m]));
        rows.push_back(std::move(row));
    }
    if (!rest.empty()) {
        std::vector<std::string> row{"rest (" + std::to_string(rest.size()) + " features)"};
        for (std::size_t m = 0; m < schema.metric_count(); ++m) {
            double total = 0.0;
            for (std::size_t f : rest) total += vi[f][m];
            row.push_back(format_cell(m, total));
        }
        rows.push_back(std::move(row));
    }
    print_table(rows);
    return 0;
}

// ---- predict -----------------------------------------------------------

struct PredictArgs {
    std::string model;
    std::vector<std::string> assignments;
    std::string metric = "all";
    CommonFlags common;
};

int run_predict(const PredictArgs& args) {
    const ModelDocument doc = load_model(args.model);
    const FittedModel model = doc.to_model();
    const FeatureSchema& schema = model.schema();

    std::vector<std::optional<std::string>> raw(schema.feature_count());
    for (const std::string& assignment : args.assignments) {
        const std::size_t eq = assignment.find('=');
        if (eq == std::string::npos)
            raise(ErrorKind::UsageError,
                  "--set expects name=value, got '" + assignment + "'");
        const std::string name = assignment.substr(0, eq);
        const auto idx = schema.feature_index(name);
        if (!idx) raise(ErrorKind::UnknownFeature, "unknown feature '" + name + "'");
        raw[*idx] = assignment.substr(eq + 1);
    }
    std::vector<double> features(schema.feature_count(), 0.0);
    for (std::size_t f = 0; f < schema.feature_count(); ++f) {
        if (!raw[f])
            raise(ErrorKind::UsageError,
                  "missing --set " + schema.features()[f].name + "=...");
        features[f] = encode_value(schema.features()[f], *raw[f]);
    }

    std::vector<std::string> metrics;
    if (args.metric == "all")
        metrics = schema.metrics();
    else
        metrics.push_back(args.metric);

    json jout;
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"metric", "predicted_mbps", "note"});
    for (const std::string& metric : metrics) {
        const double value = model.predict(features, metric);
        const bool negative = value < 0.0;
        if (negative)
            std::cerr << "warning: " << metric << " prediction " << fixed(value, 3)
                      << " is below zero (linear extrapolation reported as-is)\n";
        if (args.common.format == "json")
            jout[metric] = {{"predicted_mbps", value}, {"negative", negative}};
        else
            rows.push_back({metric, fixed(value, 3),
                            negative ? "negative-extrapolation" : ""});
    }
    if (args.common.format == "json")
        std::cout << jout.dump(2) << '\n';
    else
        print_table(rows);
    return 0;
}

// ---- advise ------------------------------------------------------------

struct AdviseArgs {
    std::string model;
    std::string candidates;
    std::string objective = "perf_per_watt";
    double power_budget = -1.0;
    std::string cap_coefficient = "0.02";
    CommonFlags common;
};

int run_advise(const AdviseArgs& args) {
    const ModelDocument doc = load_model(args.model);
    const FittedModel model = doc.to_model();
    const std::vector<DesignCandidate> candidates =
        load_candidates(args.candidates, model.schema());
    const auto objective = objective_from_name(args.objective);
    if (!objective)
        raise(ErrorKind::UsageError, "unknown objective '" + args.objective + "'");
    double cap = kDefaultCapCoefficient;
    try {
        cap = std::stod(args.cap_coefficient);
    } catch (const std::exception&) {
        raise(ErrorKind::UsageError,
              "--cap-coefficient expects a number or 'inf', got '" + args.cap_coefficient +
                  "'");
    }
    std::optional<double> budget;
    if (args.power_budget > 0.0) budget = args.power_budget;

    const std::vector<DesignVerdict> verdicts =
        rank_designs(model, candidates, budget, *objective, cap);
    const std::size_t write_idx = *model.schema().metric_index("write_mbps");

    if (args.common.format == "json") {
        json out = json::array();
        for (const DesignVerdict& v : verdicts) {
            json jv;
            jv["name"] = v.name;
            json predicted;
            json capped;
            for (std::size_t m = 0; m < model.schema().metric_count(); ++m) {
                predicted[model.schema().metrics()[m]] = v.predicted[m];
                capped[model.schema().metrics()[m]] = v.capped[m];
            }
            jv["predicted_mbps"] = std::move(predicted);
            jv["capped_mbps"] = std::move(capped);
            jv["cpu_cap_mbps"] = v.cpu_cap;
            jv["limiting_factor"] = v.limiting_factor;
            jv["perf_per_watt"] = v.perf_per_watt;
            jv["power_watts"] = v.power_watts;
            out.push_back(std::move(jv));
        }
        std::cout << out.dump(2) << '\n';
        return 0;
    }
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"rank", "design", "write_mbps", "capped_mbps", "cpu_cap", "limiting",
                    "perf_per_watt", "power_w"});
    for (std::size_t i = 0; i < verdicts.size(); ++i) {
        const DesignVerdict& v = verdicts[i];
        rows.push_back({std::to_string(i + 1), v.name, fixed(v.predicted[write_idx], 2),
                        fixed(v.capped[write_idx], 2), fixed(v.cpu_cap, 2),
                        v.limiting_factor, fixed(v.perf_per_watt, 4),
                        fixed(v.power_watts, 1)});
    }
    print_table(rows);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"parallel-filesystem performance modeling toolkit"};
    app.require_subcommand(1);

    GenerateArgs gen;
    CLI::App* generate_cmd =
        app.add_subcommand("generate", "Synthesize a benchmark dataset");
    generate_cmd->add_option("--regime", gen.regime, "hardware or gluster")
        ->check(CLI::IsMember({"hardware", "gluster"}))
        ->capture_default_str();
    generate_cmd->add_option("--n", gen.n, "Number of records")->required();
    generate_cmd->add_option("--seed", gen.seed, "PRNG seed")
        ->envname("FSMODEL_SEED")
        ->capture_default_str();
    generate_cmd->add_option("--noise-sigma", gen.noise_sigma,
                             "Gaussian noise in MB/s (default 10 hardware, 2 gluster)");
    generate_cmd->add_option("--o-sync", gen.o_sync, "gluster regime: on or off")
        ->check(CLI::IsMember({"on", "off"}))
        ->capture_default_str();
    generate_cmd->add_option("--out", gen.out, "Output CSV path")->required();
    generate_cmd->add_option("--truth-out", gen.truth_out, "Planted-truth JSON path");
    add_format_flag(generate_cmd, gen.common);

    FitArgs fit_args;
    CLI::App* fit_cmd = app.add_subcommand("fit", "Fit per-metric linear models");
    fit_cmd->add_option("--data", fit_args.data, "Input CSV")->required();
    fit_cmd->add_option("--schema", fit_args.schema, "Built-in schema name")
        ->capture_default_str();
    fit_cmd->add_option("--schema-file", fit_args.schema_file, "Schema JSON path");
    fit_cmd->add_option("--out", fit_args.out, "Model JSON output path");
    add_format_flag(fit_cmd, fit_args.common);

    EvalArgs eval_args;
    CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate a model on a dataset");
    eval_cmd->add_option("--data", eval_args.data, "Input CSV")->required();
    eval_cmd->add_option("--model", eval_args.model, "Model JSON")->required();
    add_format_flag(eval_cmd, eval_args.common);

    XvalArgs xval_args;
    CLI::App* xval_cmd =
        app.add_subcommand("xval", "Random train/validation cross-validation");
    xval_cmd->add_option("--data", xval_args.data, "Input CSV")->required();
    xval_cmd->add_option("--schema", xval_args.schema, "Built-in schema name")
        ->capture_default_str();
    xval_cmd->add_option("--schema-file", xval_args.schema_file, "Schema JSON path");
    xval_cmd->add_option("--train-frac", xval_args.train_frac, "Training fraction")
        ->capture_default_str();
    xval_cmd->add_option("--seed", xval_args.seed, "Shuffle seed")
        ->envname("FSMODEL_SEED")
        ->capture_default_str();
    add_format_flag(xval_cmd, xval_args.common);

    ImportanceArgs imp_args;
    CLI::App* imp_cmd =
        app.add_subcommand("importance", "Rank features by variance-based importance");
    imp_cmd->add_option("--data", imp_args.data, "Input CSV")->required();
    imp_cmd->add_option("--schema", imp_args.schema, "Built-in schema name")
        ->capture_default_str();
    imp_cmd->add_option("--schema-file", imp_args.schema_file, "Schema JSON path");
    add_format_flag(imp_cmd, imp_args.common);

    PredictArgs pred_args;
    CLI::App* pred_cmd = app.add_subcommand("predict", "Predict metrics for one design");
    pred_cmd->add_option("--model", pred_args.model, "Model JSON")->required();
    pred_cmd->add_option("--set", pred_args.assignments, "feature=value (repeatable)")
        ->required();
    pred_cmd->add_option("--metric", pred_args.metric, "Metric name or 'all'")
        ->capture_default_str();
    add_format_flag(pred_cmd, pred_args.common);

    AdviseArgs adv_args;
    CLI::App* adv_cmd = app.add_subcommand("advise", "Score and rank design candidates");
    adv_cmd->add_option("--model", adv_args.model, "Model JSON")->required();
    adv_cmd->add_option("--candidates", adv_args.candidates, "Candidates JSON")->required();
    adv_cmd->add_option("--objective", adv_args.objective, "throughput or perf_per_watt")
        ->check(CLI::IsMember({"throughput", "perf_per_watt"}))
        ->capture_default_str();
    adv_cmd->add_option("--power-budget", adv_args.power_budget, "Max power per design (W)");
    adv_cmd->add_option("--cap-coefficient", adv_args.cap_coefficient,
                        "CPU cap in MB/s per benchmark point ('inf' disables)")
        ->capture_default_str();
    add_format_flag(adv_cmd, adv_args.common);

    try {
        app.parse(argc, argv);
        if (generate_cmd->parsed()) return run_generate(gen);
        if (fit_cmd->parsed()) return run_fit(fit_args);
        if (eval_cmd->parsed()) return run_eval(eval_args);
        if (xval_cmd->parsed()) return run_xval(xval_args);
        if (imp_cmd->parsed()) return run_importance(imp_args);
        if (pred_cmd->parsed()) return run_predict(pred_args);
        if (adv_cmd->parsed()) return run_advise(adv_args);
        return 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << error_kind_name(e.kind()) << ": " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
