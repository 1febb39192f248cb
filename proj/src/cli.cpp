#include "gtscore/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "gtscore/aggregate.hpp"
#include "gtscore/errors.hpp"

namespace gtscore::cli {

namespace fs = std::filesystem;

namespace {

std::string seed_range_text(const std::vector<std::uint64_t>& seeds) {
    const bool contiguous = !seeds.empty() && std::adjacent_find(seeds.begin(), seeds.end(), [](auto a, auto b) {
                                                  return b != a + 1;
                                              }) == seeds.end();
    if (contiguous) return std::to_string(seeds.front()) + ".." + std::to_string(seeds.back());
    return {};
}

std::string join_path(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

void write_table(const std::string& dir, const std::string& name, const CsvTable& table,
                 std::vector<std::string>& files) {
    const auto path = join_path(dir, name);
    write_file(path, table.to_string());
    files.push_back(path);
}

CsvTable candidates_table(std::span<const TrialResult> trials) {
    CsvTable t({"asset", "strategy", "objective", "split_id", "seed", "candidate", "params_json", "loss", "train_trades"});
    for (const auto& r : trials) {
        for (std::size_t i = 0; i < r.candidates.size(); ++i) {
            const auto& c = r.candidates[i];
            t.add_row({r.spec.asset_id, std::string(to_string(r.spec.strategy)), std::string(to_string(r.spec.objective)),
                       std::to_string(r.spec.split_id), std::to_string(r.spec.seed), std::to_string(i),
                       to_json(c.params).dump(), format_number(c.loss), std::to_string(c.train_trades)});
        }
    }
    return t;
}

StudyOptions study_options(const RunConfig& cfg, int jobs) {
    StudyOptions opts;
    opts.strategies = cfg.strategies;
    opts.objectives = cfg.objectives;
    opts.budget = cfg.budget;
    opts.cost_bps = cfg.cost_bps;
    opts.jobs = jobs;
    return opts;
}

std::string render_aligned(const CsvTable& table) {
    std::vector<std::size_t> width(table.header().size(), 0);
    const auto cell = [](const std::string& s) -> std::string {
        if (s.empty()) return "-";
        // Numeric cells are shortened for display; the CSV keeps full precision.
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (end && *end == '\0' && s.find_first_not_of("0123456789.-+eE") == std::string::npos &&
            s.find('.') != std::string::npos) {
            std::ostringstream os;
            os << std::fixed << std::setprecision(4) << v;
            return os.str();
        }
        return s;
    };
    std::vector<std::vector<std::string>> lines{table.header()};
    for (const auto& r : table.rows()) {
        std::vector<std::string> l;
        for (const auto& f : r) l.push_back(cell(f));
        lines.push_back(std::move(l));
    }
    for (const auto& l : lines)
        for (std::size_t i = 0; i < l.size(); ++i) width[i] = std::max(width[i], l[i].size());
    std::ostringstream os;
    for (const auto& l : lines) {
        for (std::size_t i = 0; i < l.size(); ++i) {
            os << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << (i ? std::right : std::left) << l[i];
        }
        os << '\n';
    }
    return os.str();
}

CsvTable read_table(const std::string& path) { return CsvTable::parse(read_file(path)); }

}  // namespace

std::vector<std::uint64_t> parse_seed_range(std::string_view text) {
    const auto dots = text.find("..");
    if (dots == std::string_view::npos) throw ParameterError("seed range must look like a..b");
    std::uint64_t lo = 0, hi = 0;
    try {
        lo = std::stoull(std::string(text.substr(0, dots)));
        hi = std::stoull(std::string(text.substr(dots + 2)));
    } catch (const std::exception&) {
        throw ParameterError("invalid seed range '" + std::string(text) + "'");
    }
    if (hi < lo) throw ParameterError("seed range upper bound below lower bound");
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
}

Json to_json(const RunConfig& cfg) {
    Json strategies = Json::array(), objectives = Json::array();
    for (auto s : cfg.strategies) strategies.push_back(std::string(to_string(s)));
    for (auto o : cfg.objectives) objectives.push_back(std::string(to_string(o)));
    Json seeds;
    if (auto text = seed_range_text(cfg.mc.seeds); !text.empty()) seeds = text;
    else seeds = cfg.mc.seeds;
    return {
        {"data_dir", cfg.data_dir},
        {"assets", cfg.assets},
        {"strategies", strategies},
        {"objectives", objectives},
        {"wf",
         {{"train_years", cfg.wf.train_years},
          {"val_years", cfg.wf.val_years},
          {"step_years", cfg.wf.step_years},
          {"embargo_days", cfg.wf.embargo_days},
          {"seed", cfg.wf.seed}}},
        {"mc", {{"seeds", seeds}, {"train_fraction", cfg.mc.train_fraction}, {"embargo_days", cfg.mc.embargo_days}}},
        {"budget", cfg.budget},
        {"cost_bps", cfg.cost_bps},
        {"objective", gtscore::to_json(cfg.objective)},
        {"cost_sweep_bps", cfg.cost_sweep_bps},
        {"out_dir", cfg.out_dir},
    };
}

RunConfig run_config_from_json(const Json& j) {
    RunConfig cfg;
    try {
        cfg.data_dir = j.value("data_dir", cfg.data_dir);
        if (j.contains("assets")) cfg.assets = j.at("assets").get<std::vector<std::string>>();
        if (j.contains("strategies")) {
            cfg.strategies.clear();
            for (const auto& s : j.at("strategies")) cfg.strategies.push_back(parse_strategy_kind(s.get<std::string>()));
        }
        if (j.contains("objectives")) {
            cfg.objectives.clear();
            for (const auto& o : j.at("objectives")) cfg.objectives.push_back(parse_objective_kind(o.get<std::string>()));
        }
        if (j.contains("wf")) {
            const auto& w = j.at("wf");
            cfg.wf.train_years = w.value("train_years", cfg.wf.train_years);
            cfg.wf.val_years = w.value("val_years", cfg.wf.val_years);
            cfg.wf.step_years = w.value("step_years", cfg.wf.step_years);
            cfg.wf.embargo_days = w.value("embargo_days", cfg.wf.embargo_days);
            cfg.wf.seed = w.value("seed", cfg.wf.seed);
        }
        if (j.contains("mc")) {
            const auto& m = j.at("mc");
            if (m.contains("seeds")) {
                const auto& s = m.at("seeds");
                cfg.mc.seeds = s.is_string() ? parse_seed_range(s.get<std::string>()) : s.get<std::vector<std::uint64_t>>();
            }
            cfg.mc.train_fraction = m.value("train_fraction", cfg.mc.train_fraction);
            cfg.mc.embargo_days = m.value("embargo_days", cfg.mc.embargo_days);
        }
        cfg.budget = j.value("budget", cfg.budget);
        cfg.cost_bps = j.value("cost_bps", cfg.cost_bps);
        if (j.contains("objective")) cfg.objective = objective_config_from_json(j.at("objective"));
        if (j.contains("cost_sweep_bps")) cfg.cost_sweep_bps = j.at("cost_sweep_bps").get<std::vector<double>>();
        cfg.out_dir = j.value("out_dir", cfg.out_dir);
    } catch (const Json::exception& e) {
        throw ParameterError(std::string("invalid run config: ") + e.what());
    }
    if (cfg.budget < 1) throw ParameterError("budget must be >= 1");
    if (cfg.strategies.empty() || cfg.objectives.empty()) throw ParameterError("strategies and objectives must be non-empty");
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    Json j;
    try {
        j = Json::parse(read_file(path));
    } catch (const Json::exception& e) {
        throw ParameterError(path + ": " + e.what());
    } catch (const DataError& e) {
        throw ParameterError(e.what());
    }
    return run_config_from_json(j);
}

std::vector<PriceSeries> load_assets(const RunConfig& cfg) {
    std::vector<std::string> ids = cfg.assets;
    if (ids.empty()) {
        if (!fs::is_directory(cfg.data_dir)) throw DataError("data_dir " + cfg.data_dir + " does not exist");
        for (const auto& entry : fs::directory_iterator(cfg.data_dir))
            if (entry.path().extension() == ".csv") ids.push_back(entry.path().stem().string());
        std::sort(ids.begin(), ids.end());
    }
    if (ids.empty()) throw DataError("no assets found in " + cfg.data_dir);
    std::vector<PriceSeries> out;
    for (const auto& id : ids) out.push_back(load_ohlcv_csv(join_path(cfg.data_dir, id + ".csv"), id));
    return out;
}

std::vector<std::string> cmd_synth(const std::string& spec_path, const std::string& out_dir) {
    Json j;
    try {
        j = Json::parse(read_file(spec_path));
    } catch (const Json::exception& e) {
        throw ParameterError(spec_path + ": " + e.what());
    }
    std::vector<SyntheticSpec> specs;
    if (j.contains("assets")) {
        for (const auto& a : j.at("assets")) {
            Json merged = a;
            if (j.contains("start_date") && !a.contains("start_date")) merged["start_date"] = j.at("start_date");
            specs.push_back(synthetic_spec_from_json(merged));
        }
    } else {
        specs.push_back(synthetic_spec_from_json(j));
    }
    fs::create_directories(out_dir);
    std::vector<std::string> paths;
    for (const auto& spec : specs) {
        const auto series = generate_synthetic_series(spec);
        const auto path = join_path(out_dir, spec.asset_id + ".csv");
        write_file(path, write_ohlcv_csv(series));
        paths.push_back(path);
    }
    return paths;
}

StudySummary cmd_walkforward(const RunConfig& cfg, int jobs) {
    const auto assets = load_assets(cfg);
    const auto study = run_walkforward(assets, study_options(cfg, jobs), cfg.wf, cfg.objective);
    const auto rows = to_rows(study.trials);
    fs::create_directories(cfg.out_dir);
    StudySummary s{study.trials.size(), study.warnings, {}};
    write_table(cfg.out_dir, "trials.csv", trials_table(rows), s.files);
    write_table(cfg.out_dir, "candidates.csv", candidates_table(study.trials), s.files);
    write_table(cfg.out_dir, "aggregates.csv", aggregates_table(aggregate_by_objective(rows), "val"), s.files);
    write_table(cfg.out_dir, "periods.csv", periods_table(rows), s.files);
    write_table(cfg.out_dir, "splits_genratio.csv", split_genratio_table(rows), s.files);
    return s;
}

StudySummary cmd_montecarlo(const RunConfig& cfg, int jobs) {
    const auto assets = load_assets(cfg);
    const auto study = run_montecarlo(assets, study_options(cfg, jobs), cfg.mc, cfg.objective);
    const auto rows = to_rows(study.trials);
    fs::create_directories(cfg.out_dir);
    StudySummary s{study.trials.size(), study.warnings, {}};
    write_table(cfg.out_dir, "trials.csv", trials_table(rows), s.files);
    write_table(cfg.out_dir, "candidates.csv", candidates_table(study.trials), s.files);
    write_table(cfg.out_dir, "aggregates.csv", aggregates_table(aggregate_by_objective(rows), "test"), s.files);
    write_table(cfg.out_dir, "strategy_means.csv", strategy_means_table(rows), s.files);
    write_table(cfg.out_dir, "comparisons.csv", comparisons_table(compare_objectives(rows)), s.files);
    write_table(cfg.out_dir, "trade_counts.csv", trade_counts_table(rows), s.files);
    return s;
}

std::string cmd_costsweep(const std::string& trials_path, const std::vector<double>& bps, const std::string& out_dir) {
    if (bps.empty()) throw ParameterError("cost sweep needs at least one bps level");
    for (double b : bps)
        if (!(b >= 0.0)) throw ParameterError("cost sweep levels must be >= 0");
    const auto rows = rows_from_table(read_table(trials_path));
    const std::string dir = out_dir.empty() ? fs::path(trials_path).parent_path().string() : out_dir;
    if (!dir.empty()) fs::create_directories(dir);
    const auto path = join_path(dir.empty() ? "." : dir, "cost_sensitivity.csv");
    write_file(path, cost_sensitivity_table(rows, bps).to_string());
    return path;
}

void cmd_report(const std::string& out_dir, std::ostream& os) {
    if (!fs::is_directory(out_dir)) throw DataError("report directory " + out_dir + " does not exist");
    const auto agg_path = join_path(out_dir, "aggregates.csv");
    if (!fs::exists(agg_path)) throw DataError(out_dir + " has no aggregates.csv; run walkforward or montecarlo first");
    const auto aggs = read_table(agg_path);
    const bool walkforward = aggs.has_column("val_mean");

    os << (walkforward ? "Walk-forward validation by objective\n" : "Monte Carlo study by objective\n");
    os << render_aligned(aggs) << '\n';

    CsvTable fig1({"objective", "gen_ratio"});
    const auto gen = aggs.column("gen_ratio");
    for (const auto& r : aggs.rows()) fig1.add_row({r[aggs.column("objective")], r[gen]});
    write_file(join_path(out_dir, "fig1_genratio.csv"), fig1.to_string());

    const std::pair<const char*, const char*> extras[] = {
        {"periods.csv", "Validation return by period"},
        {"strategy_means.csv", "Mean out-of-sample return by strategy"},
        {"comparisons.csv", "GT-Score against baselines (paired out-of-sample returns)"},
        {"trade_counts.csv", "Mean trade counts"},
        {"cost_sensitivity.csv", "Mean out-of-sample return after extra per-side costs"},
    };
    for (const auto& [file, title] : extras) {
        const auto path = join_path(out_dir, file);
        if (!fs::exists(path)) continue;
        os << title << '\n' << render_aligned(read_table(path)) << '\n';
    }

    if (const auto path = join_path(out_dir, "splits_genratio.csv"); fs::exists(path)) {
        const auto splits = read_table(path);
        std::vector<std::string> objectives;
        std::map<std::pair<int, std::string>, std::map<std::string, std::string>> lines;
        for (const auto& r : splits.rows()) {
            const auto& obj = r[splits.column("objective")];
            if (std::find(objectives.begin(), objectives.end(), obj) == objectives.end()) objectives.push_back(obj);
            lines[{std::stoi(r[splits.column("split_id")]), r[splits.column("period")]}][obj] =
                r[splits.column("gen_ratio")];
        }
        std::vector<std::string> header{"split_id", "period"};
        header.insert(header.end(), objectives.begin(), objectives.end());
        CsvTable fig2(header);
        for (const auto& [key, by_obj] : lines) {
            std::vector<std::string> row{std::to_string(key.first), key.second};
            for (const auto& o : objectives) row.push_back(by_obj.count(o) ? by_obj.at(o) : std::string{});
            fig2.add_row(std::move(row));
        }
        write_file(join_path(out_dir, "fig2_split_genratio.csv"), fig2.to_string());
        os << "Generalization ratio by split\n" << render_aligned(fig2) << '\n';
    }

    if (const auto path = join_path(out_dir, "cost_sensitivity.csv"); fs::exists(path)) {
        const auto grid = read_table(path);
        std::vector<std::string> header{"bps"};
        for (const auto& r : grid.rows()) header.push_back(r[0]);
        CsvTable fig3(header);
        for (std::size_t c = 1; c < grid.header().size(); ++c) {
            std::vector<std::string> row{grid.header()[c].substr(4)};
            for (const auto& r : grid.rows()) row.push_back(r[c]);
            fig3.add_row(std::move(row));
        }
        write_file(join_path(out_dir, "fig3_cost_curves.csv"), fig3.to_string());
    }
}

std::vector<std::string> cmd_verify(const std::string& out_dir) {
    const auto trials_path = join_path(out_dir, "trials.csv");
    if (!fs::exists(trials_path)) throw DataError(out_dir + " has no trials.csv");
    const auto rows = rows_from_table(read_table(trials_path));

    std::vector<std::string> mismatches;
    const auto check = [&](const std::string& name, const CsvTable& expected) {
        const auto path = join_path(out_dir, name);
        if (!fs::exists(path)) return;
        if (read_file(path) != expected.to_string()) mismatches.push_back(name);
    };
    if (const auto path = join_path(out_dir, "aggregates.csv"); fs::exists(path)) {
        // Header sniff only: a corrupted body should surface as a mismatch, not a parse error.
        const auto text = read_file(path);
        const bool walkforward = text.substr(0, text.find('\n')).find("val_mean") != std::string::npos;
        check("aggregates.csv", aggregates_table(aggregate_by_objective(rows), walkforward ? "val" : "test"));
    }
    check("trials.csv", trials_table(rows));
    check("periods.csv", periods_table(rows));
    check("splits_genratio.csv", split_genratio_table(rows));
    check("strategy_means.csv", strategy_means_table(rows));
    check("trade_counts.csv", trade_counts_table(rows));
    check("comparisons.csv", comparisons_table(compare_objectives(rows)));
    if (const auto path = join_path(out_dir, "cost_sensitivity.csv"); fs::exists(path)) {
        std::vector<double> bps;
        const auto grid = read_table(path);
        for (std::size_t c = 1; c < grid.header().size(); ++c) bps.push_back(parse_number(grid.header()[c].substr(4)));
        check("cost_sensitivity.csv", cost_sensitivity_table(rows, bps));
    }
    return mismatches;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Backtest objective study engine: random search under GT-Score and baseline losses"};
    app.require_subcommand(1);

    std::string config_path, out_dir, seed_range, spec_path, trials_path, target_dir;
    int jobs = 1;
    std::vector<double> bps;

    auto* synth = app.add_subcommand("synth", "Generate synthetic OHLCV CSV files from a JSON spec");
    synth->add_option("spec", spec_path, "Synthetic spec JSON")->required();
    synth->add_option("--out", out_dir, "Output directory")->required();

    const auto study_flags = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "Run config JSON")->required();
        cmd->add_option("--out", out_dir, "Output directory (overrides out_dir)");
        cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    };
    auto* wf = app.add_subcommand("walkforward", "Run the walk-forward validation study");
    study_flags(wf);
    auto* mc = app.add_subcommand("montecarlo", "Run the multi-seed Monte Carlo study");
    study_flags(mc);
    mc->add_option("--seed-range", seed_range, "Seed range a..b (overrides mc.seeds)");

    auto* sweep = app.add_subcommand("costsweep", "Recompute mean oos returns under extra per-side costs");
    sweep->add_option("trials", trials_path, "Monte Carlo trials.csv")->required();
    sweep->add_option("--bps", bps, "Per-side cost levels in bps")->delimiter(',');
    sweep->add_option("--config", config_path, "Run config JSON (for cost_sweep_bps)");
    sweep->add_option("--out", out_dir, "Output directory (default: next to trials.csv)");

    auto* report = app.add_subcommand("report", "Print tables and write plot-ready data");
    report->add_option("dir", target_dir, "Study output directory");
    report->add_option("--out", out_dir, "Study output directory");

    auto* verify = app.add_subcommand("verify", "Recompute aggregates from trials.csv and diff");
    verify->add_option("dir", target_dir, "Study output directory");
    verify->add_option("--out", out_dir, "Study output directory");

    auto* config = app.add_subcommand("config", "Configuration helpers");
    config->require_subcommand(1);
    auto* init = config->add_subcommand("init", "Write the default run config");
    init->add_option("--out", out_dir, "Destination file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsageError;
    }

    try {
        const auto study_config = [&] {
            auto cfg = load_run_config(config_path);
            if (!out_dir.empty()) cfg.out_dir = out_dir;
            if (!seed_range.empty()) cfg.mc.seeds = parse_seed_range(seed_range);
            return cfg;
        };
        const auto report_study = [&](const StudySummary& s) {
            for (const auto& w : s.warnings) err << "warning: " << w << '\n';
            out << s.trials << " trials\n";
            for (const auto& f : s.files) out << "wrote " << f << '\n';
        };

        if (*synth) {
            for (const auto& p : cmd_synth(spec_path, out_dir)) out << "wrote " << p << '\n';
        } else if (*wf) {
            report_study(cmd_walkforward(study_config(), jobs));
        } else if (*mc) {
            report_study(cmd_montecarlo(study_config(), jobs));
        } else if (*sweep) {
            if (bps.empty()) bps = config_path.empty() ? RunConfig{}.cost_sweep_bps : load_run_config(config_path).cost_sweep_bps;
            out << "wrote " << cmd_costsweep(trials_path, bps, out_dir) << '\n';
        } else if (*report) {
            const auto dir = target_dir.empty() ? out_dir : target_dir;
            if (dir.empty()) throw ParameterError("report needs a study directory");
            cmd_report(dir, out);
        } else if (*verify) {
            const auto dir = target_dir.empty() ? out_dir : target_dir;
            if (dir.empty()) throw ParameterError("verify needs a study directory");
            const auto bad = cmd_verify(dir);
            if (!bad.empty()) {
                for (const auto& f : bad) err << "mismatch: " << f << '\n';
                return kInvariantFailure;
            }
            out << "verified " << dir << '\n';
        } else if (*init) {
            const auto text = to_json(RunConfig{}).dump(2) + "\n";
            if (out_dir.empty()) out << text;
            else write_file(out_dir, text);
        }
    } catch (const DataError& e) {
        err << "data error: " << e.what() << '\n';
        return kDataError;
    } catch (const ParameterError& e) {
        err << "config error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInvariantFailure;
    }
    return kOk;
}

}  // namespace gtscore::cli
