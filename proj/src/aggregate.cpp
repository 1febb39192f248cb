#include "gtscore/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "gtscore/errors.hpp"
#include "gtscore/serialize.hpp"

namespace gtscore {

namespace {

constexpr std::string_view kGt = "GT_SCORE";

std::string join_returns(std::span<const double> xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ';';
        out += format_number(xs[i]);
    }
    return out;
}

std::vector<double> split_returns(std::string_view s) {
    std::vector<double> out;
    while (!s.empty()) {
        const auto semi = s.find(';');
        out.push_back(parse_number(s.substr(0, semi)));
        if (semi == std::string_view::npos) break;
        s.remove_prefix(semi + 1);
    }
    return out;
}

std::size_t parse_count(const std::string& s) {
    const double v = parse_number(s);
    if (v < 0 || v != std::floor(v)) throw DataError("invalid count '" + s + "'");
    return static_cast<std::size_t>(v);
}

double mean_of(const std::vector<double>& xs) {
    double sum = 0.0;
    for (double x : xs) sum += x;
    return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
}

double sample_std(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean_of(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

std::optional<double> mean_or_none(const std::vector<double>& xs) {
    if (xs.empty()) return std::nullopt;
    return mean_of(xs);
}

std::vector<std::string> present_in_order(std::span<const TrialRow> rows, std::string TrialRow::*field,
                                          std::vector<std::string> canonical) {
    std::vector<std::string> out;
    for (const auto& name : canonical)
        if (std::any_of(rows.begin(), rows.end(), [&](const TrialRow& r) { return r.*field == name; }))
            out.push_back(name);
    return out;
}

std::vector<std::string> strategies_present(std::span<const TrialRow> rows) {
    std::vector<std::string> canonical;
    for (auto k : kAllStrategies) canonical.emplace_back(to_string(k));
    return present_in_order(rows, &TrialRow::strategy, canonical);
}

}  // namespace

TrialRow to_row(const TrialResult& r) {
    TrialRow row;
    row.asset = r.spec.asset_id;
    row.strategy = std::string(to_string(r.spec.strategy));
    row.objective = std::string(to_string(r.spec.objective));
    row.split_id = r.spec.split_id;
    row.period = std::to_string(year_of(r.spec.split.val_start)) + "-" + std::to_string(year_of(r.spec.split.val_end));
    row.seed = r.spec.seed;
    row.train_return = r.train_total_return;
    row.oos_return = r.oos_total_return;
    row.train_trades = r.train_n_trades;
    row.oos_trades = r.oos_n_trades;
    row.best_loss = r.best_loss;
    row.degenerate = r.degenerate;
    row.params_json = to_json(r.best_params).dump();
    row.oos_trade_returns = r.oos_trade_returns;
    return row;
}

std::vector<TrialRow> to_rows(std::span<const TrialResult> trials) {
    std::vector<TrialRow> rows;
    rows.reserve(trials.size());
    for (const auto& t : trials) rows.push_back(to_row(t));
    return rows;
}

CsvTable trials_table(std::span<const TrialRow> rows) {
    CsvTable t({"asset", "strategy", "objective", "split_id", "period", "seed", "train_return", "oos_return",
                "train_trades", "oos_trades", "best_loss", "degenerate", "params_json", "oos_trade_returns"});
    for (const auto& r : rows) {
        t.add_row({r.asset, r.strategy, r.objective, std::to_string(r.split_id), r.period, std::to_string(r.seed),
                   format_number(r.train_return), format_number(r.oos_return), std::to_string(r.train_trades),
                   std::to_string(r.oos_trades), format_number(r.best_loss), r.degenerate ? "1" : "0", r.params_json,
                   join_returns(r.oos_trade_returns)});
    }
    return t;
}

std::vector<TrialRow> rows_from_table(const CsvTable& table) {
    const auto c = [&](std::string_view name) { return table.column(name); };
    const std::size_t asset = c("asset"), strategy = c("strategy"), objective = c("objective"),
                      split_id = c("split_id"), period = c("period"), seed = c("seed"), train = c("train_return"),
                      oos = c("oos_return"), train_trades = c("train_trades"), oos_trades = c("oos_trades"),
                      loss = c("best_loss"), degenerate = c("degenerate"), params = c("params_json"),
                      returns = c("oos_trade_returns");
    std::vector<TrialRow> rows;
    for (const auto& f : table.rows()) {
        TrialRow r;
        r.asset = f[asset];
        r.strategy = f[strategy];
        r.objective = f[objective];
        r.split_id = static_cast<int>(parse_count(f[split_id]));
        r.period = f[period];
        r.seed = std::stoull(f[seed]);
        r.train_return = parse_number(f[train]);
        r.oos_return = parse_number(f[oos]);
        r.train_trades = parse_count(f[train_trades]);
        r.oos_trades = parse_count(f[oos_trades]);
        r.best_loss = parse_number(f[loss]);
        r.degenerate = f[degenerate] == "1";
        r.params_json = f[params];
        r.oos_trade_returns = split_returns(f[returns]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<std::string> objectives_present(std::span<const TrialRow> rows) {
    std::vector<std::string> canonical;
    for (auto k : kAllObjectives) canonical.emplace_back(to_string(k));
    return present_in_order(rows, &TrialRow::objective, canonical);
}

std::vector<ObjectiveAggregate> aggregate_by_objective(std::span<const TrialRow> rows) {
    std::vector<ObjectiveAggregate> out;
    for (const auto& name : objectives_present(rows)) {
        std::vector<double> oos, train;
        for (const auto& r : rows) {
            if (r.objective != name || r.degenerate) continue;
            oos.push_back(r.oos_return);
            train.push_back(r.train_return);
        }
        ObjectiveAggregate a;
        a.objective = name;
        a.n = oos.size();
        a.oos_mean = mean_of(oos);
        a.oos_std = sample_std(oos);
        a.train_mean = mean_of(train);
        if (a.n > 0) a.gen_ratio = generalization_ratio(a.oos_mean, a.train_mean);
        out.push_back(a);
    }
    return out;
}

CsvTable aggregates_table(std::span<const ObjectiveAggregate> aggs, const std::string& oos_label) {
    CsvTable t({"objective", oos_label + "_mean", oos_label + "_std", "train_mean", "gen_ratio", "n"});
    for (const auto& a : aggs) {
        t.add_row({a.objective, format_number(a.oos_mean), format_number(a.oos_std), format_number(a.train_mean),
                   format_number(a.gen_ratio), std::to_string(a.n)});
    }
    return t;
}

CsvTable periods_table(std::span<const TrialRow> rows) {
    const auto objectives = objectives_present(rows);
    std::vector<std::string> header{"split_id", "period"};
    header.insert(header.end(), objectives.begin(), objectives.end());
    header.push_back("baseline_avg");
    header.push_back("delta_pp");
    CsvTable t(header);

    std::map<int, std::string> periods;
    for (const auto& r : rows) periods.emplace(r.split_id, r.period);
    for (const auto& [split, label] : periods) {
        std::vector<std::string> line{std::to_string(split), label};
        std::optional<double> gt;
        std::vector<double> baselines;
        for (const auto& name : objectives) {
            std::vector<double> oos;
            for (const auto& r : rows)
                if (r.split_id == split && r.objective == name && !r.degenerate) oos.push_back(r.oos_return);
            const auto m = mean_or_none(oos);
            line.push_back(format_number(m));
            if (!m) continue;
            if (name == kGt) gt = m;
            else baselines.push_back(*m);
        }
        const auto base = mean_or_none(baselines);
        line.push_back(format_number(base));
        line.push_back(gt && base ? format_number((*gt - *base) * 100.0) : std::string{});
        t.add_row(std::move(line));
    }
    return t;
}

CsvTable split_genratio_table(std::span<const TrialRow> rows) {
    CsvTable t({"split_id", "period", "objective", "oos_mean", "train_mean", "gen_ratio", "n"});
    std::map<int, std::string> periods;
    for (const auto& r : rows) periods.emplace(r.split_id, r.period);
    for (const auto& [split, label] : periods) {
        for (const auto& name : objectives_present(rows)) {
            std::vector<double> oos, train;
            for (const auto& r : rows) {
                if (r.split_id != split || r.objective != name || r.degenerate) continue;
                oos.push_back(r.oos_return);
                train.push_back(r.train_return);
            }
            std::optional<double> ratio;
            if (!oos.empty()) ratio = generalization_ratio(mean_of(oos), mean_of(train));
            t.add_row({std::to_string(split), label, name, format_number(mean_or_none(oos)),
                       format_number(mean_or_none(train)), format_number(ratio), std::to_string(oos.size())});
        }
    }
    return t;
}

CsvTable strategy_means_table(std::span<const TrialRow> rows) {
    const auto objectives = objectives_present(rows);
    std::vector<std::string> header{"strategy"};
    header.insert(header.end(), objectives.begin(), objectives.end());
    CsvTable t(header);
    for (const auto& strategy : strategies_present(rows)) {
        std::vector<std::string> line{strategy};
        for (const auto& name : objectives) {
            std::vector<double> oos;
            for (const auto& r : rows)
                if (r.strategy == strategy && r.objective == name && !r.degenerate) oos.push_back(r.oos_return);
            line.push_back(format_number(mean_or_none(oos)));
        }
        t.add_row(std::move(line));
    }
    return t;
}

CsvTable trade_counts_table(std::span<const TrialRow> rows) {
    CsvTable t({"objective", "mean_oos_trades", "mean_train_trades", "n"});
    for (const auto& name : objectives_present(rows)) {
        std::vector<double> oos, train;
        for (const auto& r : rows) {
            if (r.objective != name || r.degenerate) continue;
            oos.push_back(static_cast<double>(r.oos_trades));
            train.push_back(static_cast<double>(r.train_trades));
        }
        t.add_row({name, format_number(mean_or_none(oos)), format_number(mean_or_none(train)),
                   std::to_string(oos.size())});
    }
    return t;
}

std::vector<PairedComparison> compare_objectives(std::span<const TrialRow> rows) {
    using Key = std::tuple<std::string, std::string, int, std::uint64_t>;
    std::map<Key, std::map<std::string, double>> cells;
    for (const auto& r : rows) {
        if (r.degenerate) continue;
        cells[{r.asset, r.strategy, r.split_id, r.seed}][r.objective] = r.oos_return;
    }
    std::vector<PairedComparison> out;
    for (const auto& name : objectives_present(rows)) {
        if (name == kGt) continue;
        std::vector<double> gt, base;
        for (const auto& [key, by_objective] : cells) {
            auto g = by_objective.find(std::string(kGt));
            auto b = by_objective.find(name);
            if (g == by_objective.end() || b == by_objective.end()) continue;
            gt.push_back(g->second);
            base.push_back(b->second);
        }
        if (gt.size() < 2) continue;
        std::string label = "GT_SCORE vs " + name;
        out.push_back(compare_paired(std::move(label), gt, base));
    }
    return out;
}

CsvTable comparisons_table(std::span<const PairedComparison> comparisons) {
    CsvTable t({"comparison", "mean_diff", "t_stat", "p_value", "cohens_d", "wilcoxon_p", "n"});
    for (const auto& c : comparisons) {
        t.add_row({c.name, format_number(c.mean_diff), format_number(c.t_stat), format_number(c.p_value_t),
                   format_number(c.cohens_d), format_number(c.wilcoxon_p), std::to_string(c.n)});
    }
    return t;
}

CsvTable cost_sensitivity_table(std::span<const TrialRow> rows, std::span<const double> bps_levels) {
    std::vector<std::string> header{"objective"};
    for (double b : bps_levels) header.push_back("bps_" + format_number(b));
    CsvTable t(header);
    for (const auto& name : objectives_present(rows)) {
        std::vector<std::string> line{name};
        for (double b : bps_levels) {
            std::vector<double> oos;
            for (const auto& r : rows)
                if (r.objective == name && !r.degenerate) oos.push_back(compound_with_haircut(r.oos_trade_returns, b));
            line.push_back(format_number(mean_or_none(oos)));
        }
        t.add_row(std::move(line));
    }
    return t;
}

}  // namespace gtscore
