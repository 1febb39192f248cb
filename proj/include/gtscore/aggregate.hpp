#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gtscore/objective.hpp"
#include "gtscore/search.hpp"
#include "gtscore/stats.hpp"
#include "gtscore/tables.hpp"

namespace gtscore {

/// Flat, serializable view of a TrialResult; the unit every report is built from.
struct TrialRow {
    std::string asset;
    std::string strategy;
    std::string objective;
    int split_id = 0;
    std::string period;  // validation years, e.g. "2014-2016"
    std::uint64_t seed = 0;
    double train_return = 0;
    double oos_return = 0;
    std::size_t train_trades = 0;
    std::size_t oos_trades = 0;
    double best_loss = 0;
    bool degenerate = false;
    std::string params_json;
    std::vector<double> oos_trade_returns;
};

TrialRow to_row(const TrialResult& r);
std::vector<TrialRow> to_rows(std::span<const TrialResult> trials);

CsvTable trials_table(std::span<const TrialRow> rows);
std::vector<TrialRow> rows_from_table(const CsvTable& table);

/// Objectives present in `rows`, in canonical order (GT_SCORE, SHARPE, SORTINO, SIMPLE).
std::vector<std::string> objectives_present(std::span<const TrialRow> rows);

// Every aggregate below skips degenerate rows.

struct ObjectiveAggregate {
    std::string objective;
    double oos_mean = 0;
    double oos_std = 0;  // sample std
    double train_mean = 0;
    std::optional<double> gen_ratio;
    std::size_t n = 0;
};

std::vector<ObjectiveAggregate> aggregate_by_objective(std::span<const TrialRow> rows);
/// Columns: objective,<oos>_mean,<oos>_std,train_mean,gen_ratio,n.
CsvTable aggregates_table(std::span<const ObjectiveAggregate> aggs, const std::string& oos_label);

/// Per-split means with baseline average and GT-Score delta in percentage points.
CsvTable periods_table(std::span<const TrialRow> rows);
/// Per-split, per-objective generalization ratios.
CsvTable split_genratio_table(std::span<const TrialRow> rows);
/// Mean oos return per strategy and objective.
CsvTable strategy_means_table(std::span<const TrialRow> rows);
/// Mean oos trade count per objective.
CsvTable trade_counts_table(std::span<const TrialRow> rows);

/// GT-Score against each baseline on paired oos returns.
std::vector<PairedComparison> compare_objectives(std::span<const TrialRow> rows);
CsvTable comparisons_table(std::span<const PairedComparison> comparisons);

/// Mean oos return per objective after extra per-side costs.
CsvTable cost_sensitivity_table(std::span<const TrialRow> rows, std::span<const double> bps_levels);

}  // namespace gtscore
