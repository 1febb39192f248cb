#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gtscore/data.hpp"
#include "gtscore/objective.hpp"
#include "gtscore/strategy.hpp"

namespace gtscore {

struct TrialSpec {
    std::string asset_id;
    StrategyKind strategy = StrategyKind::Rsi;
    ObjectiveKind objective = ObjectiveKind::GtScore;
    SplitSpec split{};
    int split_id = 0;
    std::uint64_t seed = 42;
    int budget = 25;
    double cost_bps = 0.0;
};

/// One evaluated candidate on the training window.
struct CandidateEval {
    StrategyParams params;
    double loss = 0;
    std::size_t train_trades = 0;
    bool usable = true;  // false when the window was too short for the indicator
};

struct TrialResult {
    TrialSpec spec;
    StrategyParams best_params;
    double best_loss = 0;
    double train_total_return = 0;
    double oos_total_return = 0;
    std::size_t train_n_trades = 0;
    std::size_t oos_n_trades = 0;
    int evaluated = 0;
    /// Every candidate was gated or unusable; kept in tables, excluded from aggregates.
    bool degenerate = false;
    std::vector<double> oos_trade_returns;
    std::vector<CandidateEval> candidates;
};

/// Seed of the candidate stream for a cell. Objective kind is deliberately
/// not mixed in, so every objective searches the same candidate pool:
///   s = seed; s = mix64(s ^ fnv1a64(asset_id)); s = mix64(s ^ (strategy_index + 1))
std::uint64_t sampling_seed(std::uint64_t seed, std::string_view asset_id, StrategyKind strategy);

/// Random search over `spec.budget` candidates on the train window, then a
/// single evaluation of the winner on the validation window.
TrialResult run_trial(const TrialSpec& spec, const PriceSeries& series, const ObjectiveConfig& cfg);

/// Same as run_trial for each objective in `objectives`, sharing candidate
/// backtests; spec.objective is ignored.
std::vector<TrialResult> run_cell(const TrialSpec& spec, std::span<const ObjectiveKind> objectives,
                                  const PriceSeries& series, const ObjectiveConfig& cfg);

struct StudyOptions {
    std::vector<StrategyKind> strategies{std::begin(kAllStrategies), std::end(kAllStrategies)};
    std::vector<ObjectiveKind> objectives{std::begin(kAllObjectives), std::end(kAllObjectives)};
    int budget = 25;
    double cost_bps = 0.0;
    int jobs = 1;
};

struct WalkforwardConfig {
    int train_years = 4;
    int val_years = 2;
    int step_years = 1;
    int embargo_days = 30;
    std::uint64_t seed = 42;
};

struct MonteCarloConfig {
    std::vector<std::uint64_t> seeds;  // defaults to 42..56
    double train_fraction = 0.7;
    int embargo_days = 30;

    MonteCarloConfig();
};

struct StudyResult {
    std::vector<TrialResult> trials;
    std::vector<std::string> warnings;
};

StudyResult run_walkforward(std::span<const PriceSeries> assets, const StudyOptions& opts,
                            const WalkforwardConfig& wf, const ObjectiveConfig& cfg);

StudyResult run_montecarlo(std::span<const PriceSeries> assets, const StudyOptions& opts,
                           const MonteCarloConfig& mc, const ObjectiveConfig& cfg);

}  // namespace gtscore
