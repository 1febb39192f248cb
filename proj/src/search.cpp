#include "gtscore/search.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "gtscore/engine.hpp"
#include "gtscore/errors.hpp"

namespace gtscore {

std::uint64_t sampling_seed(std::uint64_t seed, std::string_view asset_id, StrategyKind strategy) {
    std::uint64_t s = seed;
    s = mix64(s ^ fnv1a64(asset_id));
    s = mix64(s ^ (static_cast<std::uint64_t>(strategy) + 1));
    return s;
}

namespace {

/// Signals computed on bars before `end` only, padded FLAT to the full length.
SignalSeries signals_before(const StrategyParams& params, const PriceSeries& series, Date end) {
    const auto prefix = series.prefix_before(end);
    auto sig = signals(params, prefix);
    sig.resize(series.size(), Position::Flat);
    return sig;
}

struct Evaluated {
    CandidateEval eval;
    BacktestResult backtest;
};

}  // namespace

std::vector<TrialResult> run_cell(const TrialSpec& spec, std::span<const ObjectiveKind> objectives,
                                  const PriceSeries& series, const ObjectiveConfig& cfg) {
    if (spec.budget < 1) throw ParameterError("trial budget must be >= 1");
    validate(cfg);

    Rng rng(sampling_seed(spec.seed, spec.asset_id, spec.strategy));
    std::vector<Evaluated> pool;
    pool.reserve(static_cast<std::size_t>(spec.budget));
    for (int c = 0; c < spec.budget; ++c) {
        Evaluated e;
        e.eval.params = sample_params(spec.strategy, rng);
        try {
            const auto sig = signals_before(e.eval.params, series, spec.split.train_end);
            e.backtest = run_backtest(series, sig, spec.split.train(), spec.cost_bps);
            e.eval.train_trades = e.backtest.n_trades;
        } catch (const ParameterError&) {
            e.eval.usable = false;
        }
        pool.push_back(std::move(e));
    }

    std::vector<TrialResult> out;
    for (ObjectiveKind objective : objectives) {
        TrialResult r;
        r.spec = spec;
        r.spec.objective = objective;
        r.evaluated = spec.budget;
        std::size_t best = 0;
        bool any_gated_in = false;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            CandidateEval ce = pool[i].eval;
            if (ce.usable) {
                ce.loss = evaluate_loss(objective, pool[i].backtest, cfg);
                any_gated_in |= ce.train_trades >= static_cast<std::size_t>(cfg.n_min);
            } else {
                ce.loss = cfg.below_min_penalty;
            }
            if (i == 0 || ce.loss < r.candidates[best].loss) best = i;
            r.candidates.push_back(std::move(ce));
        }
        r.best_params = r.candidates[best].params;
        r.best_loss = r.candidates[best].loss;
        r.degenerate = !any_gated_in;
        if (pool[best].eval.usable) {
            r.train_total_return = pool[best].backtest.total_return;
            r.train_n_trades = pool[best].backtest.n_trades;
        }
        if (!r.degenerate) {
            const auto sig = signals_before(r.best_params, series, spec.split.val_end);
            const auto oos = run_backtest(series, sig, spec.split.validation(), spec.cost_bps);
            r.oos_total_return = oos.total_return;
            r.oos_n_trades = oos.n_trades;
            r.oos_trade_returns = oos.trade_returns;
        }
        out.push_back(std::move(r));
    }
    return out;
}

TrialResult run_trial(const TrialSpec& spec, const PriceSeries& series, const ObjectiveConfig& cfg) {
    const ObjectiveKind kinds[] = {spec.objective};
    return std::move(run_cell(spec, kinds, series, cfg).front());
}

MonteCarloConfig::MonteCarloConfig() {
    for (std::uint64_t s = 42; s <= 56; ++s) seeds.push_back(s);
}

namespace {

struct Cell {
    const PriceSeries* series;
    TrialSpec spec;
};

std::vector<TrialResult> run_cells(const std::vector<Cell>& cells, const StudyOptions& opts,
                                   const ObjectiveConfig& cfg) {
    std::vector<std::vector<TrialResult>> slots(cells.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            try {
                slots[i] = run_cell(cells[i].spec, opts.objectives, *cells[i].series, cfg);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const int jobs = std::max(1, opts.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> threads;
        for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<TrialResult> trials;
    trials.reserve(cells.size() * opts.objectives.size());
    for (auto& slot : slots)
        for (auto& r : slot) trials.push_back(std::move(r));
    return trials;
}

}  // namespace

StudyResult run_walkforward(std::span<const PriceSeries> assets, const StudyOptions& opts,
                            const WalkforwardConfig& wf, const ObjectiveConfig& cfg) {
    StudyResult result;
    std::vector<Cell> cells;
    for (const auto& series : assets) {
        std::vector<SplitSpec> splits;
        try {
            splits = make_walkforward_splits(series, wf.train_years, wf.val_years, wf.step_years, wf.embargo_days);
        } catch (const DataError& e) {
            result.warnings.push_back("skipping " + series.asset_id() + ": " + e.what());
            continue;
        }
        for (StrategyKind strategy : opts.strategies) {
            for (std::size_t s = 0; s < splits.size(); ++s) {
                TrialSpec spec;
                spec.asset_id = series.asset_id();
                spec.strategy = strategy;
                spec.split = splits[s];
                spec.split_id = static_cast<int>(s);
                spec.seed = wf.seed;
                spec.budget = opts.budget;
                spec.cost_bps = opts.cost_bps;
                cells.push_back({&series, spec});
            }
        }
    }
    result.trials = run_cells(cells, opts, cfg);
    return result;
}

StudyResult run_montecarlo(std::span<const PriceSeries> assets, const StudyOptions& opts,
                           const MonteCarloConfig& mc, const ObjectiveConfig& cfg) {
    if (mc.seeds.empty()) throw ParameterError("monte carlo study needs at least one seed");
    StudyResult result;
    std::vector<Cell> cells;
    for (const auto& series : assets) {
        SplitSpec split;
        try {
            split = make_chrono_split(series, mc.train_fraction, mc.embargo_days);
        } catch (const DataError& e) {
            result.warnings.push_back("skipping " + series.asset_id() + ": " + e.what());
            continue;
        }
        for (StrategyKind strategy : opts.strategies) {
            for (std::uint64_t seed : mc.seeds) {
                TrialSpec spec;
                spec.asset_id = series.asset_id();
                spec.strategy = strategy;
                spec.split = split;
                spec.seed = seed;
                spec.budget = opts.budget;
                spec.cost_bps = opts.cost_bps;
                cells.push_back({&series, spec});
            }
        }
    }
    result.trials = run_cells(cells, opts, cfg);
    return result;
}

}  // namespace gtscore
