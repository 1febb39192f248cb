#pragma once

#include <span>
#include <vector>

#include "gtscore/data.hpp"
#include "gtscore/strategy.hpp"

namespace gtscore {

struct TradeRecord {
    Date entry_date, exit_date;
    double entry_price = 0, exit_price = 0;
    double gross_return = 0;
    double net_return = 0;
};

struct BacktestResult {
    std::vector<TradeRecord> trades;
    std::vector<double> trade_returns;  // net
    std::vector<double> equity_points;  // compounded return after each trade
    double total_return = 0;
    double benchmark_total_return = 0;
    std::size_t n_trades = 0;
    DateWindow window{};
};

/// Executes `sig` inside `window` with next-bar-open fills.
///
/// A FLAT->LONG transition at bar i fills at bar i+1's open, provided i+1 is
/// not the window's last bar (a trade must span at least two dates). A
/// LONG->FLAT transition at bar j exits at bar j+1's open. Positions still
/// open at the last window bar are closed at its close. The signal state
/// before the window's first bar is treated as FLAT.
BacktestResult run_backtest(const PriceSeries& series, const SignalSeries& sig, DateWindow window,
                            double cost_bps_per_side = 0.0);

/// Compounded total of `returns`, each reduced by 2 * bps / 1e4.
double compound_with_haircut(std::span<const double> returns, double bps_per_side);

/// Recomputes the total return after an additional per-side cost.
double apply_extra_costs(const BacktestResult& result, double extra_bps_per_side);

enum class BenchmarkConversion { Geometric, Arithmetic };

/// Per-observation buy-and-hold mean over n observations.
double benchmark_per_observation_mean(double benchmark_total_return, std::size_t n,
                                      BenchmarkConversion mode = BenchmarkConversion::Geometric);

/// Trade list as CSV (entry_date,exit_date,entry_price,exit_price,gross_return,net_return).
std::string trades_to_csv(const BacktestResult& result);

}  // namespace gtscore
