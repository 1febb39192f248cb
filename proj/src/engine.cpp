#include "gtscore/engine.hpp"

#include <algorithm>
#include <cmath>

#include "gtscore/errors.hpp"
#include "gtscore/tables.hpp"

namespace gtscore {

BacktestResult run_backtest(const PriceSeries& series, const SignalSeries& sig, DateWindow window,
                            double cost_bps_per_side) {
    if (sig.size() != series.size()) throw ParameterError("signal series not aligned with price series");
    if (!(cost_bps_per_side >= 0.0)) throw ParameterError("cost_bps_per_side must be >= 0");
    if (window.start >= window.end) throw DataError("empty backtest window");
    if (window.start < series.first_date() || window.end > series.end_date())
        throw DataError("backtest window " + format_date(window.start) + ".." + format_date(window.end) +
                        " outside series span");

    const auto& bars = series.bars();
    const auto by_date = [](const OhlcvBar& b, Date d) { return b.date < d; };
    const auto first = static_cast<std::size_t>(
        std::lower_bound(bars.begin(), bars.end(), window.start, by_date) - bars.begin());
    const auto stop = static_cast<std::size_t>(
        std::lower_bound(bars.begin(), bars.end(), window.end, by_date) - bars.begin());
    if (first >= stop) throw DataError("backtest window contains no bars");
    const std::size_t last = stop - 1;

    BacktestResult out;
    out.window = window;
    out.benchmark_total_return = bars[last].close / bars[first].close - 1.0;
    const double haircut = 2.0 * cost_bps_per_side / 1e4;

    bool in_position = false;
    TradeRecord open{};
    const auto close_trade = [&](std::size_t bar, double price) {
        open.exit_date = bars[bar].date;
        open.exit_price = price;
        open.gross_return = open.exit_price / open.entry_price - 1.0;
        open.net_return = open.gross_return - haircut;
        out.trades.push_back(open);
        in_position = false;
    };

    Position prev = Position::Flat;
    for (std::size_t i = first; i <= last; ++i) {
        const Position cur = sig[i];
        if (!in_position && prev == Position::Flat && cur == Position::Long && i + 1 < last) {
            open = TradeRecord{};
            open.entry_date = bars[i + 1].date;
            open.entry_price = bars[i + 1].open;
            in_position = true;
        } else if (in_position && prev == Position::Long && cur == Position::Flat && i < last) {
            close_trade(i + 1, bars[i + 1].open);
        }
        prev = cur;
    }
    if (in_position) close_trade(last, bars[last].close);

    double wealth = 1.0;
    for (const auto& t : out.trades) {
        out.trade_returns.push_back(t.net_return);
        wealth *= 1.0 + t.net_return;
        out.equity_points.push_back(wealth - 1.0);
    }
    out.n_trades = out.trades.size();
    out.total_return = out.equity_points.empty() ? 0.0 : out.equity_points.back();
    return out;
}

double compound_with_haircut(std::span<const double> returns, double bps_per_side) {
    const double haircut = 2.0 * bps_per_side / 1e4;
    double wealth = 1.0;
    for (double r : returns) wealth *= 1.0 + (r - haircut);
    return returns.empty() ? 0.0 : wealth - 1.0;
}

double apply_extra_costs(const BacktestResult& result, double extra_bps_per_side) {
    if (!(extra_bps_per_side >= 0.0)) throw ParameterError("extra_bps_per_side must be >= 0");
    return compound_with_haircut(result.trade_returns, extra_bps_per_side);
}

double benchmark_per_observation_mean(double benchmark_total_return, std::size_t n, BenchmarkConversion mode) {
    if (n == 0) throw ParameterError("benchmark conversion needs n >= 1");
    if (mode == BenchmarkConversion::Arithmetic) return benchmark_total_return / static_cast<double>(n);
    if (!(benchmark_total_return > -1.0)) throw ParameterError("benchmark total return must exceed -1");
    if (n == 1) return benchmark_total_return;
    return std::pow(1.0 + benchmark_total_return, 1.0 / static_cast<double>(n)) - 1.0;
}

std::string trades_to_csv(const BacktestResult& result) {
    CsvTable table({"entry_date", "exit_date", "entry_price", "exit_price", "gross_return", "net_return"});
    for (const auto& t : result.trades) {
        table.add_row({format_date(t.entry_date), format_date(t.exit_date), format_number(t.entry_price),
                       format_number(t.exit_price), format_number(t.gross_return), format_number(t.net_return)});
    }
    return table.to_string();
}

}  // namespace gtscore
