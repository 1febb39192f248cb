#pragma once

#include <optional>
#include <span>
#include <vector>

namespace gtscore {

/// Indicator values aligned 1:1 with the input closes; empty during warm-up.
using IndicatorSeries = std::vector<std::optional<double>>;

/// Wilder RSI. The first `period` outputs are absent.
IndicatorSeries rsi(std::span<const double> closes, int period);

struct MacdSeries {
    IndicatorSeries macd_line;
    IndicatorSeries signal_line;
    IndicatorSeries histogram;
};

/// SMA-seeded EMA with multiplier 2/(n+1); first n-1 outputs absent.
IndicatorSeries ema(std::span<const double> values, int period);

MacdSeries macd(std::span<const double> closes, int fast, int slow, int signal_period);

struct BollingerSeries {
    IndicatorSeries middle;
    IndicatorSeries upper;
    IndicatorSeries lower;
};

/// SMA middle band, offset k times the population standard deviation.
BollingerSeries bollinger(std::span<const double> closes, int window, double k);

}  // namespace gtscore
