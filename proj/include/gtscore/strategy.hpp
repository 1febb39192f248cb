#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gtscore/data.hpp"
#include "gtscore/rng.hpp"

namespace gtscore {

enum class StrategyKind { Rsi, Macd, Bollinger };

inline constexpr StrategyKind kAllStrategies[] = {StrategyKind::Rsi, StrategyKind::Macd, StrategyKind::Bollinger};

std::string_view to_string(StrategyKind kind);
StrategyKind parse_strategy_kind(std::string_view name);

struct RsiParams {
    int period = 14;
    double oversold = 30;
    double overbought = 70;
    friend bool operator==(const RsiParams&, const RsiParams&) = default;
};

struct MacdParams {
    int fast = 12;
    int slow = 26;
    int signal = 9;
    friend bool operator==(const MacdParams&, const MacdParams&) = default;
};

struct BollingerParams {
    int window = 20;
    double k = 2.0;
    friend bool operator==(const BollingerParams&, const BollingerParams&) = default;
};

/// One parameterization of a strategy family.
struct StrategyParams {
    std::variant<RsiParams, MacdParams, BollingerParams> value;

    StrategyKind kind() const { return static_cast<StrategyKind>(value.index()); }
    friend bool operator==(const StrategyParams&, const StrategyParams&) = default;
};

/// Throws ParameterError when a family's invariants are violated.
void validate(const StrategyParams& params);

/// Uniform draw from the family's search box.
///   RSI        period [7, 28], oversold [15, 40], overbought [60, 85]
///   MACD       fast [5, 20], slow [21, 50], signal [5, 15]
///   BOLLINGER  window [10, 50], k [1.0, 3.0]
StrategyParams sample_params(StrategyKind kind, Rng& rng);

enum class Position : std::uint8_t { Flat, Long };
using SignalSeries = std::vector<Position>;

/// Long-only position state per bar, computed from closes with no lookahead.
SignalSeries signals(const StrategyParams& params, const PriceSeries& series);
SignalSeries signals(const StrategyParams& params, std::span<const double> closes);

}  // namespace gtscore
