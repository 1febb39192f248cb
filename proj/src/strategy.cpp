#include "gtscore/strategy.hpp"

#include "gtscore/errors.hpp"
#include "gtscore/indicators.hpp"

namespace gtscore {

std::string_view to_string(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::Rsi: return "RSI";
        case StrategyKind::Macd: return "MACD";
        case StrategyKind::Bollinger: return "BOLLINGER";
    }
    return "?";
}

StrategyKind parse_strategy_kind(std::string_view name) {
    for (auto k : kAllStrategies)
        if (to_string(k) == name) return k;
    throw ParameterError("unknown strategy '" + std::string(name) + "'");
}

void validate(const StrategyParams& params) {
    std::visit(
        [](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, RsiParams>) {
                if (p.period < 2 || !(p.oversold > 0) || !(p.oversold < p.overbought) || !(p.overbought < 100))
                    throw ParameterError("RSI params need period >= 2 and 0 < oversold < overbought < 100");
            } else if constexpr (std::is_same_v<T, MacdParams>) {
                if (p.fast < 2 || p.signal < 2 || p.fast >= p.slow)
                    throw ParameterError("MACD params need 2 <= fast < slow and signal >= 2");
            } else {
                if (p.window < 5 || !(p.k > 0)) throw ParameterError("BOLLINGER params need window >= 5 and k > 0");
            }
        },
        params.value);
}

StrategyParams sample_params(StrategyKind kind, Rng& rng) {
    switch (kind) {
        case StrategyKind::Rsi: {
            RsiParams p;
            p.period = static_cast<int>(rng.uniform_int(7, 28));
            do {
                p.oversold = rng.uniform_real(15.0, 40.0);
                p.overbought = rng.uniform_real(60.0, 85.0);
            } while (p.oversold >= p.overbought);
            return {p};
        }
        case StrategyKind::Macd: {
            MacdParams p;
            p.fast = static_cast<int>(rng.uniform_int(5, 20));
            p.slow = static_cast<int>(rng.uniform_int(21, 50));
            p.signal = static_cast<int>(rng.uniform_int(5, 15));
            return {p};
        }
        case StrategyKind::Bollinger: {
            BollingerParams p;
            p.window = static_cast<int>(rng.uniform_int(10, 50));
            p.k = rng.uniform_real(1.0, 3.0);
            return {p};
        }
    }
    throw ParameterError("unknown strategy kind");
}

namespace {

SignalSeries rsi_signals(const RsiParams& p, std::span<const double> closes) {
    const auto r = rsi(closes, p.period);
    SignalSeries out(closes.size(), Position::Flat);
    Position state = Position::Flat;
    for (std::size_t i = 1; i < closes.size(); ++i) {
        if (r[i] && r[i - 1]) {
            if (state == Position::Long) {
                if (*r[i] >= p.overbought) state = Position::Flat;
            } else if (*r[i - 1] < p.oversold && *r[i] >= p.oversold) {
                state = Position::Long;
            }
        }
        out[i] = state;
    }
    return out;
}

SignalSeries macd_signals(const MacdParams& p, std::span<const double> closes) {
    const auto m = macd(closes, p.fast, p.slow, p.signal);
    SignalSeries out(closes.size(), Position::Flat);
    Position state = Position::Flat;
    for (std::size_t i = 1; i < closes.size(); ++i) {
        if (m.signal_line[i] && m.signal_line[i - 1]) {
            const double prev = *m.macd_line[i - 1] - *m.signal_line[i - 1];
            const double cur = *m.macd_line[i] - *m.signal_line[i];
            if (state == Position::Flat && prev <= 0.0 && cur > 0.0) state = Position::Long;
            else if (state == Position::Long && prev >= 0.0 && cur < 0.0) state = Position::Flat;
        }
        out[i] = state;
    }
    return out;
}

SignalSeries bollinger_signals(const BollingerParams& p, std::span<const double> closes) {
    const auto b = bollinger(closes, p.window, p.k);
    SignalSeries out(closes.size(), Position::Flat);
    Position state = Position::Flat;
    for (std::size_t i = 0; i < closes.size(); ++i) {
        if (b.middle[i]) {
            if (state == Position::Flat && closes[i] < *b.lower[i]) state = Position::Long;
            else if (state == Position::Long && closes[i] >= *b.middle[i]) state = Position::Flat;
        }
        out[i] = state;
    }
    return out;
}

}  // namespace

SignalSeries signals(const StrategyParams& params, std::span<const double> closes) {
    validate(params);
    return std::visit(
        [&](const auto& p) -> SignalSeries {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, RsiParams>) return rsi_signals(p, closes);
            else if constexpr (std::is_same_v<T, MacdParams>) return macd_signals(p, closes);
            else return bollinger_signals(p, closes);
        },
        params.value);
}

SignalSeries signals(const StrategyParams& params, const PriceSeries& series) {
    const auto closes = series.closes();
    return signals(params, closes);
}

}  // namespace gtscore
