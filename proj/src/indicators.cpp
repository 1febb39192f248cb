#include "gtscore/indicators.hpp"

#include <cmath>
#include <string>

#include "gtscore/errors.hpp"

namespace gtscore {

IndicatorSeries rsi(std::span<const double> closes, int period) {
    if (period < 2) throw ParameterError("rsi period must be >= 2");
    const std::size_t n = closes.size();
    const auto p = static_cast<std::size_t>(period);
    if (n <= p) throw ParameterError("rsi needs more than " + std::to_string(period) + " closes");

    IndicatorSeries out(n);
    const auto value = [](double gain, double loss) {
        if (loss == 0.0) return 100.0;
        if (gain == 0.0) return 0.0;
        return 100.0 - 100.0 / (1.0 + gain / loss);
    };

    double avg_gain = 0.0, avg_loss = 0.0;
    for (std::size_t i = 1; i <= p; ++i) {
        const double d = closes[i] - closes[i - 1];
        if (d > 0) avg_gain += d;
        else avg_loss -= d;
    }
    avg_gain /= period;
    avg_loss /= period;
    out[p] = value(avg_gain, avg_loss);

    for (std::size_t i = p + 1; i < n; ++i) {
        const double d = closes[i] - closes[i - 1];
        const double gain = d > 0 ? d : 0.0;
        const double loss = d < 0 ? -d : 0.0;
        avg_gain = (avg_gain * (period - 1) + gain) / period;
        avg_loss = (avg_loss * (period - 1) + loss) / period;
        out[i] = value(avg_gain, avg_loss);
    }
    return out;
}

IndicatorSeries ema(std::span<const double> values, int period) {
    if (period < 1) throw ParameterError("ema period must be >= 1");
    const auto p = static_cast<std::size_t>(period);
    IndicatorSeries out(values.size());
    if (values.size() < p) return out;
    double seed = 0.0;
    for (std::size_t i = 0; i < p; ++i) seed += values[i];
    double level = seed / period;
    out[p - 1] = level;
    const double alpha = 2.0 / (period + 1.0);
    for (std::size_t i = p; i < values.size(); ++i) {
        level = values[i] * alpha + level * (1.0 - alpha);
        out[i] = level;
    }
    return out;
}

MacdSeries macd(std::span<const double> closes, int fast, int slow, int signal_period) {
    if (fast < 1 || signal_period < 1) throw ParameterError("macd periods must be >= 1");
    if (fast >= slow) throw ParameterError("macd requires fast < slow");
    const std::size_t n = closes.size();
    if (n <= static_cast<std::size_t>(slow + signal_period))
        throw ParameterError("macd needs more than slow + signal closes");

    const auto fast_ema = ema(closes, fast);
    const auto slow_ema = ema(closes, slow);
    const std::size_t first = static_cast<std::size_t>(slow) - 1;

    MacdSeries out{IndicatorSeries(n), IndicatorSeries(n), IndicatorSeries(n)};
    std::vector<double> line;
    line.reserve(n - first);
    for (std::size_t i = first; i < n; ++i) {
        const double v = *fast_ema[i] - *slow_ema[i];
        out.macd_line[i] = v;
        line.push_back(v);
    }
    const auto sig = ema(line, signal_period);
    for (std::size_t j = 0; j < sig.size(); ++j) {
        if (!sig[j]) continue;
        out.signal_line[first + j] = sig[j];
        out.histogram[first + j] = line[j] - *sig[j];
    }
    return out;
}

BollingerSeries bollinger(std::span<const double> closes, int window, double k) {
    if (window < 2) throw ParameterError("bollinger window must be >= 2");
    if (!(k > 0.0)) throw ParameterError("bollinger k must be > 0");
    const std::size_t n = closes.size();
    const auto w = static_cast<std::size_t>(window);
    if (n < w) throw ParameterError("bollinger needs at least window closes");

    BollingerSeries out{IndicatorSeries(n), IndicatorSeries(n), IndicatorSeries(n)};
    for (std::size_t i = w - 1; i < n; ++i) {
        const auto slice = closes.subspan(i + 1 - w, w);
        double mean = 0.0;
        for (double c : slice) mean += c;
        mean /= window;
        double ss = 0.0;
        for (double c : slice) ss += (c - mean) * (c - mean);
        const double offset = k * std::sqrt(ss / window);
        out.middle[i] = mean;
        out.upper[i] = mean + offset;
        out.lower[i] = mean - offset;
    }
    return out;
}

}  // namespace gtscore
