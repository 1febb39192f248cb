#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gtscore/errors.hpp"
#include "gtscore/serialize.hpp"
#include "gtscore/strategy.hpp"
#include "test_support.hpp"

using namespace gtscore;

TEST_CASE("sample_params ranges and determinism") {
    Rng rng(2024);
    double k_min = 10, k_max = 0;
    int w_min = 100, w_max = 0;
    for (int i = 0; i < 10000; ++i) {
        const auto r = std::get<RsiParams>(sample_params(StrategyKind::Rsi, rng).value);
        CHECK(r.oversold < r.overbought);
        CHECK(r.period >= 7);
        CHECK(r.period <= 28);
        const auto b = std::get<BollingerParams>(sample_params(StrategyKind::Bollinger, rng).value);
        k_min = std::min(k_min, b.k);
        k_max = std::max(k_max, b.k);
        w_min = std::min(w_min, b.window);
        w_max = std::max(w_max, b.window);
        const auto m = std::get<MacdParams>(sample_params(StrategyKind::Macd, rng).value);
        CHECK(m.fast < m.slow);
        CHECK(m.signal >= 5);
        CHECK(m.signal <= 15);
    }
    CHECK(k_min >= 1.0);
    CHECK(k_max <= 3.0);
    CHECK(w_min == 10);
    CHECK(w_max == 50);

    Rng a(5), b(5);
    for (int i = 0; i < 50; ++i) {
        for (auto kind : kAllStrategies) CHECK(sample_params(kind, a) == sample_params(kind, b));
    }
}

TEST_CASE("params validation and json") {
    CHECK_THROWS_AS(validate(StrategyParams{RsiParams{14, 70, 30}}), ParameterError);
    CHECK_THROWS_AS(validate(StrategyParams{MacdParams{26, 12, 9}}), ParameterError);
    CHECK_THROWS_AS(validate(StrategyParams{BollingerParams{4, 2}}), ParameterError);
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
        for (auto kind : kAllStrategies) {
            const auto p = sample_params(kind, rng);
            CHECK(strategy_params_from_json(Json::parse(to_json(p).dump())) == p);
        }
    }
    CHECK(to_json(StrategyParams{MacdParams{12, 26, 9}}).dump() ==
          R"({"kind":"MACD","macd":{"fast":12,"signal_p":9,"slow":26}})");
}

TEST_CASE("constant prices never trade") {
    const std::vector<double> flat(120, 50.0);
    for (const StrategyParams& p :
         {StrategyParams{RsiParams{}}, StrategyParams{MacdParams{}}, StrategyParams{BollingerParams{}}}) {
        for (auto s : signals(p, flat)) CHECK(s == Position::Flat);
    }
}

TEST_CASE("crafted MACD cross gives one long run") {
    // EMA(2) - EMA(3) against EMA(2) of that line: histogram is 0 at bar 3,
    // +1/9 at bar 4, +7/54 at bar 5, -19/108 at bar 6.
    const std::vector<double> closes{10, 10, 10, 10, 12, 14, 11, 8};
    const auto sig = signals(StrategyParams{MacdParams{2, 3, 2}}, closes);
    const SignalSeries expected{Position::Flat, Position::Flat, Position::Flat, Position::Flat,
                                Position::Long, Position::Long, Position::Flat, Position::Flat};
    CHECK(sig == expected);
}

TEST_CASE("bollinger entry below lower band, exit at middle") {
    std::vector<double> closes(25, 100.0);
    for (std::size_t i = 0; i < closes.size(); ++i) closes[i] += (i % 2 ? 0.5 : -0.5);
    closes.push_back(95.0);   // below lower band -> LONG
    closes.push_back(97.0);   // still below middle
    closes.push_back(101.0);  // above middle -> FLAT
    const auto sig = signals(StrategyParams{BollingerParams{10, 2.0}}, closes);
    CHECK(sig[25] == Position::Long);
    CHECK(sig[26] == Position::Long);
    CHECK(sig[27] == Position::Flat);
}

TEST_CASE("signals: no lookahead and flat during warm-up") {
    Rng rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        const auto closes = testing::random_walk(300, rng, 100.0, 0.02);
        for (auto kind : kAllStrategies) {
            const auto params = sample_params(kind, rng);
            const auto full = signals(params, closes);
            for (std::size_t k : {120u, 200u, 299u}) {
                const std::vector<double> prefix(closes.begin(), closes.begin() + static_cast<long>(k));
                const auto part = signals(params, prefix);
                CHECK(std::equal(part.begin(), part.end(), full.begin()));
            }
            if (kind == StrategyKind::Bollinger) {
                const auto w = static_cast<std::size_t>(std::get<BollingerParams>(params.value).window);
                for (std::size_t i = 0; i + 1 < w; ++i) CHECK(full[i] == Position::Flat);
            }
        }
    }
}

TEST_CASE("signals reject short series") {
    CHECK_THROWS_AS(signals(StrategyParams{MacdParams{12, 26, 9}}, std::vector<double>(30, 1.0)), ParameterError);
}
