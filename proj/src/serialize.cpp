#include "gtscore/serialize.hpp"

#include "gtscore/errors.hpp"

namespace gtscore {

Json to_json(const StrategyParams& p) {
    Json j;
    j["kind"] = std::string(to_string(p.kind()));
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, RsiParams>) {
                j["rsi"] = {{"period", v.period}, {"oversold", v.oversold}, {"overbought", v.overbought}};
            } else if constexpr (std::is_same_v<T, MacdParams>) {
                j["macd"] = {{"fast", v.fast}, {"slow", v.slow}, {"signal_p", v.signal}};
            } else {
                j["bollinger"] = {{"window", v.window}, {"k", v.k}};
            }
        },
        p.value);
    return j;
}

StrategyParams strategy_params_from_json(const Json& j) {
    StrategyParams p;
    try {
        switch (parse_strategy_kind(j.at("kind").get<std::string>())) {
            case StrategyKind::Rsi: {
                const auto& v = j.at("rsi");
                p.value = RsiParams{v.at("period").get<int>(), v.at("oversold").get<double>(),
                                    v.at("overbought").get<double>()};
                break;
            }
            case StrategyKind::Macd: {
                const auto& v = j.at("macd");
                p.value = MacdParams{v.at("fast").get<int>(), v.at("slow").get<int>(), v.at("signal_p").get<int>()};
                break;
            }
            case StrategyKind::Bollinger: {
                const auto& v = j.at("bollinger");
                p.value = BollingerParams{v.at("window").get<int>(), v.at("k").get<double>()};
                break;
            }
        }
    } catch (const Json::exception& e) {
        throw ParameterError(std::string("invalid strategy params json: ") + e.what());
    }
    validate(p);
    return p;
}

Json to_json(const ObjectiveConfig& cfg) {
    const auto& s = cfg.stabilization;
    return {
        {"eps", cfg.eps},
        {"n_min", cfg.n_min},
        {"below_min_penalty", cfg.below_min_penalty},
        {"periodization", cfg.periodization == Periodization::FixedTrades ? "FIXED_TRADES" : "STABILIZED"},
        {"stabilization",
         {{"threshold", s.threshold},
          {"window", s.window},
          {"n_range", {s.n_lo, s.n_hi}},
          {"fallback", s.fallback},
          {"variance_floor", s.variance_floor}}},
        {"benchmark_conversion", cfg.benchmark_conversion == BenchmarkConversion::Geometric ? "GEOMETRIC" : "ARITHMETIC"},
        {"r2_target", cfg.r2_target == R2Target::RawEquity ? "RAW_EQUITY" : "LOG_EQUITY"},
    };
}

ObjectiveConfig objective_config_from_json(const Json& j) {
    ObjectiveConfig cfg;
    try {
        cfg.eps = j.value("eps", cfg.eps);
        cfg.n_min = j.value("n_min", cfg.n_min);
        cfg.below_min_penalty = j.value("below_min_penalty", cfg.below_min_penalty);
        if (j.contains("periodization")) {
            const auto v = j.at("periodization").get<std::string>();
            if (v == "FIXED_TRADES") cfg.periodization = Periodization::FixedTrades;
            else if (v == "STABILIZED") cfg.periodization = Periodization::Stabilized;
            else throw ParameterError("unknown periodization '" + v + "'");
        }
        if (j.contains("stabilization")) {
            const auto& sj = j.at("stabilization");
            auto& s = cfg.stabilization;
            s.threshold = sj.value("threshold", s.threshold);
            s.window = sj.value("window", s.window);
            if (sj.contains("n_range")) {
                s.n_lo = sj.at("n_range").at(0).get<int>();
                s.n_hi = sj.at("n_range").at(1).get<int>();
            }
            s.fallback = sj.value("fallback", s.fallback);
            s.variance_floor = sj.value("variance_floor", s.variance_floor);
        }
        if (j.contains("benchmark_conversion")) {
            const auto v = j.at("benchmark_conversion").get<std::string>();
            if (v == "GEOMETRIC") cfg.benchmark_conversion = BenchmarkConversion::Geometric;
            else if (v == "ARITHMETIC") cfg.benchmark_conversion = BenchmarkConversion::Arithmetic;
            else throw ParameterError("unknown benchmark_conversion '" + v + "'");
        }
        if (j.contains("r2_target")) {
            const auto v = j.at("r2_target").get<std::string>();
            if (v == "RAW_EQUITY") cfg.r2_target = R2Target::RawEquity;
            else if (v == "LOG_EQUITY") cfg.r2_target = R2Target::LogEquity;
            else throw ParameterError("unknown r2_target '" + v + "'");
        }
    } catch (const Json::exception& e) {
        throw ParameterError(std::string("invalid objective config: ") + e.what());
    }
    validate(cfg);
    return cfg;
}

Json to_json(const SyntheticSpec& spec) {
    Json regimes = Json::array();
    for (const auto& r : spec.regimes)
        regimes.push_back({{"length_days", r.length_days}, {"drift_per_day", r.drift_per_day}, {"vol_per_day", r.vol_per_day}});
    return {{"asset_id", spec.asset_id},       {"n_days", spec.n_days}, {"initial_price", spec.initial_price},
            {"regimes", regimes},              {"seed", spec.seed},     {"start_date", format_date(spec.start_date)}};
}

SyntheticSpec synthetic_spec_from_json(const Json& j) {
    SyntheticSpec spec;
    try {
        spec.asset_id = j.value("asset_id", spec.asset_id);
        spec.n_days = j.at("n_days").get<int>();
        spec.initial_price = j.value("initial_price", spec.initial_price);
        spec.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("start_date")) spec.start_date = parse_date(j.at("start_date").get<std::string>());
        for (const auto& r : j.at("regimes"))
            spec.regimes.push_back(
                {r.at("length_days").get<int>(), r.at("drift_per_day").get<double>(), r.at("vol_per_day").get<double>()});
    } catch (const Json::exception& e) {
        throw ParameterError(std::string("invalid synthetic spec: ") + e.what());
    }
    return spec;
}

Json to_json(const BacktestResult& r) {
    Json trades = Json::array();
    for (const auto& t : r.trades) {
        trades.push_back({{"entry_date", format_date(t.entry_date)},
                          {"exit_date", format_date(t.exit_date)},
                          {"entry_price", t.entry_price},
                          {"exit_price", t.exit_price},
                          {"gross_return", t.gross_return},
                          {"net_return", t.net_return}});
    }
    return {{"trades", trades},
            {"trade_returns", r.trade_returns},
            {"equity_points", r.equity_points},
            {"total_return", r.total_return},
            {"benchmark_total_return", r.benchmark_total_return},
            {"n_trades", r.n_trades},
            {"window", {format_date(r.window.start), format_date(r.window.end)}}};
}

}  // namespace gtscore
