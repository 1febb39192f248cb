#pragma once

#include <json.hpp>

#include "gtscore/data.hpp"
#include "gtscore/engine.hpp"
#include "gtscore/objective.hpp"
#include "gtscore/strategy.hpp"

namespace gtscore {

using Json = nlohmann::json;

/// {"kind": "RSI", "rsi": {"period", "oversold", "overbought"}} and the
/// matching "macd" {fast, slow, signal_p} / "bollinger" {window, k} forms.
Json to_json(const StrategyParams& p);
StrategyParams strategy_params_from_json(const Json& j);

Json to_json(const ObjectiveConfig& cfg);
/// Missing fields keep their defaults.
ObjectiveConfig objective_config_from_json(const Json& j);

Json to_json(const SyntheticSpec& spec);
SyntheticSpec synthetic_spec_from_json(const Json& j);

Json to_json(const BacktestResult& r);

}  // namespace gtscore
