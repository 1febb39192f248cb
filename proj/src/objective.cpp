#include "gtscore/objective.hpp"

#include <cmath>

#include "gtscore/errors.hpp"

namespace gtscore {

std::string_view to_string(ObjectiveKind kind) {
    switch (kind) {
        case ObjectiveKind::GtScore: return "GT_SCORE";
        case ObjectiveKind::Sharpe: return "SHARPE";
        case ObjectiveKind::Sortino: return "SORTINO";
        case ObjectiveKind::Simple: return "SIMPLE";
    }
    return "?";
}

ObjectiveKind parse_objective_kind(std::string_view name) {
    for (auto k : kAllObjectives)
        if (to_string(k) == name) return k;
    throw ParameterError("unknown objective '" + std::string(name) + "'");
}

void validate(const ObjectiveConfig& cfg) {
    if (!(cfg.eps > 0.0)) throw ParameterError("objective eps must be > 0");
    if (cfg.n_min < 1) throw ParameterError("objective n_min must be >= 1");
    if (!(cfg.below_min_penalty > 200.0)) throw ParameterError("below_min_penalty must exceed 200");
    const auto& s = cfg.stabilization;
    if (!(s.threshold > 0.0) || s.window < 2 || s.n_lo < 2 || s.n_hi < s.n_lo || s.fallback < 1 ||
        !(s.variance_floor > 0.0))
        throw ParameterError("invalid stabilization settings");
}

double gt_score_loss(const MetricContext& ctx, const ObjectiveConfig& cfg) {
    if (ctx.n < static_cast<std::size_t>(cfg.n_min)) return cfg.below_min_penalty;
    const double z = ctx.z;
    if (z <= 0.0) return 100.0 + 100.0 * (1.0 - std::exp(-std::abs(z - 1.0)));
    if (z <= 1.0) return 100.0 * (1.0 - std::exp(-std::abs(z - 1.0)));
    return -(ctx.mu * std::log(z) * ctx.r2) / (ctx.sigma_d + cfg.eps);
}

double baseline_loss(ObjectiveKind kind, const MetricContext& ctx, double total_return, const ObjectiveConfig& cfg) {
    if (kind == ObjectiveKind::GtScore) throw ParameterError("baseline_loss called with GT_SCORE");
    if (ctx.n < static_cast<std::size_t>(cfg.n_min)) return cfg.below_min_penalty;
    switch (kind) {
        case ObjectiveKind::Simple: return -total_return;
        case ObjectiveKind::Sharpe: return -sharpe(ctx.mu, ctx.sigma, cfg.eps);
        case ObjectiveKind::Sortino: return -sortino(ctx.mu, ctx.sigma_d, cfg.eps);
        default: break;
    }
    throw ParameterError("unknown objective kind");
}

std::vector<double> period_returns(std::span<const Date> equity_dates, std::span<const double> equity_points,
                                   DateWindow window, int n) {
    if (equity_dates.size() != equity_points.size()) throw ParameterError("equity dates/points length mismatch");
    if (n < 1) throw ParameterError("period count must be >= 1");
    const long span = (window.end - window.start).count();
    if (span < 1) throw ParameterError("empty equity window");

    // Equity at the end of each period: last point whose date falls at or before it.
    std::vector<double> level(static_cast<std::size_t>(n), 0.0);
    std::vector<bool> touched(static_cast<std::size_t>(n), false);
    for (std::size_t i = 0; i < equity_dates.size(); ++i) {
        long offset = (equity_dates[i] - window.start).count();
        offset = std::clamp(offset, 0L, span - 1);
        const auto k = static_cast<std::size_t>(offset * n / span);
        level[k] = equity_points[i];
        touched[k] = true;
    }
    std::vector<double> out(static_cast<std::size_t>(n));
    double prev = 0.0;
    for (std::size_t k = 0; k < out.size(); ++k) {
        const double cur = touched[k] ? level[k] : prev;
        out[k] = (1.0 + cur) / (1.0 + prev) - 1.0;
        prev = cur;
    }
    return out;
}

namespace {

double sample_variance(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return ss / static_cast<double>(xs.size() - 1);
}

}  // namespace

PeriodCount stabilized_period_count(std::span<const Date> equity_dates, std::span<const double> equity_points,
                                    DateWindow window, const ObjectiveConfig& cfg) {
    const auto& s = cfg.stabilization;
    PeriodCount out{s.fallback, false, false};
    if ((window.end - window.start).count() < s.n_lo) {
        out.span_too_short = true;
        return out;
    }
    std::vector<double> variances;
    for (int n = s.n_lo; n <= s.n_hi; ++n) {
        variances.push_back(sample_variance(period_returns(equity_dates, equity_points, window, n)));
        const std::size_t m = variances.size();
        if (m < static_cast<std::size_t>(s.window)) continue;
        bool stable = true;
        for (std::size_t j = m - static_cast<std::size_t>(s.window) + 1; j < m && stable; ++j) {
            const double base = std::max(std::abs(variances[j - 1]), s.variance_floor);
            stable = std::abs(variances[j] - variances[j - 1]) / base < s.threshold;
        }
        if (stable) {
            out.n = n;
            out.plateau = true;
            return out;
        }
    }
    return out;
}

Observations observations(const BacktestResult& result, const ObjectiveConfig& cfg) {
    if (cfg.periodization == Periodization::FixedTrades) return {result.trade_returns, result.equity_points};

    std::vector<Date> dates;
    dates.reserve(result.trades.size());
    for (const auto& t : result.trades) dates.push_back(t.exit_date);
    const auto count = stabilized_period_count(dates, result.equity_points, result.window, cfg);
    Observations obs;
    obs.returns = period_returns(dates, result.equity_points, result.window, count.n);
    double wealth = 1.0;
    for (double r : obs.returns) {
        wealth *= 1.0 + r;
        obs.equity.push_back(wealth - 1.0);
    }
    return obs;
}

MetricContext build_metric_context(const BacktestResult& result, const ObjectiveConfig& cfg) {
    if (result.n_trades == 0) throw ParameterError("metric context needs at least one trade");
    const auto obs = observations(result, cfg);
    MetricContext ctx;
    ctx.n = obs.returns.size();
    const auto ms = mean_and_std(obs.returns);
    ctx.mu = ms.mean;
    ctx.sigma = ms.std;
    ctx.sigma_d = downside_deviation(obs.returns, 0.0);
    ctx.mu_m = benchmark_per_observation_mean(result.benchmark_total_return, ctx.n, cfg.benchmark_conversion);
    ctx.z = z_score(ctx.mu, ctx.mu_m, ctx.sigma, ctx.n, cfg.eps);
    if (obs.equity.size() >= 2) {
        if (cfg.r2_target == R2Target::LogEquity) {
            std::vector<double> logs;
            logs.reserve(obs.equity.size());
            for (double e : obs.equity) logs.push_back(std::log1p(e));
            ctx.r2 = r_squared_consistency(logs);
        } else {
            ctx.r2 = r_squared_consistency(obs.equity);
        }
    }
    return ctx;
}

double evaluate_loss(ObjectiveKind kind, const BacktestResult& result, const ObjectiveConfig& cfg) {
    if (result.n_trades < static_cast<std::size_t>(cfg.n_min)) return cfg.below_min_penalty;
    const auto ctx = build_metric_context(result, cfg);
    // The trade-count gate above is the only gate; period counts are not re-gated.
    ObjectiveConfig ungated = cfg;
    ungated.n_min = 1;
    if (kind == ObjectiveKind::GtScore) return gt_score_loss(ctx, ungated);
    return baseline_loss(kind, ctx, result.total_return, ungated);
}

}  // namespace gtscore
