#pragma once

#include <string_view>
#include <vector>

#include "gtscore/engine.hpp"
#include "gtscore/metrics.hpp"

namespace gtscore {

enum class ObjectiveKind { GtScore, Sharpe, Sortino, Simple };

inline constexpr ObjectiveKind kAllObjectives[] = {ObjectiveKind::GtScore, ObjectiveKind::Sharpe,
                                                   ObjectiveKind::Sortino, ObjectiveKind::Simple};

std::string_view to_string(ObjectiveKind kind);
ObjectiveKind parse_objective_kind(std::string_view name);

enum class Periodization { FixedTrades, Stabilized };
enum class R2Target { RawEquity, LogEquity };

struct StabilizationConfig {
    double threshold = 0.01;  // relative variance change
    int window = 3;           // consecutive candidates that must agree
    int n_lo = 10;
    int n_hi = 100;
    int fallback = 50;
    /// Denominator floor for the relative change, so near-zero variances
    /// compare as equal instead of dividing noise by noise.
    double variance_floor = 1e-12;
};

struct ObjectiveConfig {
    double eps = 1e-6;
    int n_min = 50;
    double below_min_penalty = 300.0;
    Periodization periodization = Periodization::FixedTrades;
    StabilizationConfig stabilization;
    BenchmarkConversion benchmark_conversion = BenchmarkConversion::Geometric;
    R2Target r2_target = R2Target::RawEquity;
};

void validate(const ObjectiveConfig& cfg);

/// GT-Score oriented as a loss (lower is better):
///   n < n_min      -> below_min_penalty
///   z <= 0         -> 100 + 100 (1 - e^{-|z-1|})
///   0 < z <= 1     -> 100 (1 - e^{-|z-1|})
///   z > 1          -> -(mu ln(z) r^2) / (sigma_d + eps)
double gt_score_loss(const MetricContext& ctx, const ObjectiveConfig& cfg);

/// SIMPLE -> -total_return, SHARPE -> -sharpe, SORTINO -> -sortino; the
/// n_min gate applies as for the GT-Score.
double baseline_loss(ObjectiveKind kind, const MetricContext& ctx, double total_return, const ObjectiveConfig& cfg);

struct PeriodCount {
    int n = 0;
    bool plateau = false;       // false means the fallback was used
    bool span_too_short = false;
};

/// Smallest period count whose period-return variance has stabilized.
PeriodCount stabilized_period_count(std::span<const Date> equity_dates, std::span<const double> equity_points,
                                    DateWindow window, const ObjectiveConfig& cfg);

/// Per-period simple returns of a realized equity curve partitioned into n
/// equal-length time periods of `window`.
std::vector<double> period_returns(std::span<const Date> equity_dates, std::span<const double> equity_points,
                                   DateWindow window, int n);

/// Observations for the metric context under the configured periodization.
struct Observations {
    std::vector<double> returns;
    std::vector<double> equity;
};
Observations observations(const BacktestResult& result, const ObjectiveConfig& cfg);

/// MetricContext of a backtest; requires at least one trade.
MetricContext build_metric_context(const BacktestResult& result, const ObjectiveConfig& cfg);

/// Loss of a backtest under `kind`, gating on executed trade count.
double evaluate_loss(ObjectiveKind kind, const BacktestResult& result, const ObjectiveConfig& cfg);

}  // namespace gtscore
