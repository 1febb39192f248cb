#pragma once

#include <optional>
#include <span>

namespace gtscore {

/// Inputs to every objective, computed from one backtest's observations.
struct MetricContext {
    double mu = 0;       // mean observation return
    double sigma = 0;    // population std of observations
    double mu_m = 0;     // per-observation benchmark mean
    std::size_t n = 0;   // observation count
    double sigma_d = 0;  // downside deviation (mar 0)
    double r2 = 0;       // equity consistency
    double z = 0;
};

struct MeanStd {
    double mean = 0;
    double std = 0;
};

/// Arithmetic mean and population standard deviation.
MeanStd mean_and_std(std::span<const double> returns);

double downside_deviation(std::span<const double> returns, double mar = 0.0);

double sharpe(double mu, double sigma, double eps);
double sortino(double mu, double sigma_d, double eps);

/// r^2 of an OLS fit of equity against observation index; 0 for flat equity.
double r_squared_consistency(std::span<const double> equity_points);

/// (mu - mu_m) / (sigma / sqrt(n) + eps).
double z_score(double mu, double mu_m, double sigma, std::size_t n, double eps);

/// out / train when train > 0, otherwise absent.
std::optional<double> generalization_ratio(double out_of_sample_mean, double train_mean);

}  // namespace gtscore
