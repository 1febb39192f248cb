#include "gtscore/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "gtscore/errors.hpp"

namespace gtscore {

MeanStd mean_and_std(std::span<const double> returns) {
    if (returns.empty()) throw ParameterError("mean_and_std of empty sequence");
    const double n = static_cast<double>(returns.size());
    double sum = 0.0;
    for (double r : returns) sum += r;
    const double mean = sum / n;
    double ss = 0.0;
    for (double r : returns) ss += (r - mean) * (r - mean);
    return {mean, std::sqrt(ss / n)};
}

double downside_deviation(std::span<const double> returns, double mar) {
    if (returns.empty()) throw ParameterError("downside_deviation of empty sequence");
    double ss = 0.0;
    for (double r : returns) {
        const double d = std::min(r - mar, 0.0);
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(returns.size()));
}

double sharpe(double mu, double sigma, double eps) { return mu / (sigma + eps); }

double sortino(double mu, double sigma_d, double eps) { return mu / (sigma_d + eps); }

double r_squared_consistency(std::span<const double> equity_points) {
    const std::size_t n = equity_points.size();
    if (n < 2) throw ParameterError("r_squared_consistency needs at least 2 points");
    const double nd = static_cast<double>(n);
    const double x_mean = (nd - 1.0) / 2.0;
    double y_mean = 0.0;
    for (double y : equity_points) y_mean += y;
    y_mean /= nd;

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = static_cast<double>(i) - x_mean;
        const double dy = equity_points[i] - y_mean;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (syy == 0.0) return 0.0;
    // SS_res = syy - sxy^2/sxx, so r^2 = sxy^2 / (sxx * syy).
    const double r2 = (sxy * sxy) / (sxx * syy);
    return std::clamp(r2, 0.0, 1.0);
}

double z_score(double mu, double mu_m, double sigma, std::size_t n, double eps) {
    if (n == 0) throw ParameterError("z_score needs n >= 1");
    return (mu - mu_m) / (sigma / std::sqrt(static_cast<double>(n)) + eps);
}

std::optional<double> generalization_ratio(double out_of_sample_mean, double train_mean) {
    if (!(train_mean > 0.0)) return std::nullopt;
    return out_of_sample_mean / train_mean;
}

}  // namespace gtscore
