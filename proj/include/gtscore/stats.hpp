#pragma once

#include <optional>
#include <span>
#include <string>

namespace gtscore {

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double regularized_incomplete_beta(double a, double b, double x);

/// P(|T| > |t|) for Student's t with `df` degrees of freedom.
double student_t_two_sided_p(double t, double df);

double normal_cdf(double x);

struct TTestResult {
    double t = 0;
    double p = 1;
    double mean_diff = 0;
};

/// Paired t-test on a - b with sample std; zero dispersion gives t = 0, p = 1.
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b);

struct WilcoxonResult {
    double statistic = 0;  // min(W+, W-)
    double w_plus = 0;
    double w_minus = 0;
    double p = 1;
    std::size_t n_used = 0;  // pairs with nonzero difference
    bool exact = false;
};

/// Signed-rank test, zero differences dropped, average ranks for ties.
/// Exact enumeration when at most kWilcoxonExactMax pairs remain, otherwise
/// the tie-corrected normal approximation with continuity correction.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b);
WilcoxonResult wilcoxon_normal(std::span<const double> a, std::span<const double> b);
WilcoxonResult wilcoxon_exact(std::span<const double> a, std::span<const double> b);

inline constexpr std::size_t kWilcoxonExactMax = 12;

/// Pooled-groups Cohen's d. Zero pooled std yields 0 for equal means and
/// absent otherwise.
std::optional<double> cohens_d_pooled(std::span<const double> a, std::span<const double> b);

struct PairedComparison {
    std::string name;
    double mean_diff = 0;
    double t_stat = 0;
    double p_value_t = 1;
    double wilcoxon_p = 1;
    std::optional<double> cohens_d;
    std::size_t n = 0;
};

PairedComparison compare_paired(std::string name, std::span<const double> a, std::span<const double> b);

}  // namespace gtscore
