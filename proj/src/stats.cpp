#include "gtscore/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "gtscore/errors.hpp"

namespace gtscore {

namespace {

// Modified Lentz evaluation of the incomplete beta continued fraction.
double beta_continued_fraction(double a, double b, double x) {
    constexpr double tiny = 1e-300;
    constexpr double tol = 1e-16;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 10000; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < tol) break;
    }
    return h;
}

std::vector<double> differences(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw ParameterError("paired samples differ in length");
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return d;
}

double mean_of(std::span<const double> xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_var(std::span<const double> xs, double mean) {
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return ss / static_cast<double>(xs.size() - 1);
}

struct SignedRanks {
    std::vector<double> ranks;  // average ranks of |d|
    std::vector<bool> positive;
    double tie_term = 0;  // sum of (t^3 - t) over tie groups
    double w_plus = 0, w_minus = 0;
};

SignedRanks signed_ranks(std::span<const double> a, std::span<const double> b) {
    auto d = differences(a, b);
    std::erase_if(d, [](double x) { return x == 0.0; });
    SignedRanks out;
    const std::size_t n = d.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto i, auto j) { return std::abs(d[i]) < std::abs(d[j]); });
    out.ranks.assign(n, 0.0);
    out.positive.assign(n, false);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && std::abs(d[order[j + 1]]) == std::abs(d[order[i]])) ++j;
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        const double t = static_cast<double>(j - i + 1);
        out.tie_term += t * t * t - t;
        for (std::size_t k = i; k <= j; ++k) out.ranks[order[k]] = avg;
        i = j + 1;
    }
    for (std::size_t i = 0; i < n; ++i) {
        out.positive[i] = d[i] > 0;
        (out.positive[i] ? out.w_plus : out.w_minus) += out.ranks[i];
    }
    return out;
}

WilcoxonResult base_result(const SignedRanks& sr) {
    WilcoxonResult r;
    r.n_used = sr.ranks.size();
    r.w_plus = sr.w_plus;
    r.w_minus = sr.w_minus;
    r.statistic = std::min(sr.w_plus, sr.w_minus);
    return r;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0 && b > 0.0)) throw ParameterError("incomplete beta needs a, b > 0");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double log_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
    if (!(df > 0.0)) throw ParameterError("t distribution needs df > 0");
    if (std::isinf(t)) return 0.0;
    const double x = df / (df + t * t);
    return regularized_incomplete_beta(df / 2.0, 0.5, x);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

TTestResult paired_t_test(std::span<const double> a, std::span<const double> b) {
    const auto d = differences(a, b);
    if (d.size() < 2) throw ParameterError("paired t-test needs n >= 2");
    TTestResult r;
    r.mean_diff = mean_of(d);
    const double sd = std::sqrt(sample_var(d, r.mean_diff));
    if (sd == 0.0) return {0.0, 1.0, r.mean_diff};
    const double n = static_cast<double>(d.size());
    r.t = r.mean_diff / (sd / std::sqrt(n));
    r.p = student_t_two_sided_p(r.t, n - 1.0);
    return r;
}

WilcoxonResult wilcoxon_normal(std::span<const double> a, std::span<const double> b) {
    const auto sr = signed_ranks(a, b);
    auto r = base_result(sr);
    if (r.n_used == 0) return r;
    const double n = static_cast<double>(r.n_used);
    const double mean = n * (n + 1.0) / 4.0;
    const double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - sr.tie_term / 48.0;
    if (var <= 0.0) return r;
    const double dev = std::max(std::abs(r.statistic - mean) - 0.5, 0.0);
    r.p = std::min(1.0, 2.0 * normal_cdf(-dev / std::sqrt(var)));
    return r;
}

WilcoxonResult wilcoxon_exact(std::span<const double> a, std::span<const double> b) {
    const auto sr = signed_ranks(a, b);
    auto r = base_result(sr);
    r.exact = true;
    const std::size_t n = r.n_used;
    if (n == 0) return r;
    if (n > 24) throw ParameterError("exact Wilcoxon enumeration limited to 24 pairs");
    // Average ranks are multiples of 1/2, so doubled ranks are exact integers.
    std::vector<long> twice(n);
    long total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        twice[i] = std::lround(2.0 * sr.ranks[i]);
        total += twice[i];
    }
    const long observed = std::lround(2.0 * r.statistic);
    const std::uint64_t patterns = 1ULL << n;
    std::uint64_t extreme = 0;
    for (std::uint64_t mask = 0; mask < patterns; ++mask) {
        long plus = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1U) plus += twice[i];
        if (std::min(plus, total - plus) <= observed) ++extreme;
    }
    r.p = static_cast<double>(extreme) / static_cast<double>(patterns);
    return r;
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b) {
    const auto d = differences(a, b);
    const auto nonzero = static_cast<std::size_t>(std::count_if(d.begin(), d.end(), [](double x) { return x != 0.0; }));
    return nonzero <= kWilcoxonExactMax ? wilcoxon_exact(a, b) : wilcoxon_normal(a, b);
}

std::optional<double> cohens_d_pooled(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2) throw ParameterError("Cohen's d needs at least 2 values per group");
    const double ma = mean_of(a), mb = mean_of(b);
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    const double pooled =
        std::sqrt(((na - 1.0) * sample_var(a, ma) + (nb - 1.0) * sample_var(b, mb)) / (na + nb - 2.0));
    if (pooled == 0.0) {
        if (ma == mb) return 0.0;
        return std::nullopt;
    }
    return (ma - mb) / pooled;
}

PairedComparison compare_paired(std::string name, std::span<const double> a, std::span<const double> b) {
    PairedComparison c;
    c.name = std::move(name);
    const auto t = paired_t_test(a, b);
    c.mean_diff = t.mean_diff;
    c.t_stat = t.t;
    c.p_value_t = t.p;
    c.wilcoxon_p = wilcoxon_signed_rank(a, b).p;
    c.cohens_d = cohens_d_pooled(a, b);
    c.n = a.size();
    return c;
}

}  // namespace gtscore
