#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <numeric>

#include "gtscore/errors.hpp"
#include "gtscore/rng.hpp"
#include "gtscore/stats.hpp"

using namespace gtscore;

namespace {

// Exact two-sided signed-rank p by enumerating all sign patterns, measured
// as distance of W+ from its null mean.
double oracle_wilcoxon_exact(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> d;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) d.push_back(a[i] - b[i]);
    const std::size_t n = d.size();
    if (n == 0) return 1.0;
    std::vector<double> ranks(n);
    for (std::size_t i = 0; i < n; ++i) {
        double below = 0, equal = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (std::fabs(d[j]) < std::fabs(d[i])) below += 1;
            if (std::fabs(d[j]) == std::fabs(d[i])) equal += 1;
        }
        ranks[i] = below + (equal + 1) / 2;
    }
    const double total = std::accumulate(ranks.begin(), ranks.end(), 0.0);
    double observed = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (d[i] > 0) observed += ranks[i];
    const double dev = std::fabs(observed - total / 2);
    std::size_t hits = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        double w = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) w += ranks[i];
        if (std::fabs(w - total / 2) >= dev - 1e-9) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(std::size_t{1} << n);
}

double boost_t_two_sided(double t, double df) {
    boost::math::students_t dist(df);
    return 2 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
}

}  // namespace

TEST_CASE("incomplete beta matches boost") {
    Rng rng(3);
    for (int i = 0; i < 2000; ++i) {
        const double a = rng.uniform_real(0.1, 500), b = rng.uniform_real(0.1, 50), x = rng.uniform01();
        CHECK(std::fabs(regularized_incomplete_beta(a, b, x) - boost::math::ibeta(a, b, x)) < 1e-10);
    }
    CHECK(regularized_incomplete_beta(2, 3, 0) == 0);
    CHECK(regularized_incomplete_beta(2, 3, 1) == 1);
}

TEST_CASE("student t tail matches boost") {
    Rng rng(4);
    for (int i = 0; i < 2000; ++i) {
        const double df = std::floor(rng.uniform_real(1, 5000));
        const double t = rng.uniform_real(-8, 8);
        CHECK(std::fabs(student_t_two_sided_p(t, df) - boost_t_two_sided(t, df)) < 1e-10);
    }
    const double p = student_t_two_sided_p(2.45, 2249);
    CHECK(p >= 0.0135);
    CHECK(p <= 0.0145);
}

TEST_CASE("normal cdf") {
    boost::math::normal n01;
    for (double x = -8; x <= 8; x += 0.37) CHECK(std::fabs(normal_cdf(x) - boost::math::cdf(n01, x)) < 1e-14);
}

TEST_CASE("paired t test") {
    const std::vector<double> a{2, 4, 6, 8}, b{1, 2, 3, 4};
    const auto r = paired_t_test(a, b);
    CHECK(r.mean_diff == 2.5);
    CHECK(r.t == doctest::Approx(2.5 / (std::sqrt(5.0 / 3.0) / 2)));
    CHECK(r.p == doctest::Approx(boost_t_two_sided(r.t, 3)));

    const std::vector<double> c{1, 2, 3};
    const auto same = paired_t_test(c, c);
    CHECK(same.t == 0);
    CHECK(same.p == 1);
    CHECK_THROWS_AS(paired_t_test(a, c), ParameterError);
}

TEST_CASE("wilcoxon exact matches enumeration oracle") {
    Rng rng(8);
    for (int trial = 0; trial < 400; ++trial) {
        const auto n = static_cast<std::size_t>(rng.uniform_int(1, 12));
        std::vector<double> a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            // Rounding creates ties and zero differences.
            a[i] = std::round(rng.normal() * 4) / 2;
            b[i] = std::round(rng.normal() * 4) / 2;
        }
        const auto r = wilcoxon_exact(a, b);
        CHECK(r.exact);
        CHECK(r.p == doctest::Approx(oracle_wilcoxon_exact(a, b)).epsilon(1e-12));
        CHECK(r.w_plus + r.w_minus == doctest::Approx(r.n_used * (r.n_used + 1) / 2.0));
        CHECK(r.statistic == std::min(r.w_plus, r.w_minus));
    }
}

TEST_CASE("wilcoxon normal approximation") {
    std::vector<double> a(20), b(20, 0.0);
    std::iota(a.begin(), a.end(), 1.0);
    const auto r = wilcoxon_normal(a, b);
    CHECK(r.w_plus == 210);
    CHECK(r.w_minus == 0);
    const double z = (105 - 0.5) / std::sqrt(20.0 * 21 * 41 / 24);
    CHECK(r.p == doctest::Approx(std::erfc(z / std::sqrt(2.0))));
    CHECK_FALSE(r.exact);

    // Ties shrink the variance.
    const std::vector<double> t{1, 1, 1, 1, 2, 2, 2, 3, 3, 3, 3, 3, 4, 4, -5};
    const auto rt = wilcoxon_normal(t, std::vector<double>(t.size(), 0.0));
    const double n = 15;
    const double tie = (4 * 4 * 4 - 4) + (3 * 3 * 3 - 3) + (5 * 5 * 5 - 5) + (2 * 2 * 2 - 2);
    const double var = n * (n + 1) * (2 * n + 1) / 24 - tie / 48;
    const double zt = (std::fabs(rt.w_plus - n * (n + 1) / 4) - 0.5) / std::sqrt(var);
    CHECK(rt.w_minus == 15);
    CHECK(rt.p == doctest::Approx(std::erfc(zt / std::sqrt(2.0))));
}

TEST_CASE("wilcoxon dispatch and degenerate inputs") {
    const std::vector<double> z(5, 1.0);
    const auto none = wilcoxon_signed_rank(z, z);
    CHECK(none.n_used == 0);
    CHECK(none.p == 1);

    Rng rng(10);
    std::vector<double> a(30), b(30);
    for (auto& x : a) x = rng.normal();
    for (auto& x : b) x = rng.normal();
    CHECK_FALSE(wilcoxon_signed_rank(a, b).exact);
    a.resize(12);
    b.resize(12);
    CHECK(wilcoxon_signed_rank(a, b).exact);
}

TEST_CASE("cohens d") {
    const std::vector<double> a{2, 3, 4}, b{1, 2, 3};
    CHECK(*cohens_d_pooled(a, b) == doctest::Approx(1.0));
    CHECK(*cohens_d_pooled(b, a) == doctest::Approx(-1.0));
    const std::vector<double> c{1, 1}, d{1, 1}, e{2, 2};
    CHECK(*cohens_d_pooled(c, d) == 0.0);
    CHECK_FALSE(cohens_d_pooled(c, e).has_value());
}

TEST_CASE("compare paired bundles the tests") {
    Rng rng(12);
    std::vector<double> a(40), b(40);
    for (std::size_t i = 0; i < a.size(); ++i) {
        b[i] = rng.normal();
        a[i] = b[i] + 0.3 + 0.5 * rng.normal();
    }
    const auto c = compare_paired("A vs B", a, b);
    CHECK(c.name == "A vs B");
    CHECK(c.n == 40);
    CHECK(c.t_stat == paired_t_test(a, b).t);
    CHECK(c.p_value_t == paired_t_test(a, b).p);
    CHECK(c.wilcoxon_p == wilcoxon_signed_rank(a, b).p);
    CHECK(c.mean_diff > 0);
}
