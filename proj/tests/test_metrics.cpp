#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gtscore/errors.hpp"
#include "gtscore/metrics.hpp"
#include "gtscore/rng.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace gtscore;

TEST_CASE("mean and population std") {
    const std::vector<double> xs{1, 2, 3, 4};
    const auto ms = mean_and_std(xs);
    CHECK(ms.mean == 2.5);
    CHECK(ms.std == doctest::Approx(std::sqrt(1.25)));
    CHECK(mean_and_std(std::vector<double>{0.3}).std == 0.0);
    CHECK_THROWS_AS(mean_and_std(std::vector<double>{}), ParameterError);
}

TEST_CASE("downside deviation only counts losses") {
    const std::vector<double> xs{-0.02, 0.01, -0.01, 0.03};
    CHECK(downside_deviation(xs) == doctest::Approx(std::sqrt(5e-4 / 4)));
    CHECK(downside_deviation(std::vector<double>{0.1, 0.2}) == 0.0);
    CHECK(downside_deviation(std::vector<double>{0.1, 0.2}, 0.15) == doctest::Approx(std::sqrt(0.0025 / 2)));
}

TEST_CASE("ratios") {
    CHECK(sharpe(0.0, 0.1, 1e-6) == 0.0);
    CHECK(sortino(0.0, 0.0, 1e-6) == 0.0);
    CHECK(sharpe(0.01, 0.02, 1e-6) == doctest::Approx(0.01 / 0.020001));
    CHECK(sortino(0.01, 0.0, 1e-6) == doctest::Approx(1e4));
    CHECK(std::isfinite(sharpe(0.5, 0.0, 1e-6)));
}

TEST_CASE("r squared consistency") {
    CHECK(r_squared_consistency(std::vector<double>{0.1, 0.2, 0.3, 0.4}) == doctest::Approx(1.0));
    CHECK(r_squared_consistency(std::vector<double>{0.5, 0.4, 0.3}) == doctest::Approx(1.0));
    CHECK(r_squared_consistency(std::vector<double>{0.2, 0.2, 0.2}) == 0.0);
    CHECK(r_squared_consistency(std::vector<double>{0.0, 1.0, 0.0}) == doctest::Approx(0.0));
    CHECK_THROWS_AS(r_squared_consistency(std::vector<double>{0.1}), ParameterError);

    Rng rng(77);
    for (int trial = 0; trial < 500; ++trial) {
        const auto n = static_cast<std::size_t>(rng.uniform_int(2, 300));
        auto rets = testing::random_returns(n, rng, 0.002, 0.03);
        std::vector<double> eq;
        double w = 1.0;
        for (double r : rets) eq.push_back((w *= 1.0 + r) - 1.0);
        const double got = r_squared_consistency(eq);
        CHECK(got >= 0.0);
        CHECK(got <= 1.0);
        CHECK(std::abs(got - oracle::r_squared(eq)) < 1e-9);
    }
}

TEST_CASE("z score") {
    CHECK(z_score(0.02, 0.01, 0.05, 25, 0.0) == doctest::Approx(1.0));
    CHECK(z_score(0.01, 0.01, 0.05, 25, 1e-6) == 0.0);
    CHECK(z_score(0.01, 0.0, 0.0, 4, 1e-6) == doctest::Approx(1e4));
    CHECK_THROWS_AS(z_score(0.0, 0.0, 1.0, 0, 1e-6), ParameterError);
}

TEST_CASE("generalization ratio") {
    CHECK(*generalization_ratio(0.05, 0.25) == doctest::Approx(0.2));
    CHECK(*generalization_ratio(-0.05, 0.25) == doctest::Approx(-0.2));
    CHECK_FALSE(generalization_ratio(0.05, 0.0).has_value());
    CHECK_FALSE(generalization_ratio(0.05, -0.1).has_value());
}
