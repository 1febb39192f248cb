#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "gtscore/data.hpp"
#include "gtscore/errors.hpp"
#include "gtscore/rng.hpp"
#include "gtscore/serialize.hpp"
#include "test_support.hpp"

using namespace gtscore;
using gtscore::testing::weekday_series;

TEST_CASE("rng reference stream") {
    // SplitMix64 from state 0 has a published first output.
    std::uint64_t state = 0;
    CHECK(splitmix64(state) == 0xE220A8397B1DCDAFULL);

    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    Rng r(7);
    for (int i = 0; i < 10000; ++i) {
        const auto v = r.uniform_int(-3, 5);
        CHECK(v >= -3);
        CHECK(v <= 5);
        const double u = r.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("rng normal draws have unit moments") {
    Rng r(123);
    double sum = 0, sq = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double g = r.normal();
        sum += g;
        sq += g * g;
    }
    CHECK(sum / n == doctest::Approx(0.0).epsilon(0.01));
    CHECK(sq / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("parse_ohlcv_csv") {
    SUBCASE("two valid rows") {
        const auto s = parse_ohlcv_csv(
            "date,open,high,low,close,volume\n"
            "2020-01-02,10,11,9,10.5,1000\n"
            "2020-01-03,10.5,12,10,11.5,2000\n",
            "X");
        REQUIRE(s.size() == 2);
        CHECK(s[0].date == parse_date("2020-01-02"));
        CHECK(s[0].open == 10);
        CHECK(s[0].high == 11);
        CHECK(s[0].low == 9);
        CHECK(s[0].close == 10.5);
        CHECK(s[0].volume == 1000);
        CHECK(s[1].close == 11.5);
        CHECK(s.asset_id() == "X");
    }
    SUBCASE("header is case-insensitive and CRLF tolerated") {
        const auto s = parse_ohlcv_csv("Date,Open,High,Low,Close,Volume\r\n2020-01-02,1,1,1,1,0\r\n2020-01-03,1,1,1,1,0\r\n");
        CHECK(s.size() == 2);
    }
    SUBCASE("high below low names the date") {
        try {
            parse_ohlcv_csv("date,open,high,low,close,volume\n2020-01-02,10,9,11,10,1\n2020-01-03,1,1,1,1,0\n");
            FAIL("expected validation error");
        } catch (const ValidationError& e) {
            CHECK(std::string(e.what()).find("2020-01-02") != std::string::npos);
        }
    }
    SUBCASE("malformed row reports its line") {
        try {
            parse_ohlcv_csv("date,open,high,low,close,volume\n2020-01-02,1,1,1,1,0\n2020-01-03,1,abc,1,1,0\n");
            FAIL("expected parse error");
        } catch (const ParseError& e) {
            CHECK(e.line() == 3);
        }
        CHECK_THROWS_AS(parse_ohlcv_csv("date,open,high,low,close,volume\n2020-01-02,1,1,1\n"), ParseError);
        CHECK_THROWS_AS(parse_ohlcv_csv("date,open,high,low,close\n"), ParseError);
        CHECK_THROWS_AS(parse_ohlcv_csv("date,open,high,low,close,volume\n2020-02-30,1,1,1,1,0\n"), ParseError);
    }
    SUBCASE("duplicate date") {
        CHECK_THROWS_AS(parse_ohlcv_csv("date,open,high,low,close,volume\n2020-01-02,1,1,1,1,0\n2020-01-02,1,1,1,1,0\n"),
                        ValidationError);
    }
    SUBCASE("single bar is rejected") {
        CHECK_THROWS_AS(parse_ohlcv_csv("date,open,high,low,close,volume\n2020-01-02,1,1,1,1,0\n"), ValidationError);
    }
}

TEST_CASE("unsorted rows come back sorted") {
    const auto series = weekday_series("2021-03-01", "2021-03-12", 5);
    REQUIRE(series.size() == 10);
    auto text = write_ohlcv_csv(series);
    std::vector<std::string> lines;
    std::size_t pos = text.find('\n') + 1;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        lines.push_back(text.substr(pos, nl - pos + 1));
        pos = nl + 1;
    }
    Rng rng(99);
    for (std::size_t i = lines.size() - 1; i > 0; --i)
        std::swap(lines[i], lines[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i)))]);
    std::string shuffled = "date,open,high,low,close,volume\n";
    for (const auto& l : lines) shuffled += l;

    const auto parsed = parse_ohlcv_csv(shuffled, series.asset_id());
    // Oracle: sort the shuffled dates independently.
    std::vector<Date> dates;
    for (const auto& l : lines) dates.push_back(parse_date(l.substr(0, 10)));
    std::sort(dates.begin(), dates.end());
    for (std::size_t i = 0; i < dates.size(); ++i) CHECK(parsed[i].date == dates[i]);
    CHECK(parsed == series);
}

TEST_CASE("csv write/parse round trip is exact") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto s = weekday_series("2015-01-01", "2016-06-30", seed, 0.0002, 0.03);
        const auto again = parse_ohlcv_csv(write_ohlcv_csv(s), s.asset_id());
        CHECK(again == s);
        CHECK(write_ohlcv_csv(again) == write_ohlcv_csv(s));
    }
}

TEST_CASE("generate_synthetic_series") {
    SyntheticSpec spec;
    spec.n_days = 300;
    spec.initial_price = 50;
    spec.seed = 3;

    SUBCASE("zero drift and vol gives a flat series") {
        spec.regimes = {{100, 0, 0}, {200, 0, 0}};
        const auto s = generate_synthetic_series(spec);
        for (const auto& b : s.bars()) {
            CHECK(b.close == 50.0);
            CHECK(b.high == 50.0);
            CHECK(b.low == 50.0);
        }
    }
    SUBCASE("zero vol follows the closed form") {
        const double d = 0.0013;
        spec.regimes = {{300, d, 0}};
        const auto s = generate_synthetic_series(spec);
        for (std::size_t t = 0; t < s.size(); ++t) {
            const double expected = 50.0 * std::exp(d * static_cast<double>(t));
            CHECK(std::abs(s[t].close / expected - 1.0) < 1e-12);
            if (t > 0) CHECK(s[t].open == s[t - 1].close);
        }
    }
    SUBCASE("deterministic per seed, different across seeds") {
        spec.regimes = {{150, 0.001, 0.02}, {150, -0.001, 0.04}};
        CHECK(generate_synthetic_series(spec) == generate_synthetic_series(spec));
        auto other = spec;
        other.seed = 4;
        CHECK_FALSE(generate_synthetic_series(other) == generate_synthetic_series(spec));
    }
    SUBCASE("bars satisfy OHLC invariants and skip weekends") {
        spec.regimes = {{300, 0.0, 0.05}};
        const auto s = generate_synthetic_series(spec);
        for (const auto& b : s.bars()) {
            const unsigned wd = std::chrono::weekday{b.date}.c_encoding();
            CHECK(wd != 0);
            CHECK(wd != 6);
            CHECK(b.low <= std::min(b.open, b.close));
            CHECK(b.high >= std::max(b.open, b.close));
        }
    }
    SUBCASE("invalid specs") {
        spec.regimes = {{100, 0, 0.01}};
        CHECK_THROWS_AS(generate_synthetic_series(spec), ValidationError);
        spec.regimes = {{300, 0, -0.01}};
        CHECK_THROWS_AS(generate_synthetic_series(spec), ValidationError);
    }
    SUBCASE("json round trip") {
        spec.regimes = {{120, 0.0005, 0.01}, {180, -0.0002, 0.02}};
        const auto back = synthetic_spec_from_json(to_json(spec));
        CHECK(generate_synthetic_series(back) == generate_synthetic_series(spec));
    }
}

TEST_CASE("walk-forward splits") {
    SUBCASE("15-year span with defaults gives nine splits") {
        const auto s = weekday_series("2010-01-01", "2024-12-31");
        const auto splits = make_walkforward_splits(s, 4, 2, 1, 30);
        REQUIRE(splits.size() == 9);
        CHECK(splits[0].train_start == parse_date("2010-01-01"));
        CHECK(splits[0].train_end == parse_date("2014-01-01"));
        CHECK(splits[0].val_start == parse_date("2014-01-31"));
        CHECK(splits[0].val_end == parse_date("2016-01-31"));
        CHECK(splits[8].val_end == parse_date("2024-01-31"));
        for (std::size_t i = 0; i < splits.size(); ++i) {
            CHECK(splits[i].train_start == add_years(parse_date("2010-01-01"), static_cast<int>(i)));
            CHECK(splits[i].val_start - splits[i].train_end == std::chrono::days{30});
            CHECK(splits[i].val_end <= s.end_date());
        }
    }
    SUBCASE("minimal span gives exactly one split") {
        const auto s = weekday_series("2010-01-01", "2016-02-05");
        CHECK(make_walkforward_splits(s, 4, 2, 1, 30).size() == 1);
    }
    SUBCASE("zero embargo") {
        const auto s = weekday_series("2010-01-01", "2018-12-31");
        for (const auto& sp : make_walkforward_splits(s, 4, 2, 1, 0)) CHECK(sp.val_start == sp.train_end);
    }
    SUBCASE("too short names the minimum span") {
        const auto s = weekday_series("2010-01-01", "2015-12-31");
        try {
            make_walkforward_splits(s, 4, 2, 1, 30);
            FAIL("expected error");
        } catch (const DataError& e) {
            CHECK(std::string(e.what()).find("2016-01-30") != std::string::npos);
        }
    }
}

TEST_CASE("chronological split") {
    const auto s = weekday_series("2010-01-01", "2020-01-01");
    SUBCASE("half split lands on the midpoint date") {
        const auto sp = make_chrono_split(s, 0.5, 0);
        const auto span = (s.last_date() - s.first_date()).count();
        CHECK(sp.train_end == add_days(s.first_date(), static_cast<int>(span / 2)));
        CHECK(sp.val_start == sp.train_end);
        CHECK(sp.val_end == s.end_date());
    }
    SUBCASE("embargo offsets the test start") {
        const auto sp = make_chrono_split(s, 0.7, 30);
        CHECK(sp.val_start == add_days(sp.train_end, 30));
    }
    SUBCASE("insufficient bars") {
        const auto short_series = weekday_series("2020-01-01", "2020-12-31");
        CHECK_THROWS_AS(make_chrono_split(short_series, 0.99, 0), DataError);
        CHECK_THROWS_AS(make_chrono_split(s, 1.0, 0), ParameterError);
    }
}

TEST_CASE("date helpers") {
    CHECK(format_date(parse_date("2016-02-29")) == "2016-02-29");
    CHECK(add_years(parse_date("2016-02-29"), 1) == parse_date("2017-02-28"));
    CHECK_THROWS_AS(parse_date("2016/02/29"), DataError);
}
