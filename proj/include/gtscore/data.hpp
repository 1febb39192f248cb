#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gtscore {

using Date = std::chrono::sys_days;

Date parse_date(std::string_view iso);
std::string format_date(Date d);
/// Calendar-year shift; Feb 29 maps to Feb 28 in non-leap targets.
Date add_years(Date d, int years);
inline Date add_days(Date d, int days) { return d + std::chrono::days{days}; }
int year_of(Date d);

struct OhlcvBar {
    Date date;
    double open = 0, high = 0, low = 0, close = 0;
    double volume = 0;

    friend bool operator==(const OhlcvBar&, const OhlcvBar&) = default;
};

/// Dated daily bars for one asset, strictly increasing by date.
class PriceSeries {
public:
    PriceSeries() = default;
    /// Validates and takes ownership; bars must already be sorted.
    PriceSeries(std::string asset_id, std::vector<OhlcvBar> bars);

    const std::string& asset_id() const { return asset_id_; }
    const std::vector<OhlcvBar>& bars() const { return bars_; }
    std::size_t size() const { return bars_.size(); }
    const OhlcvBar& operator[](std::size_t i) const { return bars_[i]; }
    Date first_date() const { return bars_.front().date; }
    Date last_date() const { return bars_.back().date; }
    /// Exclusive end of the covered span (last date + 1 day).
    Date end_date() const { return add_days(last_date(), 1); }

    std::vector<double> closes() const;
    /// Bars with date < end, keeping the asset id.
    PriceSeries prefix_before(Date end) const;

    friend bool operator==(const PriceSeries&, const PriceSeries&) = default;

private:
    std::string asset_id_;
    std::vector<OhlcvBar> bars_;
};

/// Half-open [start, end) date interval.
struct DateWindow {
    Date start;
    Date end;
};

struct SplitSpec {
    Date train_start, train_end;
    Date val_start, val_end;

    DateWindow train() const { return {train_start, train_end}; }
    DateWindow validation() const { return {val_start, val_end}; }
};

struct Regime {
    int length_days = 0;
    double drift_per_day = 0;
    double vol_per_day = 0;
};

struct SyntheticSpec {
    std::string asset_id = "SYN";
    int n_days = 0;
    double initial_price = 100.0;
    std::vector<Regime> regimes;
    std::uint64_t seed = 0;
    /// First bar date; bars fall on consecutive weekdays from here.
    Date start_date = parse_date("2010-01-01");
};

PriceSeries parse_ohlcv_csv(std::string_view text, std::string asset_id = {});
std::string write_ohlcv_csv(const PriceSeries& series);
PriceSeries load_ohlcv_csv(const std::string& path, std::string asset_id = {});

PriceSeries generate_synthetic_series(const SyntheticSpec& spec);

std::vector<SplitSpec> make_walkforward_splits(const PriceSeries& series, int train_years,
                                               int val_years, int step_years, int embargo_days);

SplitSpec make_chrono_split(const PriceSeries& series, double train_fraction, int embargo_days);

/// Minimum bars required on each side of a chronological split.
inline constexpr std::size_t kMinChronoBars = 60;

}  // namespace gtscore
