#include "gtscore/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gtscore/errors.hpp"
#include "gtscore/rng.hpp"

namespace gtscore {

using namespace std::chrono;

namespace {

bool parse_int(std::string_view s, int& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && p == s.data() + s.size();
}

bool parse_double(std::string_view s, double& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && p == s.data() + s.size();
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        auto comma = line.find(',', pos);
        out.push_back(trim(line.substr(pos, comma == std::string_view::npos ? line.npos : comma - pos)));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string shortest(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void validate_bar(const OhlcvBar& b) {
    const auto where = [&] { return " on " + format_date(b.date); };
    for (double p : {b.open, b.high, b.low, b.close}) {
        if (!(p > 0.0) || !std::isfinite(p)) throw ValidationError("non-positive price" + where());
    }
    if (!(b.volume >= 0.0)) throw ValidationError("negative volume" + where());
    if (b.high < b.low) throw ValidationError("high < low" + where());
    if (b.open < b.low || b.open > b.high) throw ValidationError("open outside [low, high]" + where());
    if (b.close < b.low || b.close > b.high) throw ValidationError("close outside [low, high]" + where());
}

bool is_weekday(Date d) {
    const unsigned wd = weekday{d}.c_encoding();
    return wd != 0 && wd != 6;
}

}  // namespace

Date parse_date(std::string_view iso) {
    iso = trim(iso);
    int y = 0, m = 0, d = 0;
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-' || !parse_int(iso.substr(0, 4), y) ||
        !parse_int(iso.substr(5, 2), m) || !parse_int(iso.substr(8, 2), d)) {
        throw DataError("invalid ISO-8601 date '" + std::string(iso) + "'");
    }
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) throw DataError("invalid calendar date '" + std::string(iso) + "'");
    return sys_days{ymd};
}

std::string format_date(Date d) {
    const year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

Date add_years(Date d, int years) {
    year_month_day ymd{d};
    ymd += std::chrono::years{years};
    if (!ymd.ok()) ymd = ymd.year() / ymd.month() / last;
    return sys_days{ymd};
}

int year_of(Date d) { return static_cast<int>(year_month_day{d}.year()); }

PriceSeries::PriceSeries(std::string asset_id, std::vector<OhlcvBar> bars)
    : asset_id_(std::move(asset_id)), bars_(std::move(bars)) {
    if (bars_.size() < 2) throw ValidationError("price series needs at least 2 bars");
    for (std::size_t i = 0; i < bars_.size(); ++i) {
        validate_bar(bars_[i]);
        if (i > 0 && bars_[i].date <= bars_[i - 1].date) {
            if (bars_[i].date == bars_[i - 1].date)
                throw ValidationError("duplicate date " + format_date(bars_[i].date));
            throw ValidationError("bars not sorted at " + format_date(bars_[i].date));
        }
    }
}

std::vector<double> PriceSeries::closes() const {
    std::vector<double> out;
    out.reserve(bars_.size());
    for (const auto& b : bars_) out.push_back(b.close);
    return out;
}

PriceSeries PriceSeries::prefix_before(Date end) const {
    PriceSeries out;
    out.asset_id_ = asset_id_;
    auto it = std::lower_bound(bars_.begin(), bars_.end(), end,
                               [](const OhlcvBar& b, Date d) { return b.date < d; });
    out.bars_.assign(bars_.begin(), it);
    return out;
}

PriceSeries parse_ohlcv_csv(std::string_view text, std::string asset_id) {
    std::vector<OhlcvBar> bars;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        line = trim(line);
        if (line.empty()) continue;
        if (!header_seen) {
            if (to_lower(line) != "date,open,high,low,close,volume")
                throw ParseError(line_no, "expected header 'date,open,high,low,close,volume'");
            header_seen = true;
            continue;
        }
        auto f = split_fields(line);
        if (f.size() != 6) throw ParseError(line_no, "expected 6 fields, got " + std::to_string(f.size()));
        OhlcvBar bar;
        try {
            bar.date = parse_date(f[0]);
        } catch (const DataError& e) {
            throw ParseError(line_no, e.what());
        }
        double* targets[] = {&bar.open, &bar.high, &bar.low, &bar.close, &bar.volume};
        static const char* names[] = {"open", "high", "low", "close", "volume"};
        for (int k = 0; k < 5; ++k) {
            if (!parse_double(f[k + 1], *targets[k]))
                throw ParseError(line_no, std::string("invalid ") + names[k] + " '" + std::string(f[k + 1]) + "'");
        }
        validate_bar(bar);
        bars.push_back(bar);
    }
    if (!header_seen) throw ParseError(1, "empty document");
    std::stable_sort(bars.begin(), bars.end(), [](const auto& a, const auto& b) { return a.date < b.date; });
    return PriceSeries(std::move(asset_id), std::move(bars));
}

std::string write_ohlcv_csv(const PriceSeries& series) {
    std::string out = "date,open,high,low,close,volume\n";
    for (const auto& b : series.bars()) {
        out += format_date(b.date);
        for (double v : {b.open, b.high, b.low, b.close, b.volume}) {
            out += ',';
            out += shortest(v);
        }
        out += '\n';
    }
    return out;
}

PriceSeries load_ohlcv_csv(const std::string& path, std::string asset_id) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_ohlcv_csv(ss.str(), std::move(asset_id));
    } catch (const DataError& e) {
        throw DataError(path + ": " + e.what());
    }
}

PriceSeries generate_synthetic_series(const SyntheticSpec& spec) {
    if (spec.n_days < 2) throw ValidationError("synthetic n_days must be >= 2");
    if (!(spec.initial_price > 0.0)) throw ValidationError("synthetic initial_price must be > 0");
    long total = 0;
    for (const auto& r : spec.regimes) {
        if (r.length_days <= 0) throw ValidationError("regime length_days must be positive");
        if (!(r.vol_per_day >= 0.0)) throw ValidationError("regime vol_per_day must be >= 0");
        total += r.length_days;
    }
    if (total != spec.n_days) throw ValidationError("regime lengths must sum to n_days");

    Rng rng(spec.seed);
    std::vector<OhlcvBar> bars;
    bars.reserve(static_cast<std::size_t>(spec.n_days));
    Date date = spec.start_date;
    while (!is_weekday(date)) date = add_days(date, 1);

    double log_level = 0.0;
    double prev_close = spec.initial_price;
    std::size_t regime = 0;
    int left_in_regime = spec.regimes.front().length_days;
    for (int t = 0; t < spec.n_days; ++t) {
        if (left_in_regime == 0) left_in_regime = spec.regimes[++regime].length_days;
        --left_in_regime;
        const Regime& r = spec.regimes[regime];
        // Two draws per day in fixed order; g is unused on day 0.
        const double g = rng.normal();
        const double g_hl = rng.normal();

        OhlcvBar bar;
        bar.date = date;
        if (t == 0) {
            bar.open = bar.close = spec.initial_price;
        } else {
            log_level += r.drift_per_day + r.vol_per_day * g;
            bar.open = prev_close;
            bar.close = spec.initial_price * std::exp(log_level);
        }
        const double spread = std::abs(r.vol_per_day * g_hl);
        bar.high = std::max(bar.open, bar.close) * (1.0 + spread);
        // Keeps low positive for extreme vol settings.
        bar.low = std::min(bar.open, bar.close) * std::max(1.0 - spread, 1e-3);
        bar.volume = 1e6;
        bars.push_back(bar);

        prev_close = bar.close;
        do {
            date = add_days(date, 1);
        } while (!is_weekday(date));
    }
    return PriceSeries(spec.asset_id, std::move(bars));
}

std::vector<SplitSpec> make_walkforward_splits(const PriceSeries& series, int train_years,
                                               int val_years, int step_years, int embargo_days) {
    if (train_years < 1 || val_years < 1 || step_years < 1 || embargo_days < 0)
        throw ParameterError("walk-forward windows must be positive and embargo non-negative");
    const Date origin = series.first_date();
    const Date end = series.end_date();
    std::vector<SplitSpec> splits;
    for (int i = 0;; ++i) {
        SplitSpec s;
        s.train_start = add_years(origin, i * step_years);
        s.train_end = add_years(s.train_start, train_years);
        s.val_start = add_days(s.train_end, embargo_days);
        s.val_end = add_years(s.val_start, val_years);
        if (s.val_end > end) break;
        splits.push_back(s);
    }
    if (splits.empty()) {
        const Date need = add_years(add_days(add_years(origin, train_years), embargo_days), val_years);
        throw DataError("series " + series.asset_id() + " spans " + format_date(origin) + " to " +
                        format_date(series.last_date()) + "; one split needs " + std::to_string(train_years) +
                        "y train + " + std::to_string(embargo_days) + "d embargo + " + std::to_string(val_years) +
                        "y validation, i.e. data through " + format_date(add_days(need, -1)));
    }
    return splits;
}

SplitSpec make_chrono_split(const PriceSeries& series, double train_fraction, int embargo_days) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw ParameterError("train_fraction must lie in (0, 1)");
    if (embargo_days < 0) throw ParameterError("embargo_days must be non-negative");
    const auto span = (series.last_date() - series.first_date()).count();
    SplitSpec s;
    s.train_start = series.first_date();
    s.train_end = add_days(s.train_start, static_cast<int>(std::llround(train_fraction * static_cast<double>(span))));
    s.val_start = add_days(s.train_end, embargo_days);
    s.val_end = series.end_date();

    const auto& bars = series.bars();
    const auto count_in = [&](Date a, Date b) {
        return static_cast<std::size_t>(std::count_if(bars.begin(), bars.end(),
                                                       [&](const OhlcvBar& x) { return x.date >= a && x.date < b; }));
    };
    const auto n_train = count_in(s.train_start, s.train_end);
    const auto n_test = s.val_start < s.val_end ? count_in(s.val_start, s.val_end) : 0;
    if (n_train < kMinChronoBars || n_test < kMinChronoBars) {
        throw DataError("chronological split of " + series.asset_id() + " leaves " + std::to_string(n_train) +
                        " train / " + std::to_string(n_test) + " test bars; need at least " +
                        std::to_string(kMinChronoBars) + " on each side");
    }
    return s;
}

}  // namespace gtscore
