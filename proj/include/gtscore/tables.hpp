#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gtscore {

/// Shortest decimal that round-trips to the same double.
std::string format_number(double v);
/// Empty string for an absent value.
std::string format_number(std::optional<double> v);
double parse_number(std::string_view s);
std::optional<double> parse_optional_number(std::string_view s);

/// Small in-memory CSV table with RFC 4180 quoting.
class CsvTable {
public:
    CsvTable() = default;
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> row);

    const std::vector<std::string>& header() const { return header_; }
    const std::vector<std::vector<std::string>>& rows() const { return rows_; }
    std::size_t column(std::string_view name) const;
    bool has_column(std::string_view name) const;

    std::string to_string() const;
    static CsvTable parse(std::string_view text);

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace gtscore
