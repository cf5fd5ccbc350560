#pragma once

#include <string>
#include <vector>

namespace dqc::readout {

/// Numeric table with a header row.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    /// Index of `name`; throws std::out_of_range when absent.
    std::size_t column(const std::string& name) const;
    std::vector<double> values(const std::string& name) const;
};

/// Comma-separated, one header line, '#' lines skipped. Throws
/// std::runtime_error with the line number on malformed input.
Table read_csv(const std::string& path);
Table parse_csv(const std::string& text);
void write_csv(const std::string& path, const Table& table);

/// One fitted quantity in a JSON report.
struct FitRecord {
    std::string parameter;
    double value = 0.0;
    double stderr_proxy = 0.0;
    double residual = 0.0;
};

/// JSON array of {parameter, value, stderr, residual}.
std::string fit_report_json(const std::vector<FitRecord>& records);
void write_fit_report(const std::string& path, const std::vector<FitRecord>& records);

}  // namespace dqc::readout
