#include "dqc/readout/csv_io.hpp"

#include "json.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace dqc::readout {

std::size_t Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) {
            return i;
        }
    }
    throw std::out_of_range("column not found: " + name);
}

std::vector<double> Table::values(const std::string& name) const {
    const std::size_t c = column(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        out.push_back(r[c]);
    }
    return out;
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    return out;
}

}  // namespace

Table parse_csv(const std::string& text) {
    Table t;
    std::stringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#' || line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        auto cells = split(line);
        if (!have_header) {
            t.columns = std::move(cells);
            have_header = true;
            continue;
        }
        if (cells.size() != t.columns.size()) {
            throw std::runtime_error("csv line " + std::to_string(line_no) + ": expected " +
                                     std::to_string(t.columns.size()) + " fields");
        }
        std::vector<double> row;
        for (const auto& c : cells) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(c, &used));
                if (used != c.size()) {
                    throw std::invalid_argument(c);
                }
            } catch (const std::exception&) {
                throw std::runtime_error("csv line " + std::to_string(line_no) + ": not a number: '" + c + "'");
            }
        }
        t.rows.push_back(std::move(row));
    }
    if (!have_header) {
        throw std::runtime_error("csv: no header row");
    }
    return t;
}

Table read_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) {
        throw std::runtime_error("cannot open " + path);
    }
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_csv(buf.str());
}

void write_csv(const std::string& path, const Table& table) {
    std::ofstream f(path);
    if (!f) {
        throw std::runtime_error("cannot write " + path);
    }
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        f << (i ? "," : "") << table.columns[i];
    }
    f << '\n' << std::setprecision(17);
    for (const auto& r : table.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            f << (i ? "," : "") << r[i];
        }
        f << '\n';
    }
}

std::string fit_report_json(const std::vector<FitRecord>& records) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : records) {
        j.push_back({{"parameter", r.parameter}, {"value", r.value}, {"stderr", r.stderr_proxy}, {"residual", r.residual}});
    }
    return j.dump(2);
}

void write_fit_report(const std::string& path, const std::vector<FitRecord>& records) {
    std::ofstream f(path);
    if (!f) {
        throw std::runtime_error("cannot write " + path);
    }
    f << fit_report_json(records) << '\n';
}

}  // namespace dqc::readout
