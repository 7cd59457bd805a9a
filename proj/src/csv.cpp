#include "robustmix/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace robustmix::csv {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void Table::add_row(std::vector<std::string> row) {
    if (row.size() != columns.size()) {
        throw ShapeError("csv: row width does not match header");
    }
    rows.push_back(std::move(row));
}

int Table::column_index(const std::string& name) const {
    for (size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) return static_cast<int>(i);
    }
    return -1;
}

std::vector<double> Table::numeric_column(const std::string& name) const {
    int idx = column_index(name);
    if (idx < 0) throw DomainError("csv: no column named " + name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        out.push_back(std::stod(row[static_cast<size_t>(idx)]));
    }
    return out;
}

void Table::write(const std::filesystem::path& path) const {
    std::ofstream file(path);
    if (!file) throw Error("csv: cannot open " + path.string() + " for writing");
    for (size_t i = 0; i < columns.size(); ++i) {
        file << (i ? "," : "") << columns[i];
    }
    file << "\n";
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            file << (i ? "," : "") << row[i];
        }
        file << "\n";
    }
    if (!file) throw Error("csv: write to " + path.string() + " failed");
}

Table Table::read(const std::filesystem::path& path) {
    std::ifstream file(path);
    if (!file) throw Error("csv: cannot open " + path.string());
    Table table;
    std::string line;
    bool header = true;
    while (std::getline(file, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (line.back() == ',') cells.emplace_back();
        if (header) {
            table.columns = std::move(cells);
            header = false;
        } else {
            table.add_row(std::move(cells));
        }
    }
    return table;
}

}  // namespace robustmix::csv
