#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "robustmix/errors.hpp"

namespace robustmix::csv {

// Formats with 17 significant digits so a write/read cycle reproduces every
// double bit-exactly.
std::string format_double(double v);

// Rectangular table of formatted cells; numeric cells are stored already
// formatted so emission is deterministic.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row);
    int column_index(const std::string& name) const;  // -1 when absent
    std::vector<double> numeric_column(const std::string& name) const;

    void write(const std::filesystem::path& path) const;
    static Table read(const std::filesystem::path& path);
};

}  // namespace robustmix::csv
