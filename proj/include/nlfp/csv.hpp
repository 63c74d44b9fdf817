#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nlfp/core.hpp"

namespace nlfp {

/// Numeric table with a header row. Values are written with 17 significant
/// digits so a parse of the emitted text recovers every double exactly.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    CsvTable() = default;
    explicit CsvTable(std::vector<std::string> header) : columns(std::move(header)) {}

    void add_row(std::vector<double> row);
    bool operator==(const CsvTable&) const = default;
};

std::string format_double(double v);
std::string to_csv_text(const CsvTable& table);
CsvTable parse_csv_text(std::string_view text);

/// Writes to a sibling temporary file and renames it over `path`.
void write_text_atomic(const std::string& path, std::string_view text);
void write_csv_atomic(const CsvTable& table, const std::string& path);
CsvTable read_csv(const std::string& path);

/// "x,p" table, one row per node.
CsvTable density_table(const DensityField& field);
std::string density_csv(const DensityField& field);

/// File name <scenario>_t<time>.csv, with the time in shortest decimal form.
std::string density_file_name(const std::string& scenario, double time);

}  // namespace nlfp
