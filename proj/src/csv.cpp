#include "nlfp/csv.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace nlfp {

void CsvTable::add_row(std::vector<double> row) {
    if (row.size() != columns.size()) {
        throw std::invalid_argument("CsvTable: row has " + std::to_string(row.size()) + " fields, header has " +
                                    std::to_string(columns.size()));
    }
    rows.push_back(std::move(row));
}

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, end);
}

std::string to_csv_text(const CsvTable& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += format_double(row[c]);
        }
        out += '\n';
    }
    return out;
}

namespace {

std::vector<std::string_view> split_line(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(',', start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_field(std::string_view s, std::size_t line_no) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw std::runtime_error("csv line " + std::to_string(line_no) + ": bad number '" + std::string(s) + "'");
    }
    return v;
}

}  // namespace

CsvTable parse_csv_text(std::string_view text) {
    CsvTable table;
    std::size_t line_no = 0;
    std::size_t start = 0;
    bool have_header = false;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        const auto fields = split_line(line);
        if (!have_header) {
            for (auto f : fields) table.columns.emplace_back(f);
            have_header = true;
            continue;
        }
        if (fields.size() != table.columns.size()) {
            throw std::runtime_error("csv line " + std::to_string(line_no) + ": expected " +
                                     std::to_string(table.columns.size()) + " fields");
        }
        std::vector<double> row;
        row.reserve(fields.size());
        for (auto f : fields) row.push_back(parse_field(f, line_no));
        table.rows.push_back(std::move(row));
    }
    if (!have_header) throw std::runtime_error("csv: missing header");
    return table;
}

void write_text_atomic(const std::string& path, std::string_view text) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

void write_csv_atomic(const CsvTable& table, const std::string& path) {
    write_text_atomic(path, to_csv_text(table));
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_csv_text(ss.str());
}

CsvTable density_table(const DensityField& field) {
    CsvTable t({"x", "p"});
    t.rows.reserve(field.size());
    for (std::size_t i = 0; i < field.size(); ++i) t.rows.push_back({field.grid.x(i), field.values[i]});
    return t;
}

std::string density_csv(const DensityField& field) { return to_csv_text(density_table(field)); }

std::string density_file_name(const std::string& scenario, double time) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, time);
    if (ec != std::errc{}) throw std::runtime_error("density_file_name: conversion failed");
    return scenario + "_t" + std::string(buf, end) + ".csv";
}

}  // namespace nlfp
