#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace hypershift::io {

/// Formats a real with 17 significant digits in the C locale.
std::string fmt(double x);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
    void add_row(std::vector<std::string> row);
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Writes `path.tmp` and renames it over `path`.
void write_atomic(const std::string& path, const std::string& content);

void write_csv(const std::string& path, const CsvTable& table);
void write_json(const std::string& path, const nlohmann::json& j);

/// Reads a numeric CSV with a header line; returns the columns by name.
std::vector<std::vector<double>> read_columns(const std::string& path, const std::vector<std::string>& names);

}  // namespace hypershift::io
