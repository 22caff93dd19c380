#include "csv_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <boost/algorithm/string.hpp>

#include "hypershift/geometry.hpp"

namespace hypershift::io {

std::string fmt(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void CsvTable::add_row(std::vector<std::string> row)
{
    if (row.size() != header_.size())
        throw std::logic_error("CsvTable: row width does not match the header");
    rows_.push_back(std::move(row));
}

std::string CsvTable::str() const
{
    std::string out = boost::algorithm::join(header_, ",") + "\n";
    for (const auto& r : rows_)
        out += boost::algorithm::join(r, ",") + "\n";
    return out;
}

void write_atomic(const std::string& path, const std::string& content)
{
    std::filesystem::path p(path);
    if (p.has_parent_path())
        std::filesystem::create_directories(p.parent_path());
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            throw domain_error("cannot write " + tmp);
        f << content;
        if (!f.flush())
            throw domain_error("write failed for " + tmp);
    }
    std::filesystem::rename(tmp, p);
}

void write_csv(const std::string& path, const CsvTable& table) { write_atomic(path, table.str()); }

void write_json(const std::string& path, const nlohmann::json& j) { write_atomic(path, j.dump(2) + "\n"); }

std::vector<std::vector<double>> read_columns(const std::string& path, const std::vector<std::string>& names)
{
    std::ifstream f(path);
    if (!f)
        throw domain_error("cannot open " + path);
    std::string line;
    if (!std::getline(f, line))
        throw domain_error(path + ": empty file");
    boost::algorithm::trim(line);
    std::vector<std::string> header;
    boost::algorithm::split(header, line, boost::is_any_of(","));
    std::vector<std::size_t> idx;
    for (const auto& name : names) {
        std::size_t i = 0;
        while (i < header.size() && boost::algorithm::trim_copy(header[i]) != name)
            ++i;
        if (i == header.size())
            throw domain_error(path + ": missing column " + name);
        idx.push_back(i);
    }
    std::vector<std::vector<double>> cols(names.size());
    int lineno = 1;
    while (std::getline(f, line)) {
        ++lineno;
        boost::algorithm::trim(line);
        if (line.empty())
            continue;
        std::vector<std::string> cells;
        boost::algorithm::split(cells, line, boost::is_any_of(","));
        for (std::size_t c = 0; c < idx.size(); ++c) {
            if (idx[c] >= cells.size())
                throw domain_error(path + ":" + std::to_string(lineno) + ": short row");
            std::istringstream in(cells[idx[c]]);
            in.imbue(std::locale::classic());
            double v;
            if (!(in >> v))
                throw domain_error(path + ":" + std::to_string(lineno) + ": not a number");
            cols[c].push_back(v);
        }
    }
    return cols;
}

}  // namespace hypershift::io
