#include "mra/harness/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mra/error.hpp"

namespace mra::harness {

std::string format_real(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

// Fields never contain commas or quotes in the files written here, so no
// quoting is implemented; error tags are sanitized by the writer.
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        if (!field.empty() && field.back() == '\r') {
            field.pop_back();
        }
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

std::string join_csv_line(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i != 0) {
            out += ',';
        }
        out += fields[i];
    }
    return out;
}

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) {
            return i;
        }
    }
    throw InvalidParameter("csv: no column named '" + name + "'");
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw RuntimeFailure("cannot open " + path.string());
    }
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) {
        return table;
    }
    table.header = split_csv_line(line);
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        table.rows.push_back(split_csv_line(line));
    }
    return table;
}

void write_csv_atomic(const std::filesystem::path& path, const CsvTable& table) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) {
            throw RuntimeFailure("cannot write " + tmp.string());
        }
        out << join_csv_line(table.header) << '\n';
        for (const auto& row : table.rows) {
            out << join_csv_line(row) << '\n';
        }
        out.flush();
        if (!out) {
            throw RuntimeFailure("write failed: " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

} // namespace mra::harness
