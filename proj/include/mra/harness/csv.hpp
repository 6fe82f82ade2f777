#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace mra::harness {

/// Round-trippable decimal form (%.17g); "nan" for NaN.
std::string format_real(double value);

std::vector<std::string> split_csv_line(const std::string& line);
std::string join_csv_line(const std::vector<std::string>& fields);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    [[nodiscard]] std::size_t column(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over the target.
void write_csv_atomic(const std::filesystem::path& path, const CsvTable& table);

} // namespace mra::harness
