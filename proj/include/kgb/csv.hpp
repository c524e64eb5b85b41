#pragma once

#include <string>
#include <vector>

#include "kgb/errors.hpp"

namespace kgb {

/// RFC-4180-style table: mandatory header row, comma separated, double-quote
/// escaping. '|' separates multiple values inside one cell.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;  // each padded to header size

    int column(const std::string& name) const;  // -1 when absent
};

CsvTable parse_csv(const std::string& text);
std::string serialize_csv(const CsvTable& table);

std::vector<std::string> split_multi_value(const std::string& cell);
std::string join_multi_value(std::vector<std::string> values);  // sorts first

}  // namespace kgb
