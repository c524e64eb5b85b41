#include "kgb/csv.hpp"

#include <algorithm>

namespace kgb {

int CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

CsvTable parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool any = false;

    std::size_t i = 0;
    auto end_field = [&]() {
        record.push_back(field);
        field.clear();
        any = true;
    };
    auto end_record = [&]() {
        end_field();
        records.push_back(record);
        record.clear();
        any = false;
    };

    while (i < text.size()) {
        char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    i += 2;
                } else {
                    quoted = false;
                    ++i;
                }
            } else {
                field += c;
                ++i;
            }
            continue;
        }
        switch (c) {
            case '"':
                quoted = true;
                ++i;
                break;
            case ',':
                end_field();
                ++i;
                break;
            case '\r':
                ++i;
                break;
            case '\n':
                end_record();
                ++i;
                break;
            default:
                field += c;
                ++i;
        }
    }
    if (quoted) throw ParseError(records.size() + 1, field, "unterminated quoted CSV field");
    if (any || !field.empty() || !record.empty()) end_record();

    if (records.empty()) throw ParseError(1, "", "CSV requires a header row");
    CsvTable table;
    table.header = records.front();
    for (std::size_t r = 1; r < records.size(); ++r) {
        auto row = records[r];
        row.resize(table.header.size());
        table.rows.push_back(std::move(row));
    }
    return table;
}

namespace {
std::string escape_cell(const std::string& cell) {
    if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}
}  // namespace

std::string serialize_csv(const CsvTable& table) {
    std::string out;
    auto emit_row = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += escape_cell(row[i]);
        }
        out += '\n';
    };
    emit_row(table.header);
    for (const auto& row : table.rows) emit_row(row);
    return out;
}

std::vector<std::string> split_multi_value(const std::string& cell) {
    std::vector<std::string> out;
    if (cell.empty()) return out;
    std::size_t start = 0;
    while (true) {
        std::size_t bar = cell.find('|', start);
        if (bar == std::string::npos) {
            out.push_back(cell.substr(start));
            break;
        }
        out.push_back(cell.substr(start, bar - start));
        start = bar + 1;
    }
    return out;
}

std::string join_multi_value(std::vector<std::string> values) {
    std::sort(values.begin(), values.end());
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += '|';
        out += values[i];
    }
    return out;
}

}  // namespace kgb
