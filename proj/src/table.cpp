#include "qgt/table.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qgt {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    return buf;
}

void ResultTable::add_row(std::vector<double> row) {
    if (row.size() != columns.size()) {
        throw std::logic_error("ResultTable: row width does not match schema");
    }
    rows.push_back(std::move(row));
}

std::string ResultTable::to_csv() const {
    std::string out;
    out += "# " + name + "\n";
    for (const auto& [k, v] : metadata) out += "# " + k + "=" + v + "\n";
    for (size_t c = 0; c < columns.size(); ++c) {
        out += columns[c];
        out += (c + 1 < columns.size()) ? ',' : '\n';
    }
    for (const auto& row : rows) {
        for (size_t c = 0; c < row.size(); ++c) {
            out += format_double(row[c]);
            out += (c + 1 < row.size()) ? ',' : '\n';
        }
    }
    return out;
}

std::string ResultTable::to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["metadata"] = metadata;
    j["columns"] = columns;
    nlohmann::json rows_json = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json r = nlohmann::json::array();
        for (double v : row) r.push_back(format_double(v));
        rows_json.push_back(std::move(r));
    }
    j["rows"] = std::move(rows_json);
    return j.dump(2) + "\n";
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
}

} // namespace qgt
