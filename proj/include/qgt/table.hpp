#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qgt {

// Column-schema'd numeric table with #-comment metadata. Serialization is
// deterministic: 12 significant digits, metadata sorted by key, no
// timestamps (those live in a separate sidecar).
struct ResultTable {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::map<std::string, std::string> metadata;

    void add_row(std::vector<double> row);
    std::string to_csv() const;
    std::string to_json() const;
};

std::string format_double(double v);

// FNV-1a 64 of a canonical string; used for config hashes.
std::uint64_t fnv1a64(const std::string& s);

void write_text_file(const std::string& path, const std::string& content);

} // namespace qgt
