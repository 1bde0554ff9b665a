#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hawkes {

inline constexpr const char* kVersion = "0.1.0";

// Numeric table with a metadata comment line. Reals are written with 17
// significant digits so emit/parse round-trips field-exactly.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::string meta; // filled by parse_csv

    bool operator==(const Table& o) const { return header == o.header && rows == o.rows; }
};

void emit_csv(const Table& t, const std::string& path, std::uint64_t seed,
              std::uint64_t config_hash);
Table parse_csv(const std::string& path);

// extra comment lines (config echo) after the metadata line
void emit_csv_with_comments(const Table& t, const std::string& path, std::uint64_t seed,
                            std::uint64_t config_hash, const std::vector<std::string>& comments);

// Field-exact comparison of two emitted tables. Tables carrying different
// config hashes are never compared; that raises a config error.
bool tables_match(const std::string& path_a, const std::string& path_b);

} // namespace hawkes
