#include "hawkes/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hawkes/errors.hpp"

namespace hawkes {

namespace {
std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}
} // namespace

void emit_csv_with_comments(const Table& t, const std::string& path, std::uint64_t seed,
                            std::uint64_t config_hash,
                            const std::vector<std::string>& comments) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("emit_csv: cannot write " + path);
    char meta[128];
    std::snprintf(meta, sizeof(meta), "# hawkes-longrange v%s seed=%llu config-hash=%016llx\n",
                  kVersion, static_cast<unsigned long long>(seed),
                  static_cast<unsigned long long>(config_hash));
    out << meta;
    for (const auto& c : comments) out << "# " << c << "\n";
    for (std::size_t i = 0; i < t.header.size(); ++i)
        out << (i ? "," : "") << t.header[i];
    out << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << format_real(row[i]);
        out << "\n";
    }
    if (!out) throw ConfigError("emit_csv: write failed for " + path);
}

void emit_csv(const Table& t, const std::string& path, std::uint64_t seed,
              std::uint64_t config_hash) {
    emit_csv_with_comments(t, path, seed, config_hash, {});
}

Table parse_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("parse_csv: cannot read " + path);
    Table t;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (t.meta.empty()) t.meta = line;
            continue;
        }
        std::stringstream ss(line);
        std::string field;
        if (!have_header) {
            while (std::getline(ss, field, ',')) t.header.push_back(field);
            have_header = true;
            continue;
        }
        std::vector<double> row;
        while (std::getline(ss, field, ',')) {
            char* end = nullptr;
            const double v = std::strtod(field.c_str(), &end);
            if (end == field.c_str())
                throw ConfigError("parse_csv: non-numeric field '" + field + "' in " + path);
            row.push_back(v);
        }
        if (row.size() != t.header.size())
            throw ConfigError("parse_csv: ragged row in " + path);
        t.rows.push_back(std::move(row));
    }
    if (!have_header) throw ConfigError("parse_csv: no header row in " + path);
    return t;
}

namespace {
std::string hash_of(const std::string& meta, const std::string& path) {
    const std::string key = "config-hash=";
    const auto pos = meta.find(key);
    if (pos == std::string::npos)
        throw ConfigError("tables_match: no config hash in " + path);
    return meta.substr(pos + key.size(), 16);
}
} // namespace

bool tables_match(const std::string& path_a, const std::string& path_b) {
    const Table a = parse_csv(path_a);
    const Table b = parse_csv(path_b);
    if (hash_of(a.meta, path_a) != hash_of(b.meta, path_b))
        throw ConfigError("tables_match: refusing to compare tables with different config "
                          "hashes (" + path_a + " vs " + path_b + ")");
    return a == b;
}

} // namespace hawkes
