#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace grcim {

inline constexpr const char* kToolVersion = "1.0.0";

// Deterministic numeric formatting shared by CSV and JSON output so reruns
// are byte-identical.
std::string format_num(double v);

struct RunMeta {
    std::string tool;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> config;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> cells);
};

void write_csv(std::ostream& os, const Table& t, const RunMeta& meta);
void write_json(std::ostream& os, const Table& t, const RunMeta& meta);

// Flat key=value config files; '#' starts a comment. CLI flags override.
std::map<std::string, std::string> parse_config_file(const std::string& path);

}  // namespace grcim
