#include "grcim/runio.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace grcim {

namespace {
std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}
}  // namespace

std::string format_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void Table::add_row(std::vector<std::string> cells) {
    rows.push_back(std::move(cells));
}

void write_csv(std::ostream& os, const Table& t, const RunMeta& meta) {
    os << "# tool=" << meta.tool << "\n";
    os << "# version=" << kToolVersion << "\n";
    os << "# seed=" << meta.seed << "\n";
    for (const auto& [k, v] : meta.config) os << "# " << k << "=" << v << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << row[i];
        os << "\n";
    }
}

void write_json(std::ostream& os, const Table& t, const RunMeta& meta) {
    nlohmann::json j;
    j["meta"]["tool"] = meta.tool;
    j["meta"]["version"] = kToolVersion;
    j["meta"]["seed"] = meta.seed;
    auto& cfg = j["meta"]["config"] = nlohmann::json::object();
    for (const auto& [k, v] : meta.config) cfg[k] = v;
    j["columns"] = t.columns;
    j["rows"] = t.rows;
    os << j.dump(2) << "\n";
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file: " + path);
    std::map<std::string, std::string> out;
    std::string line;
    while (std::getline(f, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("bad config line: " + line);
        std::string k = trim(line.substr(0, eq));
        std::string v = trim(line.substr(eq + 1));
        if (k.empty()) throw std::runtime_error("bad config line: " + line);
        out[k] = v;
    }
    return out;
}

}  // namespace grcim
