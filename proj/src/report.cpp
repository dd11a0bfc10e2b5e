#include "report.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "error.hpp"

namespace slowsde {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_line(std::span<const std::string> cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    return line;
}

CsvTable::CsvTable(std::vector<std::string> header) : width_(header.size()) {
    require(width_ >= 1, "csv header non-empty");
    lines_.push_back(csv_line(header));
}

void CsvTable::add_row(std::span<const double> values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_double(v));
    add_row_cells(std::move(cells));
}

void CsvTable::add_row_cells(std::vector<std::string> cells) {
    require(cells.size() == width_, "csv row width matches header");
    lines_.push_back(csv_line(cells));
}

std::string CsvTable::str() const {
    std::string out;
    for (const auto& l : lines_) {
        out += l;
        out += '\n';
    }
    return out;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

KvMap parse_kv_text(const std::string& text) {
    KvMap kv;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw Error(Errc::invalid_argument, "config line missing '=': " + t);
        const std::string key = trim(t.substr(0, eq));
        const std::string val = trim(t.substr(eq + 1));
        if (key.empty()) throw Error(Errc::invalid_argument, "config line with empty key");
        if (!kv.emplace(key, val).second)
            throw Error(Errc::invalid_argument, "duplicate config key: " + key);
    }
    return kv;
}

KvMap load_kv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::not_found, "cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_kv_text(buf.str());
}

namespace {

const std::string& kv_raw(const KvMap& kv, const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw Error(Errc::not_found, "missing config key: " + key);
    return it->second;
}

}  // namespace

double kv_double(const KvMap& kv, const std::string& key, std::optional<double> fallback) {
    if (!kv.count(key) && fallback) return *fallback;
    const std::string& raw = kv_raw(kv, key);
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(raw.c_str(), &end);
    if (errno || end == raw.c_str() || *end != '\0')
        throw Error(Errc::invalid_argument, "config value for " + key + " is not a number");
    return v;
}

std::uint64_t kv_u64(const KvMap& kv, const std::string& key,
                     std::optional<std::uint64_t> fallback) {
    if (!kv.count(key) && fallback) return *fallback;
    const std::string& raw = kv_raw(kv, key);
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(raw.c_str(), &end, 10);
    if (errno || end == raw.c_str() || *end != '\0')
        throw Error(Errc::invalid_argument, "config value for " + key + " is not an integer");
    return v;
}

std::string kv_string(const KvMap& kv, const std::string& key,
                      std::optional<std::string> fallback) {
    if (!kv.count(key) && fallback) return *fallback;
    return kv_raw(kv, key);
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const std::string t = trim(item);
        if (t.empty()) throw Error(Errc::invalid_argument, "empty entry in list value");
        errno = 0;
        char* end = nullptr;
        const double v = std::strtod(t.c_str(), &end);
        if (errno || end == t.c_str() || *end != '\0')
            throw Error(Errc::invalid_argument, "list entry is not a number: " + t);
        out.push_back(v);
    }
    require(!out.empty(), "list value non-empty");
    return out;
}

std::string load_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::not_found, "cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<double> parse_value_lines(const std::string& text) {
    std::vector<double> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        errno = 0;
        char* end = nullptr;
        const double v = std::strtod(t.c_str(), &end);
        if (errno || end == t.c_str() || *end != '\0')
            throw Error(Errc::invalid_argument, "value line is not a number: " + t);
        out.push_back(v);
    }
    require(!out.empty(), "value file non-empty");
    return out;
}

Params params_from_kv(const KvMap& kv) {
    QuadratureCfg quad;
    quad.tol = kv_double(kv, "quad_tol", quad.tol);
    return make_params(kv_double(kv, "T", 1.5), kv_double(kv, "tau", 0.75),
                       kv_double(kv, "eps_frac", 0.8), kv_double(kv, "tau2_frac", 0.8), quad);
}

}  // namespace slowsde
