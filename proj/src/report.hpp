#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coefficients.hpp"

namespace slowsde {

// Round-trip-exact decimal rendering of a double (17 significant digits).
std::string format_double(double v);

// One CSV line from prerendered cells; no quoting, cells must be plain.
std::string csv_line(std::span<const std::string> cells);

class CsvTable {
  public:
    explicit CsvTable(std::vector<std::string> header);

    void add_row(std::span<const double> values);
    void add_row_cells(std::vector<std::string> cells);
    std::string str() const;

  private:
    std::size_t width_;
    std::vector<std::string> lines_;
};

// Plain-text key=value config. Lines starting with '#' and blank lines are
// ignored; keys may not repeat.
using KvMap = std::map<std::string, std::string>;

KvMap parse_kv_text(const std::string& text);
KvMap load_kv_file(const std::string& path);

double kv_double(const KvMap& kv, const std::string& key, std::optional<double> fallback = {});
std::uint64_t kv_u64(const KvMap& kv, const std::string& key,
                     std::optional<std::uint64_t> fallback = {});
std::string kv_string(const KvMap& kv, const std::string& key,
                      std::optional<std::string> fallback = {});

// Comma-separated list of reals (for list-valued config keys).
std::vector<double> parse_double_list(const std::string& text);

// Whole file as a string; Errc::not_found when unreadable.
std::string load_text_file(const std::string& path);

// One real per line; blank lines and '#' comments skipped.
std::vector<double> parse_value_lines(const std::string& text);

Params params_from_kv(const KvMap& kv);

}  // namespace slowsde
