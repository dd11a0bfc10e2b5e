// Command-line surface over the shared library C API. All numerical work
// lives behind slowsde.h; this file only resolves configuration, injects the
// timestamp, and routes output.

#include <slowsde/slowsde.h>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace {

struct FreeString {
    void operator()(char* s) const { slowsde_free_string(s); }
};
using ApiString = std::unique_ptr<char, FreeString>;

[[noreturn]] void die(const std::string& context) {
    std::cerr << "error: " << context;
    const char* detail = slowsde_last_error();
    if (detail && *detail) std::cerr << ": " << detail;
    std::cerr << "\n";
    std::exit(1);
}

void check(slowsde_status st, const std::string& context) {
    if (st != SLOWSDE_OK) die(context);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) die("cannot open config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Replaces (or appends) one key in key=value config text; flag overrides win
// over config-file values.
std::string set_key(const std::string& text, const std::string& key, const std::string& value) {
    std::string out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (!t.empty() && t[0] != '#') {
            const auto eq = t.find('=');
            if (eq != std::string::npos && trim(t.substr(0, eq)) == key) continue;
        }
        out += line;
        out += '\n';
    }
    out += key + "=" + value + "\n";
    return out;
}

std::string num17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Last value of a key in config text, empty when absent.
std::string get_key(const std::string& text, const std::string& key) {
    std::string found;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq != std::string::npos && trim(t.substr(0, eq)) == key)
            found = trim(t.substr(eq + 1));
    }
    return found;
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

// The timestamp is the one field excluded from byte-identity comparisons, so
// it is labeled the same way in both formats.
std::string stamp_csv(const std::string& body) {
    return "# timestamp=" + utc_timestamp() + "\n" + body;
}

std::string stamp_json(const std::string& body) {
    const auto brace = body.find("{\n");
    if (brace != 0) return body;
    return "{\n  \"timestamp\": \"" + utc_timestamp() + "\",\n" + body.substr(2);
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) die("cannot open output file " + out_path);
    out << text;
    if (!out) die("write failed for " + out_path);
}

struct ParamsHandle {
    slowsde_params* p = nullptr;
    ~ParamsHandle() { slowsde_params_destroy(p); }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"experiment and report surface for the slow-convergence SDE library"};
    app.require_subcommand(1);
    // Global options (--config, --out, --format, --seed) are accepted after
    // the subcommand name as well.
    app.fallthrough();

    std::string config_path;
    std::string out_path;
    std::string format;
    std::uint64_t seed = 0;
    bool seed_given = false;
    app.add_option("--config", config_path, "key=value config file")->type_name("PATH");
    app.add_option("--out", out_path, "output file (default stdout)")->type_name("PATH");
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option_function<std::uint64_t>(
           "--seed",
           [&](std::uint64_t v) {
               seed = v;
               seed_given = true;
           },
           "master seed (overrides the config key)")
        ->type_name("U64");

    auto* cmd_params = app.add_subcommand("params", "resolved parameter report (json)");
    auto* cmd_coeffs =
        app.add_subcommand("coeffs", "diffusion profile and drift gate table (csv|json)");
    double lo = -0.85, hi = 1.6;
    std::uint64_t points = 1000;
    cmd_coeffs->add_option("--lo", lo, "left end of the x range");
    cmd_coeffs->add_option("--hi", hi, "right end of the x range");
    cmd_coeffs->add_option("--points", points, "row count (>= 2)");

    auto* cmd_alpha =
        app.add_subcommand("alpha", "integrated profile energy report (json)");

    auto* cmd_bound = app.add_subcommand(
        "bound", "analytic error floor for window n (json report, csv sweep over 1..n)");
    std::uint64_t bound_n = 1;
    cmd_bound->add_option("-n,--n", bound_n, "window index (c = 5n)")
        ->check(CLI::PositiveNumber);

    auto* cmd_schedule =
        app.add_subcommand("schedule", "frequency schedule from radius/rate sequences (json)");
    std::uint64_t m_max = 0;
    cmd_schedule->add_option("--m-max", m_max, "window count (overrides the config key)");

    auto* cmd_simulate =
        app.add_subcommand("simulate", "strong-error table vs the coupled oracle (csv|json)");
    std::string steps_override;
    std::uint64_t samples_override = 0;
    int threads = 0;
    cmd_simulate->add_option("--steps", steps_override,
                             "comma-separated step counts (overrides steps_list)");
    cmd_simulate->add_option("--samples", samples_override, "Monte Carlo sample count");
    cmd_simulate->add_option("--threads", threads, "worker count");

    auto* cmd_optimal = app.add_subcommand(
        "optimal-error", "nested-MC optimal predictor error with two-point and floor (json)");
    double opt_a = -1.0, opt_b = -1.0;
    std::uint64_t opt_outer = 0, opt_inner = 0;
    cmd_optimal->add_option("--a", opt_a, "observation window start");
    cmd_optimal->add_option("--b", opt_b, "observation window end");
    cmd_optimal->add_option("--outer", opt_outer, "outer sample count");
    cmd_optimal->add_option("--inner", opt_inner, "inner sample count per outer draw");
    cmd_optimal->add_option("--threads", threads, "worker count");

    auto* cmd_verify =
        app.add_subcommand("verify", "run invariant suites; nonzero exit on failure (json)");
    std::vector<std::string> tags;
    cmd_verify->add_option("tags", tags, "suite tags (default: all)");
    cmd_verify->add_option("--threads", threads, "worker count");

    CLI11_PARSE(app, argc, argv);

    std::string config_text;
    if (!config_path.empty()) config_text = read_file(config_path);
    if (seed_given) config_text = set_key(config_text, "seed", std::to_string(seed));
    if (threads > 0) config_text = set_key(config_text, "threads", std::to_string(threads));

    ParamsHandle params;
    check(slowsde_params_create_kv(config_text.c_str(), &params.p), "resolving params");

    const auto emit_json = [&](char* raw, const std::string& what) {
        if (!format.empty() && format != "json") die(what + " only supports json output");
        ApiString owned(raw);
        emit(out_path, stamp_json(owned.get()));
    };

    if (cmd_params->parsed()) {
        char* text = nullptr;
        check(slowsde_params_report_json(params.p, &text), "params report");
        emit_json(text, "params");
        return 0;
    }

    if (cmd_coeffs->parsed()) {
        const std::string fmt = format.empty() ? "csv" : format;
        char* text = nullptr;
        check(slowsde_coeffs_table(params.p, lo, hi, points, fmt.c_str(), &text),
              "coefficient table");
        ApiString owned(text);
        emit(out_path, fmt == "csv" ? stamp_csv(owned.get()) : stamp_json(owned.get()));
        return 0;
    }

    if (cmd_alpha->parsed()) {
        char* text = nullptr;
        check(slowsde_alpha_report_json(params.p, &text), "alpha report");
        emit_json(text, "alpha");
        return 0;
    }

    if (cmd_bound->parsed()) {
        char* text = nullptr;
        if (format == "csv") {
            check(slowsde_bound_table(params.p, bound_n, &text), "bound sweep");
            ApiString owned(text);
            emit(out_path, stamp_csv(owned.get()));
        } else {
            check(slowsde_lower_bound_json(params.p, 5.0 * static_cast<double>(bound_n), &text),
                  "bound report");
            ApiString owned(text);
            std::string body = stamp_json(owned.get());
            // Embed the requested window index alongside the timestamp.
            const std::string marker = "\",\n";
            const auto pos = body.find(marker);
            if (pos != std::string::npos)
                body.insert(pos + marker.size(), "  \"n\": " + std::to_string(bound_n) + ",\n");
            emit(out_path, body);
        }
        return 0;
    }

    if (cmd_schedule->parsed()) {
        if (m_max > 0) config_text = set_key(config_text, "m_max", std::to_string(m_max));
        char* text = nullptr;
        check(slowsde_schedule_json(params.p, config_text.c_str(), &text), "schedule report");
        emit_json(text, "schedule");
        return 0;
    }

    if (cmd_simulate->parsed()) {
        if (!steps_override.empty()) config_text = set_key(config_text, "steps_list", steps_override);
        if (samples_override > 0)
            config_text = set_key(config_text, "samples", std::to_string(samples_override));
        const std::string fmt = format.empty() ? "csv" : format;
        char* text = nullptr;
        check(slowsde_simulate_table(params.p, config_text.c_str(), fmt.c_str(), &text),
              "simulation table");
        ApiString owned(text);
        emit(out_path, fmt == "csv" ? stamp_csv(owned.get()) : stamp_json(owned.get()));
        return 0;
    }

    if (cmd_optimal->parsed()) {
        if (opt_a >= 0.0) config_text = set_key(config_text, "a", num17(opt_a));
        if (opt_b >= 0.0) config_text = set_key(config_text, "b", num17(opt_b));
        if (opt_outer > 0) config_text = set_key(config_text, "outer", std::to_string(opt_outer));
        if (opt_inner > 0) config_text = set_key(config_text, "inner", std::to_string(opt_inner));
        char* text = nullptr;
        check(slowsde_optimal_error_json(params.p, config_text.c_str(), &text),
              "optimal error report");
        emit_json(text, "optimal-error");
        return 0;
    }

    if (cmd_verify->parsed()) {
        std::string tags_csv;
        for (const auto& t : tags) {
            if (!tags_csv.empty()) tags_csv += ',';
            tags_csv += t;
        }
        if (tags_csv.empty()) tags_csv = "all";
        std::uint64_t verify_seed = 815;
        if (seed_given) {
            verify_seed = seed;
        } else if (const std::string raw = get_key(config_text, "seed"); !raw.empty()) {
            verify_seed = std::strtoull(raw.c_str(), nullptr, 10);
        }
        int verify_threads = threads > 0 ? threads : 1;
        if (threads <= 0) {
            if (const std::string raw = get_key(config_text, "threads"); !raw.empty())
                verify_threads = static_cast<int>(std::strtol(raw.c_str(), nullptr, 10));
        }
        int all_pass = 0;
        char* text = nullptr;
        check(slowsde_verify_json(params.p, tags_csv.c_str(), verify_seed, verify_threads,
                                  &all_pass, &text),
              "verification");
        emit_json(text, "verify");
        return all_pass ? 0 : 1;
    }

    return 0;
}
