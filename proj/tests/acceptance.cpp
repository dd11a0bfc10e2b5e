// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria 8 and 11 drive the installed CLI as a subprocess; the
// rest run in-process against the core library.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bounds.hpp"
#include "brownian.hpp"
#include "chirp.hpp"
#include "coefficients.hpp"
#include "dynamics.hpp"
#include "golden_values.hpp"
#include "report.hpp"
#include "verify.hpp"

using namespace slowsde;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Ctx {
    std::string detail;
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void spit(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

int run_cli(const std::string& args, const fs::path& log) {
    const std::string cmd = std::string(CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
    const int rc = std::system(cmd.c_str());
    return rc;
}

// CSV text with the timestamp provenance line removed; every other byte kept.
std::string strip_timestamp(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        const std::string line = text.substr(pos, end - pos);
        if (line.rfind("# timestamp=", 0) != 0) {
            out += line;
            out += '\n';
        }
        pos = end + 1;
    }
    return out;
}

void criterion_1(Ctx& c) {
    const auto p = make_params(1.5, 0.75, 0.8, 0.8);
    c.expect(std::abs(p.eps - 0.1238) <= 5e-5, "eps off: " + fmt(p.eps));
    c.expect(std::abs(p.tau1 - 0.8738) <= 5e-5, "tau1 off: " + fmt(p.tau1));
    c.expect(p.mu_norm >= 1.15e-30 && p.mu_norm <= 1.25e-30, "mu_norm off: " + fmt(p.mu_norm));
    c.detail = "eps=" + fmt(p.eps) + " tau1=" + fmt(p.tau1) + " mu_norm=" + fmt(p.mu_norm);
}

void run_suite_criterion(Ctx& c, const Params& p, const std::string& tag, int threads) {
    VerifyCfg cfg;
    cfg.threads = threads;
    const auto r = run_suite(p, tag, cfg);
    for (const auto& a : r.assertions)
        c.expect(a.pass, tag + ": " + a.name + " (measured=" + fmt(a.measured) +
                             " bound=" + fmt(a.bound) + ")");
    c.detail += tag + " " + std::to_string(r.assertions.size()) + " checks; ";
}

void criterion_4(Ctx& c, const Params& p) {
    c.expect(p.alpha >= 0.5600 && p.alpha <= 0.5752, "alpha outside bracket: " + fmt(p.alpha));
    c.expect(p.alpha >= 0.28125, "alpha below flat-profile floor");
    QuadratureCfg refined = p.quad;
    refined.tol /= 16.0;
    refined.node_count *= 2;
    const double again = profile_energy(p, refined);
    c.expect(std::abs(again - p.alpha) <= 1e-8,
             "alpha unstable under refinement: " + fmt(again - p.alpha));
    c.expect(std::abs(p.alpha - golden::alpha) <= 1e-9,
             "alpha drifted from frozen reference: " + fmt(p.alpha - golden::alpha));
    c.detail = "alpha=" + fmt(p.alpha) + " refinement_delta=" + fmt(again - p.alpha);
}

void criterion_8(Ctx& c, const fs::path& dir) {
    const fs::path cfg_path = dir / "chain.kv";
    spit(cfg_path,
         "T = 1.5\n"
         "tau = 0.75\n"
         "center = 5\n"
         "eps_width = 0.375\n"
         "a = 0\n"
         "b = 0.375\n"
         "outer = 1000\n"
         "inner = 10000\n"
         "two_point_samples = 100000\n"
         "seed = 815\n"
         "threads = 4\n");
    const fs::path artifact = dir / "chain_report.json";
    const int rc = run_cli("optimal-error --config " + cfg_path.string() + " --out " +
                               artifact.string(),
                           dir / "chain.log");
    c.expect(rc == 0, "CLI optimal-error exited with " + std::to_string(rc));
    if (rc != 0) return;

    const auto j = json::parse(slurp(artifact));
    const double opt = j.at("optimal").at("inner_estimate").at("estimate").get<double>();
    const double opt_se = j.at("optimal").at("inner_estimate").at("std_error").get<double>();
    const double tp = j.at("two_point").at("estimate").get<double>();
    const double tp_se = j.at("two_point").at("std_error").get<double>();
    const double log_bound = j.at("floor").at("log_bound").get<double>();

    c.expect(j.at("optimal").at("outer").get<std::uint64_t>() == 1000, "outer count drifted");
    c.expect(j.at("optimal").at("inner").get<std::uint64_t>() == 10000, "inner count drifted");
    c.expect(j.at("two_point").at("samples").get<std::uint64_t>() == 100000,
             "two-point sample count drifted");
    c.expect(opt >= tp - 3.0 * (opt_se + tp_se),
             "optimal error below two-point bound: " + fmt(opt) + " vs " + fmt(tp));
    c.expect(tp - 3.0 * tp_se >= std::exp(log_bound), "two-point below analytic floor");
    c.expect(j.at("chain").at("satisfied").get<bool>(), "artifact chain flag false");
    c.detail = "optimal=" + fmt(opt) + " two_point=" + fmt(tp) +
               " log10_floor=" + fmt(log_bound / std::numbers::ln10) + " artifact=" +
               artifact.string();
}

void criterion_9(Ctx& c, const Params& p) {
    const auto kv = load_kv_file(std::string(REPO_CONFIG_DIR) + "/experiment.kv");
    const auto seed = kv_u64(kv, "seed");
    const auto samples = kv_u64(kv, "samples");
    const int master = static_cast<int>(kv_u64(kv, "master_steps"));
    const double se_mult = kv_double(kv, "decay_se_mult");
    const double center = kv_double(kv, "plateau_center");
    const double width = kv_double(kv, "plateau_eps_width");
    const double min_ratio = kv_double(kv, "plateau_min_ratio");
    std::vector<int> steps;
    for (double v : parse_double_list(kv_string(kv, "steps_list")))
        steps.push_back(static_cast<int>(v));

    const auto flat = make_zero_phase();
    const auto decay = strong_error_experiment(p, flat, steps, samples, seed, master, 4);
    std::string means = "flat means:";
    for (const auto& row : decay) means += " " + fmt(row.mean_error);
    for (std::size_t j = 1; j < decay.size(); ++j) {
        const double slack = se_mult * std::hypot(decay[j - 1].std_error, decay[j].std_error);
        c.expect(decay[j].mean_error <= decay[j - 1].mean_error + slack,
                 "flat-phase error rose at " + std::to_string(decay[j].steps) + " steps");
    }

    const auto chirp = make_single_chirp(center, width, p.T);
    c.expect(chirp.windows.front().freq >= 1e3,
             "plateau chirp frequency too low: " + fmt(chirp.windows.front().freq));
    const auto plateau = strong_error_experiment(p, chirp, steps, samples, seed, master, 4);
    const double ratio = plateau.back().mean_error / plateau.front().mean_error;
    c.expect(ratio >= min_ratio, "plateau ratio " + fmt(ratio) + " below " + fmt(min_ratio));
    c.detail = means + "; plateau ratio=" + fmt(ratio) +
               " freq=" + fmt(chirp.windows.front().freq);
}

void criterion_10(Ctx& c, const Params& p) {
    const auto spec = make_single_chirp(5.0, 0.375, p.T);
    EmbeddingCfg cfg;
    cfg.dim = 5;
    cfg.brown_dim = 3;
    cfg.scale_c = 7.0;
    cfg.shift = {0.3, -0.2, 1.1, 2.2, -3.3};

    const auto base = euler_maruyama(p, spec, 4096, 815, 3, cfg);
    c.expect(base.state_T[2] == 1.1 && base.state_T[3] == 2.2 && base.state_T[4] == -3.3,
             "embedded components moved");

    const std::uint64_t sa[] = {501, 502, 503};
    const std::uint64_t sb[] = {501, 902, 903};
    const auto a = euler_maruyama(p, spec, 4096, 815, 3, cfg, nullptr, sa);
    const auto b = euler_maruyama(p, spec, 4096, 815, 3, cfg, nullptr, sb);
    bool same = true;
    for (std::size_t i = 0; i < a.state_T.size(); ++i) same = same && a.state_T[i] == b.state_T[i];
    c.expect(same, "state changed under re-randomized unused coordinates");
    c.expect(a.state_T[2] == 1.1 && a.state_T[3] == 2.2 && a.state_T[4] == -3.3,
             "pinned-coordinate run moved the constant components");

    const std::uint64_t sc[] = {601, 502, 503};
    const auto d = euler_maruyama(p, spec, 4096, 815, 3, cfg, nullptr, sc);
    c.expect(d.integral_T != a.integral_T, "first coordinate has no effect");
    c.detail = "clock_T=" + fmt(a.clock_T) + " integral_T=" + fmt(a.integral_T);
}

void criterion_11(Ctx& c, const fs::path& dir) {
    const fs::path cfg_path = dir / "simulate.kv";
    spit(cfg_path,
         "T = 1.5\n"
         "tau = 0.75\n"
         "steps_list = 16, 64\n"
         "samples = 200\n"
         "master_steps = 1024\n"
         "seed = 815\n"
         "chirp = zero\n");
    const fs::path a = dir / "sim_a.csv", b = dir / "sim_b.csv", m = dir / "sim_multi.csv";
    int rc = run_cli("simulate --config " + cfg_path.string() + " --threads 1 --out " + a.string(),
                     dir / "sim_a.log");
    rc |= run_cli("simulate --config " + cfg_path.string() + " --threads 1 --out " + b.string(),
                  dir / "sim_b.log");
    rc |= run_cli("simulate --config " + cfg_path.string() + " --threads 4 --out " + m.string(),
                  dir / "sim_multi.log");
    c.expect(rc == 0, "CLI simulate exited with " + std::to_string(rc));
    if (rc != 0) return;

    const std::string ta = strip_timestamp(slurp(a));
    const std::string tb = strip_timestamp(slurp(b));
    const std::string tm = strip_timestamp(slurp(m));
    c.expect(!ta.empty(), "empty CSV output");
    c.expect(ta == tb, "repeat run differs beyond the timestamp");
    c.expect(ta == tm, "worker count leaked into the CSV");
    c.expect(ta.find("threads") == std::string::npos, "threads key echoed into the CSV");
    c.detail = "csv bytes=" + std::to_string(ta.size()) + " runs identical";
}

}  // namespace

int main(int argc, char** argv) {
    // Optional args: criterion numbers to run (default: all).
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

    const auto p = make_params(1.5, 0.75);
    fs::path dir = fs::current_path() / "acceptance_artifacts";
    fs::create_directories(dir);

    struct Criterion {
        int id;
        double budget_s;
        std::function<void(Ctx&)> run;
    };
    const std::vector<Criterion> criteria = {
        {1, 1.0, [&](Ctx& c) { criterion_1(c); }},
        {2, 10.0, [&](Ctx& c) { run_suite_criterion(c, p, "lemma-2.1", 1); }},
        {3, 1.0, [&](Ctx& c) { run_suite_criterion(c, p, "lemma-2.2", 1); }},
        {4, 30.0, [&](Ctx& c) { criterion_4(c, p); }},
        {5, 60.0, [&](Ctx& c) { run_suite_criterion(c, p, "lemma-3.11", 4); }},
        {6, 30.0, [&](Ctx& c) { run_suite_criterion(c, p, "lemma-3.13", 1); }},
        {7, 10.0,
         [&](Ctx& c) {
             run_suite_criterion(c, p, "lemma-3.4", 1);
             run_suite_criterion(c, p, "lemma-3.5", 1);
         }},
        {8, 600.0, [&](Ctx& c) { criterion_8(c, dir); }},
        {9, 900.0, [&](Ctx& c) { criterion_9(c, p); }},
        {10, 10.0, [&](Ctx& c) { criterion_10(c, p); }},
        {11, 60.0, [&](Ctx& c) { criterion_11(c, dir); }},
    };

    int failed = 0;
    for (const auto& cr : criteria) {
        if (!only.empty() && !only.count(cr.id)) continue;
        Ctx ctx;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            cr.run(ctx);
        } catch (const std::exception& e) {
            ctx.failures.push_back(std::string("exception: ") + e.what());
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (elapsed > cr.budget_s)
            ctx.failures.push_back("runtime " + fmt(elapsed) + "s over budget " +
                                   fmt(cr.budget_s) + "s");

        if (ctx.failures.empty()) {
            std::printf("PASS criterion-%d: %s (%.2fs)\n", cr.id, ctx.detail.c_str(), elapsed);
        } else {
            ++failed;
            std::string why;
            for (const auto& f : ctx.failures) why += (why.empty() ? "" : "; ") + f;
            std::printf("FAIL criterion-%d: %s (%.2fs)\n", cr.id, why.c_str(), elapsed);
        }
        std::fflush(stdout);
    }
    return failed;
}
