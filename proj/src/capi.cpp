#include "slowsde/slowsde.h"

#include <array>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include <json.hpp>

#include "bounds.hpp"
#include "brownian.hpp"
#include "chirp.hpp"
#include "coefficients.hpp"
#include "dynamics.hpp"
#include "error.hpp"
#include "report.hpp"
#include "verify.hpp"

using ordered_json = nlohmann::ordered_json;

struct slowsde_params {
    slowsde::Params value;
};

struct slowsde_chirp {
    slowsde::ChirpSpec value;
};

namespace {

thread_local std::string t_last_error;

slowsde_status to_status(slowsde::Errc c) {
    switch (c) {
        case slowsde::Errc::ok: return SLOWSDE_OK;
        case slowsde::Errc::invalid_argument: return SLOWSDE_EINVAL;
        case slowsde::Errc::constraint: return SLOWSDE_ECONSTRAINT;
        case slowsde::Errc::quadrature: return SLOWSDE_EQUADRATURE;
        case slowsde::Errc::horizon: return SLOWSDE_EHORIZON;
        case slowsde::Errc::not_found: return SLOWSDE_ENOTFOUND;
    }
    return SLOWSDE_EINTERNAL;
}

template <class Fn>
slowsde_status guarded(Fn&& fn) {
    try {
        fn();
        t_last_error.clear();
        return SLOWSDE_OK;
    } catch (const slowsde::Error& e) {
        t_last_error = e.what();
        return to_status(e.code());
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return SLOWSDE_EINTERNAL;
    } catch (...) {
        t_last_error = "unknown failure";
        return SLOWSDE_EINTERNAL;
    }
}

char* dup_cstr(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

const slowsde::Params& deref(const slowsde_params* p) {
    if (!p) throw slowsde::Error(slowsde::Errc::invalid_argument, "null params handle");
    return p->value;
}

const slowsde::ChirpSpec& deref(const slowsde_chirp* c) {
    if (!c) throw slowsde::Error(slowsde::Errc::invalid_argument, "null chirp handle");
    return c->value;
}

template <class T>
void store(T* slot, const T& v) {
    if (!slot) throw slowsde::Error(slowsde::Errc::invalid_argument, "null output pointer");
    *slot = v;
}

ordered_json params_json(const slowsde::Params& p) {
    return ordered_json{{"T", p.T},
                        {"tau", p.tau},
                        {"eps_frac", p.eps_frac},
                        {"tau2_frac", p.tau2_frac},
                        {"eps", p.eps},
                        {"tau1", p.tau1},
                        {"tau2", p.tau2},
                        {"mu_norm", p.mu_norm},
                        {"alpha", p.alpha},
                        {"quad_tol", p.quad.tol}};
}

ordered_json finite_or_null(double v) {
    if (std::isfinite(v)) return ordered_json(v);
    return ordered_json(nullptr);
}

// "# key=value" provenance block for CSV outputs; every report embeds the
// resolved params.
std::string params_comment_lines(const slowsde::Params& p) {
    std::string text;
    const auto add = [&](const char* k, double v) {
        text += "# ";
        text += k;
        text += '=';
        text += slowsde::format_double(v);
        text += '\n';
    };
    add("T", p.T);
    add("tau", p.tau);
    add("eps_frac", p.eps_frac);
    add("tau2_frac", p.tau2_frac);
    add("eps", p.eps);
    add("tau1", p.tau1);
    add("tau2", p.tau2);
    add("mu_norm", p.mu_norm);
    add("alpha", p.alpha);
    add("quad_tol", p.quad.tol);
    return text;
}

ordered_json mc_json(const slowsde::McEstimate& e) {
    return ordered_json{
        {"estimate", e.estimate}, {"std_error", e.std_error}, {"samples", e.samples}};
}

ordered_json bound_json_body(const slowsde::LowerBoundReport& r) {
    ordered_json j;
    j["c_center"] = r.c_center;
    j["log_prefactor"] = r.log_prefactor;
    j["sin_weight"] = r.sin_weight;
    j["log_gauss_window"] = r.log_gauss_window;
    j["log_bound"] = r.log_bound;
    j["log10_bound"] = r.log_bound / std::numbers::ln10;
    const double linear = std::exp(r.log_bound);
    j["bound_linear"] = linear > 1e-300 ? ordered_json(linear) : ordered_json(nullptr);
    return j;
}

slowsde::ErrorSequence seq_from_kv(const slowsde::KvMap& kv, const std::string& prefix) {
    if (kv.count(prefix + "_file")) {
        const std::string kind = slowsde::kv_string(kv, prefix + "_kind", "list");
        slowsde::require(kind == "list", prefix + "_file implies a list sequence");
        return slowsde::make_list_sequence(slowsde::parse_value_lines(
            slowsde::load_text_file(slowsde::kv_string(kv, prefix + "_file"))));
    }
    const std::string kind = slowsde::kv_string(kv, prefix + "_kind");
    if (kind == "list")
        return slowsde::make_list_sequence(
            slowsde::parse_double_list(slowsde::kv_string(kv, prefix + "_values")));
    const std::uint64_t horizon =
        slowsde::kv_u64(kv, prefix + "_horizon", slowsde::ErrorSequence::kUnbounded);
    if (kind == "power")
        return slowsde::make_power_sequence(slowsde::kv_double(kv, prefix + "_kappa", 1.0),
                                            slowsde::kv_double(kv, prefix + "_expo", 1.0),
                                            horizon);
    if (kind == "log_decay") return slowsde::make_log_decay_sequence(horizon);
    throw slowsde::Error(slowsde::Errc::invalid_argument,
                         "unknown sequence kind: " + kind + " (list | power | log_decay)");
}

slowsde::ChirpSpec chirp_from_kv(const slowsde::Params& p, const slowsde::KvMap& kv) {
    const std::string kind = slowsde::kv_string(kv, "chirp", "zero");
    if (kind == "zero") return slowsde::make_zero_phase();
    if (kind == "single")
        return slowsde::make_single_chirp(slowsde::kv_double(kv, "center", 5.0),
                                          slowsde::kv_double(kv, "eps_width"), p.T);
    throw slowsde::Error(slowsde::Errc::invalid_argument,
                         "unknown chirp kind: " + kind + " (zero | single)");
}

std::vector<int> int_list_from_kv(const slowsde::KvMap& kv, const std::string& key) {
    const auto raw = slowsde::parse_double_list(slowsde::kv_string(kv, key));
    std::vector<int> out;
    out.reserve(raw.size());
    for (double v : raw) {
        const int i = static_cast<int>(v);
        if (static_cast<double>(i) != v || i < 1)
            throw slowsde::Error(slowsde::Errc::invalid_argument,
                                 key + " entries must be positive integers");
        out.push_back(i);
    }
    return out;
}

ordered_json chirp_config_json(const slowsde::KvMap& kv) {
    ordered_json j;
    j["chirp"] = slowsde::kv_string(kv, "chirp", "zero");
    if (j["chirp"] == "single") {
        j["center"] = slowsde::kv_double(kv, "center", 5.0);
        j["eps_width"] = slowsde::kv_double(kv, "eps_width");
    }
    return j;
}

}  // namespace

extern "C" {

const char* slowsde_last_error(void) { return t_last_error.c_str(); }

void slowsde_free_string(char* s) { std::free(s); }

slowsde_status slowsde_params_create_kv(const char* config_text, slowsde_params** out) {
    return guarded([&] {
        const auto kv = slowsde::parse_kv_text(config_text ? config_text : "");
        auto p = std::make_unique<slowsde_params>(slowsde_params{slowsde::params_from_kv(kv)});
        store(out, p.get());
        p.release();
    });
}

slowsde_status slowsde_params_create(double T, double tau, double eps_frac, double tau2_frac,
                                     double quad_tol, slowsde_params** out) {
    return guarded([&] {
        slowsde::QuadratureCfg quad;
        if (quad_tol > 0.0) quad.tol = quad_tol;
        auto p = std::make_unique<slowsde_params>(
            slowsde_params{slowsde::make_params(T, tau, eps_frac, tau2_frac, quad)});
        store(out, p.get());
        p.release();
    });
}

void slowsde_params_destroy(slowsde_params* p) { delete p; }

slowsde_status slowsde_params_get(const slowsde_params* p, const char* name, double* out) {
    return guarded([&] {
        const auto& v = deref(p);
        if (!name) throw slowsde::Error(slowsde::Errc::invalid_argument, "null name");
        const std::string key(name);
        double r;
        if (key == "T")
            r = v.T;
        else if (key == "tau")
            r = v.tau;
        else if (key == "eps")
            r = v.eps;
        else if (key == "tau1")
            r = v.tau1;
        else if (key == "tau2")
            r = v.tau2;
        else if (key == "mu_norm")
            r = v.mu_norm;
        else if (key == "alpha")
            r = v.alpha;
        else
            throw slowsde::Error(slowsde::Errc::not_found, "unknown parameter name: " + key);
        store(out, r);
    });
}

slowsde_status slowsde_profile(const slowsde_params* p, double x, double* out) {
    return guarded([&] { store(out, slowsde::diffusion_profile(deref(p), x)); });
}

slowsde_status slowsde_profile_slope(const slowsde_params* p, double x, double* out) {
    return guarded([&] { store(out, slowsde::diffusion_profile_slope(deref(p), x)); });
}

slowsde_status slowsde_gate(const slowsde_params* p, double x, double* out) {
    return guarded([&] { store(out, slowsde::drift_gate(deref(p), x)); });
}

slowsde_status slowsde_gate_slope(const slowsde_params* p, double x, double* out) {
    return guarded([&] { store(out, slowsde::drift_gate_slope(deref(p), x)); });
}

slowsde_status slowsde_chirp_zero(slowsde_chirp** out) {
    return guarded([&] {
        auto c = std::make_unique<slowsde_chirp>(slowsde_chirp{slowsde::make_zero_phase()});
        store(out, c.get());
        c.release();
    });
}

slowsde_status slowsde_chirp_single(double center, double eps_width, double T,
                                    slowsde_chirp** out) {
    return guarded([&] {
        auto c = std::make_unique<slowsde_chirp>(
            slowsde_chirp{slowsde::make_single_chirp(center, eps_width, T)});
        store(out, c.get());
        c.release();
    });
}

void slowsde_chirp_destroy(slowsde_chirp* c) { delete c; }

slowsde_status slowsde_chirp_eval(const slowsde_chirp* c, double x, double* out) {
    return guarded([&] { store(out, slowsde::eval_chirp(deref(c), x)); });
}

slowsde_status slowsde_clock_terminal(const slowsde_params* p, double level, int ode_steps,
                                      double* out) {
    return guarded([&] {
        const auto& v = deref(p);
        store(out, slowsde::solve_gated_clock(v, level, v.T, slowsde::OdeCfg{ode_steps}));
    });
}

slowsde_status slowsde_euler_terminal(const slowsde_params* p, const slowsde_chirp* c, int steps,
                                      uint64_t seed, uint64_t stream, int dim, int brown_dim,
                                      double scale_c, const double* xi, double* state_out,
                                      double* clock_out, double* integral_out) {
    return guarded([&] {
        slowsde::EmbeddingCfg cfg;
        cfg.dim = dim;
        cfg.brown_dim = brown_dim;
        cfg.scale_c = scale_c;
        if (xi) cfg.shift.assign(xi, xi + dim);
        const auto r = slowsde::euler_maruyama(deref(p), deref(c), steps, seed, stream, cfg);
        if (!state_out)
            throw slowsde::Error(slowsde::Errc::invalid_argument, "null output pointer");
        for (int i = 0; i < dim; ++i) state_out[i] = r.state_T[static_cast<std::size_t>(i)];
        if (clock_out) *clock_out = r.clock_T;
        if (integral_out) *integral_out = r.integral_T;
    });
}

slowsde_status slowsde_oracle_terminal(const slowsde_params* p, const slowsde_chirp* c,
                                       double frozen_integral, int ode_steps, double* out) {
    return guarded([&] {
        store(out, slowsde::exact_terminal_clock(deref(p), deref(c), frozen_integral,
                                                 slowsde::OdeCfg{ode_steps}));
    });
}

slowsde_status slowsde_sin_measure(double c, double beta, uint64_t grid_n, double* out) {
    return guarded([&] { store(out, slowsde::sin_measure(c, beta, grid_n)); });
}

slowsde_status slowsde_params_report_json(const slowsde_params* p, char** out) {
    return guarded([&] {
        const auto& v = deref(p);
        ordered_json j;
        j["params"] = params_json(v);
        j["alpha_closed_form_piece"] = v.alpha_closed_piece;
        j["alpha_floor"] = 2.0 * v.tau * v.tau * v.tau / 3.0;
        store(out, dup_cstr(j.dump(2) + "\n"));
    });
}

slowsde_status slowsde_alpha_report_json(const slowsde_params* p, char** out) {
    return guarded([&] {
        const auto& v = deref(p);
        slowsde::QuadratureCfg refined = v.quad;
        refined.tol *= 1.0 / 16.0;
        refined.node_count *= 2;
        const double alpha_refined = slowsde::profile_energy(v, refined);
        ordered_json j;
        j["alpha"] = v.alpha;
        j["alpha_closed_form_piece"] = v.alpha_closed_piece;
        j["alpha_floor"] = 2.0 * v.tau * v.tau * v.tau / 3.0;
        j["alpha_refined"] = alpha_refined;
        j["refinement_delta"] = std::abs(alpha_refined - v.alpha);
        j["params"] = params_json(v);
        store(out, dup_cstr(j.dump(2) + "\n"));
    });
}

slowsde_status slowsde_coeffs_table(const slowsde_params* p, double x_lo, double x_hi,
                                    uint64_t points, const char* format, char** out) {
    return guarded([&] {
        const auto& v = deref(p);
        slowsde::require(points >= 2, "points >= 2");
        slowsde::require(x_lo < x_hi, "x_lo < x_hi");
        const std::string fmt = format ? format : "csv";

        std::vector<std::array<double, 3>> rows;
        rows.reserve(points);
        for (std::uint64_t i = 0; i < points; ++i) {
            const double x = x_lo + (x_hi - x_lo) * static_cast<double>(i) /
                                        static_cast<double>(points - 1);
            rows.push_back({x, slowsde::diffusion_profile(v, x), slowsde::drift_gate(v, x)});
        }

        if (fmt == "csv") {
            slowsde::CsvTable table({"x", "profile", "gate"});
            for (const auto& r : rows) table.add_row(r);
            store(out, dup_cstr(params_comment_lines(v) + table.str()));
        } else if (fmt == "json") {
            ordered_json j;
            j["header"] = {"x", "profile", "gate"};
            j["rows"] = rows;
            j["params"] = params_json(v);
            store(out, dup_cstr(j.dump(2) + "\n"));
        } else {
            throw slowsde::Error(slowsde::Errc::invalid_argument,
                                 "unknown format: " + fmt + " (csv | json)");
        }
    });
}

slowsde_status slowsde_lower_bound_json(const slowsde_params* p, double c_center, char** out) {
    return guarded([&] {
        const auto& v = deref(p);
        const auto r = slowsde::lower_bound(v, c_center);
        ordered_json j = bound_json_body(r);
        j["log10_gauss_window"] = r.log_gauss_window / std::numbers::ln10;
        j["params"] = params_json(v);
        store(out, dup_cstr(j.dump(2) + "\n"));
    });
}

slowsde_status slowsde_bound_table(const slowsde_params* p, uint64_t n_max, char** out) {
    return guarded([&] {
        const auto& v = deref(p);
        slowsde::require(n_max >= 1, "n_max >= 1");
        slowsde::CsvTable table({"n", "c_center", "log_prefactor", "sin_weight",
                                 "log_gauss_window", "log_bound", "log10_bound",
                                 "bound_linear"});
        for (std::uint64_t n = 1; n <= n_max; ++n) {
            const auto r = slowsde::lower_bound(v, 5.0 * static_cast<double>(n));
            const double linear = std::exp(r.log_bound);
            table.add_row_cells({std::to_string(n), slowsde::format_double(r.c_center),
                                 slowsde::format_double(r.log_prefactor),
                                 slowsde::format_double(r.sin_weight),
                                 slowsde::format_double(r.log_gauss_window),
                                 slowsde::format_double(r.log_bound),
                                 slowsde::format_double(r.log_bound / std::numbers::ln10),
                                 linear > 1e-300 ? slowsde::format_double(linear) : ""});
        }
        store(out, dup_cstr(params_comment_lines(v) + table.str()));
    });
}

slowsde_status slowsde_schedule_json(const slowsde_params* p, const char* config_text,
                                     char** out) {
    return guarded([&] {
        const auto& v = deref(p);
        const auto kv = slowsde::parse_kv_text(config_text ? config_text : "");
        const std::uint64_t m_max = slowsde::kv_u64(kv, "m_max", 3);

        auto radius = slowsde::prefix_min(seq_from_kv(kv, "eps"));
        if (slowsde::kv_u64(kv, "adjust_for_evaluations", 0))
            radius = slowsde::adjust_for_evaluations(radius);
        const auto rate = slowsde::tail_sup(seq_from_kv(kv, "delta"));

        auto floor_at = [&](std::uint64_t m) { return slowsde::log_error_floor_at(v, m); };
        const auto sched = slowsde::build_frequency_schedule(v, radius, rate, m_max, floor_at);

        ordered_json entries = ordered_json::array();
        for (const auto& e : sched.entries) {
            ordered_json je;
            je["m"] = e.m;
            je["center"] = e.center;
            je["n"] = e.n.exact ? ordered_json(e.n.n) : ordered_json(nullptr);
            je["ln_n"] = e.n.ln_n;
            je["log10_n"] = e.n.ln_n / std::numbers::ln10;
            je["log_floor"] = e.log_floor;
            je["log_delta"] = finite_or_null(e.log_delta);
            entries.push_back(je);
        }
        ordered_json windows = ordered_json::array();
        for (const auto& w : sched.spec.windows) {
            ordered_json jw;
            jw["center"] = w.center;
            jw["freq"] = finite_or_null(w.freq);
            jw["log_freq"] = w.log_freq;
            windows.push_back(jw);
        }

        ordered_json j;
        j["m_max"] = m_max;
        j["entries"] = entries;
        j["windows"] = windows;
        if (kv.count("n0")) {
            const std::uint64_t n0 = slowsde::kv_u64(kv, "n0");
            const double log_c = slowsde::scaling_constant(rate, n0, floor_at);
            j["scaling"] = ordered_json{{"n0", n0},
                                        {"log_c", log_c},
                                        {"log10_c", log_c / std::numbers::ln10}};
        }
        j["params"] = params_json(v);
        store(out, dup_cstr(j.dump(2) + "\n"));
    });
}

slowsde_status slowsde_simulate_table(const slowsde_params* p, const char* config_text,
                                      const char* format, char** out) {
    return guarded([&] {
        const auto& v = deref(p);
        const auto kv = slowsde::parse_kv_text(config_text ? config_text : "");
        const auto step_list = int_list_from_kv(kv, "steps_list");
        const std::uint64_t samples = slowsde::kv_u64(kv, "samples", 1000);
        const std::uint64_t seed = slowsde::kv_u64(kv, "seed", 1);
        const int master_steps = static_cast<int>(slowsde::kv_u64(kv, "master_steps", 16384));
        const int threads = static_cast<int>(slowsde::kv_u64(kv, "threads", 1));
        const int ode_steps = static_cast<int>(slowsde::kv_u64(kv, "ode_steps", 1024));
        const auto spec = chirp_from_kv(v, kv);

        const auto rows = slowsde::strong_error_experiment(
            v, spec, step_list, samples, seed, master_steps, threads,
            slowsde::OdeCfg{ode_steps});

        const std::string fmt = format ? format : "csv";
        if (fmt == "csv") {
            std::string text = params_comment_lines(v);
            text += "# seed=" + std::to_string(seed) + "\n";
            text += "# samples=" + std::to_string(samples) + "\n";
            text += "# master_steps=" + std::to_string(master_steps) + "\n";
            text += "# ode_steps=" + std::to_string(ode_steps) + "\n";
            const auto cj = chirp_config_json(kv);
            text += "# chirp=" + cj["chirp"].get<std::string>() + "\n";
            if (cj.contains("center")) {
                text += "# center=" + slowsde::format_double(cj["center"].get<double>()) + "\n";
                text +=
                    "# eps_width=" + slowsde::format_double(cj["eps_width"].get<double>()) + "\n";
            }
            slowsde::CsvTable table({"steps", "mean_error", "std_error", "samples"});
            for (const auto& r : rows)
                table.add_row_cells({std::to_string(r.steps), slowsde::format_double(r.mean_error),
                                     slowsde::format_double(r.std_error),
                                     std::to_string(r.samples)});
            store(out, dup_cstr(text + table.str()));
        } else if (fmt == "json") {
            ordered_json j;
            j["config"] = chirp_config_json(kv);
            j["config"]["seed"] = seed;
            j["config"]["samples"] = samples;
            j["config"]["master_steps"] = master_steps;
            j["config"]["ode_steps"] = ode_steps;
            ordered_json jr = ordered_json::array();
            for (const auto& r : rows)
                jr.push_back(ordered_json{{"steps", r.steps},
                                          {"mean_error", r.mean_error},
                                          {"std_error", r.std_error},
                                          {"samples", r.samples}});
            j["rows"] = jr;
            j["params"] = params_json(v);
            store(out, dup_cstr(j.dump(2) + "\n"));
        } else {
            throw slowsde::Error(slowsde::Errc::invalid_argument,
                                 "unknown format: " + fmt + " (csv | json)");
        }
    });
}

slowsde_status slowsde_optimal_error_json(const slowsde_params* p, const char* config_text,
                                          char** out) {
    return guarded([&] {
        const auto& v = deref(p);
        const auto kv = slowsde::parse_kv_text(config_text ? config_text : "");
        const double center = slowsde::kv_double(kv, "center", 5.0);
        const double eps_width = slowsde::kv_double(kv, "eps_width", 0.375);
        const double a = slowsde::kv_double(kv, "a", 0.0);
        const double b = slowsde::kv_double(kv, "b", eps_width);
        const std::uint64_t outer = slowsde::kv_u64(kv, "outer", 1000);
        const std::uint64_t inner = slowsde::kv_u64(kv, "inner", 10000);
        const std::uint64_t samples = slowsde::kv_u64(kv, "two_point_samples", 100000);
        const std::uint64_t seed = slowsde::kv_u64(kv, "seed", 1);
        const int threads = static_cast<int>(slowsde::kv_u64(kv, "threads", 1));

        const auto spec = slowsde::make_single_chirp(center, eps_width, v.T);
        const slowsde::TerminalClockTable table(v);
        const auto tp =
            slowsde::two_point_lower_estimate(v, spec, a, b, samples, seed, threads, &table);
        const auto opt =
            slowsde::optimal_predictor_error(v, spec, a, b, outer, inner, seed, threads, &table);
        const auto lb = slowsde::lower_bound(v, center);

        const double slack_tp = opt.inner_estimate.estimate - tp.estimate +
                                3.0 * (opt.inner_estimate.std_error + tp.std_error);
        const double floor_linear = std::exp(lb.log_bound);
        const double slack_floor = tp.estimate - 3.0 * tp.std_error - floor_linear;

        ordered_json j;
        j["config"] = ordered_json{{"center", center},   {"eps_width", eps_width},
                                   {"a", a},             {"b", b},
                                   {"outer", outer},     {"inner", inner},
                                   {"two_point_samples", samples},
                                   {"seed", seed}};
        j["optimal"] = ordered_json{{"inner_estimate", mc_json(opt.inner_estimate)},
                                    {"double_inner_estimate", mc_json(opt.double_inner_estimate)},
                                    {"outer", opt.outer},
                                    {"inner", opt.inner}};
        j["two_point"] = mc_json(tp);
        j["floor"] = bound_json_body(lb);
        j["chain"] = ordered_json{{"optimal_above_two_point_slack", slack_tp},
                                  {"two_point_above_floor_slack", slack_floor},
                                  {"satisfied", slack_tp >= 0.0 && slack_floor >= 0.0}};
        j["params"] = params_json(v);
        store(out, dup_cstr(j.dump(2) + "\n"));
    });
}

slowsde_status slowsde_verify_json(const slowsde_params* p, const char* tags_csv, uint64_t seed,
                                   int threads, int* all_pass, char** out) {
    return guarded([&] {
        const auto& v = deref(p);
        std::vector<std::string> tags;
        const std::string raw = tags_csv ? tags_csv : "all";
        if (raw == "all" || raw.empty()) {
            tags = slowsde::verify_suite_tags();
        } else {
            std::size_t pos = 0;
            while (pos <= raw.size()) {
                const auto comma = raw.find(',', pos);
                const auto end = comma == std::string::npos ? raw.size() : comma;
                std::string tag = raw.substr(pos, end - pos);
                const auto b = tag.find_first_not_of(" \t");
                const auto e = tag.find_last_not_of(" \t");
                if (b != std::string::npos) tags.push_back(tag.substr(b, e - b + 1));
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
            slowsde::require(!tags.empty(), "at least one suite tag");
        }

        slowsde::VerifyCfg cfg;
        cfg.seed = seed;
        cfg.threads = threads;

        bool pass = true;
        ordered_json suites = ordered_json::array();
        for (const auto& tag : tags) {
            const auto res = slowsde::run_suite(v, tag, cfg);
            pass = pass && res.pass;
            ordered_json ja = ordered_json::array();
            for (const auto& a : res.assertions)
                ja.push_back(ordered_json{{"name", a.name},
                                          {"measured", finite_or_null(a.measured)},
                                          {"bound", finite_or_null(a.bound)},
                                          {"pass", a.pass}});
            suites.push_back(
                ordered_json{{"tag", res.tag}, {"pass", res.pass}, {"assertions", ja}});
        }

        ordered_json j;
        j["seed"] = seed;
        j["pass"] = pass;
        j["suites"] = suites;
        j["params"] = params_json(v);
        if (all_pass) *all_pass = pass ? 1 : 0;
        store(out, dup_cstr(j.dump(2) + "\n"));
    });
}

}  // extern "C"
