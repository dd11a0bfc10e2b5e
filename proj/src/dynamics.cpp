#include "dynamics.hpp"

#include <cmath>

#include "accum.hpp"
#include "error.hpp"
#include "parallel.hpp"

namespace slowsde {

namespace {

void validate_ode(const OdeCfg& ode) { require(ode.steps >= 16, "ode steps >= 16"); }

}  // namespace

double solve_gated_clock(const Params& p, double level, double t_end, const OdeCfg& ode) {
    require(level >= -1.0, "level >= -1");
    require(t_end >= p.tau1, "t_end >= tau1");
    require(t_end <= p.T, "t_end <= T");
    validate_ode(ode);

    const double amp = level + 1.0;
    auto f = [&](double z) { return 1.0 + drift_gate(p, z) * amp; };
    const double h = (t_end - p.tau1) / ode.steps;
    double z = p.tau1;
    for (int k = 0; k < ode.steps; ++k) {
        const double k1 = f(z);
        const double k2 = f(z + 0.5 * h * k1);
        const double k3 = f(z + 0.5 * h * k2);
        const double k4 = f(z + h * k3);
        z += h / 6.0 * (k1 + 2.0 * (k2 + k3) + k4);
    }
    return z;
}

TerminalClockTable::TerminalClockTable(const Params& p, std::size_t nodes, const OdeCfg& ode) {
    require(nodes >= 9, "table nodes >= 9");
    validate_ode(ode);

    std::vector<double> lv(nodes), zt(nodes), dz(nodes);
    const double h = (p.T - p.tau1) / ode.steps;
    for (std::size_t i = 0; i < nodes; ++i) {
        const double a =
            -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(nodes - 1);
        const double amp = a + 1.0;
        // Augmented system: y tracks dz/dlevel through the variational
        // equation y' = g(z) + g'(z) (level + 1) y, y(tau1) = 0.
        auto fz = [&](double z) { return 1.0 + drift_gate(p, z) * amp; };
        auto fy = [&](double z, double y) {
            return drift_gate(p, z) + drift_gate_slope(p, z) * amp * y;
        };
        double z = p.tau1, y = 0.0;
        for (int k = 0; k < ode.steps; ++k) {
            const double k1z = fz(z), k1y = fy(z, y);
            const double k2z = fz(z + 0.5 * h * k1z), k2y = fy(z + 0.5 * h * k1z, y + 0.5 * h * k1y);
            const double k3z = fz(z + 0.5 * h * k2z), k3y = fy(z + 0.5 * h * k2z, y + 0.5 * h * k2y);
            const double k4z = fz(z + h * k3z), k4y = fy(z + h * k3z, y + h * k3y);
            z += h / 6.0 * (k1z + 2.0 * (k2z + k3z) + k4z);
            y += h / 6.0 * (k1y + 2.0 * (k2y + k3y) + k4y);
        }
        lv[i] = a;
        zt[i] = z;
        dz[i] = y;
    }
    spline_ = MonotoneCubic(std::move(lv), std::move(zt), std::move(dz));
    t_end_ = p.T;
}

double exact_terminal_clock(const Params& p, const ChirpSpec& spec, double frozen_integral,
                            const OdeCfg& ode) {
    const double level = std::cos(eval_chirp(spec, frozen_integral));
    return solve_gated_clock(p, level, p.T, ode);
}

SimResult oracle_terminal(const Params& p, const ChirpSpec& spec, double frozen_integral,
                          const OdeCfg& ode) {
    SimResult r;
    r.clock_T = exact_terminal_clock(p, spec, frozen_integral, ode);
    r.integral_T = frozen_integral;
    r.state_T = {r.clock_T, r.integral_T};
    r.steps = ode.steps;
    return r;
}

void validate(const EmbeddingCfg& cfg) {
    require(cfg.dim >= 2, "d >= 2");
    require(cfg.brown_dim >= 1, "m >= 1");
    require(cfg.scale_c >= 1.0, "scale_c >= 1");
    require(cfg.shift.empty() || cfg.shift.size() == static_cast<std::size_t>(cfg.dim),
            "xi size matches d");
}

namespace {

// Shared Euler stepper; dw(k, j) supplies Brownian coordinate j's increment
// for step k. The diffusion matrix has a single nonzero entry (integral row,
// first coordinate); the zero rows still multiply their increments so that
// invariance under re-randomizing unused coordinates is a property of the
// arithmetic, not of skipped work. Adding (+/-)0.0 never changes a finite
// component bitwise except -0.0 + 0.0, which cannot arise here: component 0
// grows from step one and the constant components sit at their shifts.
template <class Dw, class Dt>
SimResult euler_core(const Params& p, const ChirpSpec& spec, int steps, const EmbeddingCfg& cfg,
                     Dw&& dw, Dt&& dt_at, SimTrace* trace) {
    validate(cfg);
    require(steps >= 1, "steps >= 1");

    std::vector<double> x(static_cast<std::size_t>(cfg.dim), 0.0);
    if (!cfg.shift.empty()) x = cfg.shift;
    const double xi0 = x[0], xi1 = x[1];
    const double c = cfg.scale_c;

    if (trace) {
        trace->clock.assign(1, (x[0] - xi0) / c);
        trace->integral.assign(1, x[1] - xi1);
        trace->clock.reserve(static_cast<std::size_t>(steps) + 1);
        trace->integral.reserve(static_cast<std::size_t>(steps) + 1);
    }
    for (int k = 0; k < steps; ++k) {
        const double v = (x[0] - xi0) / c;
        const double u = x[1] - xi1;
        const double drift0 = c * (1.0 + drift_gate(p, v) * (std::cos(eval_chirp(spec, u)) + 1.0));
        const double diff1 = diffusion_profile(p, v);
        x[0] += dt_at(k) * drift0;
        for (int j = 0; j < cfg.brown_dim; ++j) {
            const double dwj = dw(k, j);
            for (int i = 0; i < cfg.dim; ++i) {
                const double entry = (i == 1 && j == 0) ? diff1 : 0.0;
                x[static_cast<std::size_t>(i)] += entry * dwj;
            }
        }
        if (trace) {
            trace->clock.push_back((x[0] - xi0) / c);
            trace->integral.push_back(x[1] - xi1);
        }
    }

    SimResult r;
    r.clock_T = (x[0] - xi0) / c;
    r.integral_T = x[1] - xi1;
    r.state_T = std::move(x);
    r.steps = steps;
    return r;
}

}  // namespace

SimResult euler_maruyama(const Params& p, const ChirpSpec& spec, int steps, std::uint64_t seed,
                         std::uint64_t stream, const EmbeddingCfg& cfg, SimTrace* trace,
                         std::span<const std::uint64_t> coord_streams) {
    require(steps >= 1, "steps >= 1");
    validate(cfg);
    require(coord_streams.empty() ||
                coord_streams.size() == static_cast<std::size_t>(cfg.brown_dim),
            "coord_streams size matches brown_dim");
    const double dt = p.T / steps;
    const double sq = std::sqrt(dt);

    RngStream rng(seed, stream);
    std::vector<RngStream> coord;
    coord.reserve(static_cast<std::size_t>(cfg.brown_dim));
    for (int j = 0; j < cfg.brown_dim; ++j)
        coord.push_back(coord_streams.empty()
                            ? rng.child(static_cast<std::uint64_t>(j))
                            : RngStream(seed, coord_streams[static_cast<std::size_t>(j)]));

    auto r = euler_core(
        p, spec, steps, cfg,
        [&](int k, int j) {
            return sq *
                   coord[static_cast<std::size_t>(j)].normal_at(static_cast<std::uint64_t>(k));
        },
        [&](int) { return dt; }, trace);
    r.seed = seed;
    r.stream = stream;
    return r;
}

SimResult euler_maruyama_on_path(const Params& p, const ChirpSpec& spec, const BrownianPath& master,
                                 int steps, const EmbeddingCfg& cfg, SimTrace* trace) {
    require(steps >= 1, "steps >= 1");
    const std::size_t n = master.t.size();
    require(n >= 2, "master grid has at least two points");
    const std::size_t fine = n - 1;
    require(fine % static_cast<std::size_t>(steps) == 0, "steps divides master grid");
    require(master.t.front() == 0.0, "master grid starts at 0");
    require(std::abs(master.t.back() - p.T) <= 1e-12 * p.T, "master grid spans [0, T]");

    require(cfg.brown_dim == 1, "master path supplies one Brownian coordinate");

    const std::size_t stride = fine / static_cast<std::size_t>(steps);
    auto r = euler_core(
        p, spec, steps, cfg,
        [&](int k, int) {
            const std::size_t i = static_cast<std::size_t>(k) * stride;
            return master.w[i + stride] - master.w[i];
        },
        [&](int k) {
            const std::size_t i = static_cast<std::size_t>(k) * stride;
            return master.t[i + stride] - master.t[i];
        },
        trace);
    r.seed = master.seed;
    r.stream = master.stream;
    return r;
}

std::vector<ErrorRow> strong_error_experiment(const Params& p, const ChirpSpec& spec,
                                              std::span<const int> step_list,
                                              std::uint64_t samples, std::uint64_t seed,
                                              int master_steps, int threads, const OdeCfg& ode) {
    require(!step_list.empty(), "step list non-empty");
    require(samples >= 2, "samples >= 2");
    require(master_steps >= 1, "master steps >= 1");
    for (int s : step_list) {
        require(s >= 1, "steps >= 1");
        require(master_steps % s == 0, "steps divide master grid");
    }
    validate_ode(ode);

    const auto grid = uniform_grid(0.0, p.T, static_cast<std::size_t>(master_steps));
    // First grid point at or past tau1; the profile and its slope vanish
    // beyond tau1, so the pathwise integral up to there is the full frozen
    // integral.
    std::size_t kstar = 0;
    while (kstar < grid.size() && grid[kstar] < p.tau1) ++kstar;
    require(kstar < grid.size(), "tau1 within master grid");
    const double t_star = grid[kstar];

    std::vector<std::vector<double>> errs(step_list.size());
    for (auto& e : errs) e.resize(samples);

    parallel_for(samples, threads, [&](std::uint64_t s) {
        auto path = sample_path(grid, seed, s);
        const double frozen = profile_ito_pathwise(p, path, 0.0, t_star);
        const double z_star = exact_terminal_clock(p, spec, frozen, ode);
        for (std::size_t j = 0; j < step_list.size(); ++j) {
            const auto r = euler_maruyama_on_path(p, spec, path, step_list[j]);
            errs[j][s] = std::abs(r.clock_T - z_star);
        }
    });

    std::vector<ErrorRow> rows(step_list.size());
    for (std::size_t j = 0; j < step_list.size(); ++j) {
        const auto ms = mean_std_error(errs[j]);
        rows[j] = ErrorRow{step_list[j], ms.mean, ms.std_error, samples};
    }
    return rows;
}

}  // namespace slowsde
