#include "bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <vector>

#include "accum.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "special.hpp"

namespace slowsde {

double sin_weight_factor(const Params& p, const QuadratureCfg& cfg) {
    const double scale = 6.0 / (p.T * p.T * p.T);
    const double breaks[] = {0.0, 0.5, 1.0};
    return gauss_refined(
        [&](double y) { return std::abs(std::sin(y)) * std::exp(-scale * y * y); }, breaks, cfg);
}

LowerBoundReport lower_bound(const Params& p, double c_center) {
    require(c_center >= 2.0, "c_center >= 2");

    LowerBoundReport r;
    r.c_center = c_center;
    r.log_prefactor = 0.5 * std::log(3.0) + std::log(p.T - p.tau2) -
                      std::log(std::numbers::pi) - 1.5 * std::log(p.T) - 0.5 * std::log(p.alpha);
    QuadratureCfg cfg = p.quad;
    cfg.tol = std::min(cfg.tol, 1e-12);
    r.sin_weight = sin_weight_factor(p, cfg);
    r.log_gauss_window = log_gauss_window(c_center + 0.5, c_center + 1.0, p.alpha);
    r.log_bound = r.log_prefactor + std::log(r.sin_weight) + r.log_gauss_window;
    require(std::isfinite(r.log_bound), "bound positive (log finite)");
    return r;
}

double log_error_floor_at(const Params& p, std::uint64_t m) {
    require(m >= 1, "m >= 1");
    return lower_bound(p, 5.0 * static_cast<double>(m)).log_bound;
}

double sin_measure_closed(double c, double beta) {
    require(beta > 0.0 && beta < 1.0, "beta in (0, 1)");
    (void)c;  // the set is a shift of the c = 0 set; kept for interface parity

    // In band coordinates t = (x - c)/beta the super-level set is the union
    // of [k pi + pi/6, k pi + 5 pi/6] intersected with [-L, L], L = 1/beta.
    const double pi = std::numbers::pi;
    const double L = 1.0 / beta;
    const long k_lo = static_cast<long>(std::floor((-L - 5.0 * pi / 6.0) / pi));
    const long k_hi = static_cast<long>(std::ceil((L - pi / 6.0) / pi));
    CompensatedSum acc;
    for (long k = k_lo; k <= k_hi; ++k) {
        const double lo = std::max(-L, static_cast<double>(k) * pi + pi / 6.0);
        const double hi = std::min(L, static_cast<double>(k) * pi + 5.0 * pi / 6.0);
        if (hi > lo) acc.add(hi - lo);
    }
    return beta * acc.total();
}

double sin_measure_grid(double c, double beta, std::uint64_t grid_n) {
    require(beta > 0.0 && beta < 1.0, "beta in (0, 1)");
    require(grid_n >= 2, "grid_n >= 2");
    // Bands must be longer than one cell or a whole band could hide inside
    // a cell whose endpoints both test negative.
    require(beta * static_cast<double>(grid_n) >= 16.0, "grid resolves the bands");

    auto inside = [&](double x) { return std::abs(std::sin((x - c) / beta)) >= 0.5; };
    const double cell = 2.0 / static_cast<double>(grid_n);
    CompensatedSum acc;
    for (std::uint64_t i = 0; i < grid_n; ++i) {
        const double x0 = (c - 1.0) + cell * static_cast<double>(i);
        const double x1 = (i + 1 == grid_n) ? c + 1.0 : (c - 1.0) + cell * static_cast<double>(i + 1);
        const bool in0 = inside(x0), in1 = inside(x1);
        if (in0 && in1) {
            acc.add(x1 - x0);
        } else if (in0 != in1) {
            double lo = x0, hi = x1;
            for (int it = 0; it < 50; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (inside(mid) == in0)
                    lo = mid;
                else
                    hi = mid;
            }
            const double edge = 0.5 * (lo + hi);
            acc.add(in0 ? edge - x0 : x1 - edge);
        }
    }
    return acc.total();
}

double sin_measure(double c, double beta, std::uint64_t grid_n) {
    const double closed = sin_measure_closed(c, beta);
    const double grid = sin_measure_grid(c, beta, grid_n);
    require(std::abs(closed - grid) <= 2.0 / static_cast<double>(grid_n),
            "closed-form measure matches grid oracle");
    return closed;
}

namespace {

// Median by partial selection; mutates buf. Even counts average the two
// central order statistics.
double median_inplace(std::vector<double>& buf) {
    const std::size_t n = buf.size();
    const std::size_t k = n / 2;
    std::nth_element(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(k), buf.end());
    const double hi = buf[k];
    if (n % 2 == 1) return hi;
    const double lo = *std::max_element(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(k));
    return 0.5 * (lo + hi);
}

}  // namespace

McEstimate two_point_lower_estimate(const Params& p, const ChirpSpec& spec, double a, double b,
                                    std::uint64_t samples, std::uint64_t seed, int threads,
                                    const TerminalClockTable* table) {
    require(samples >= 2, "samples >= 2");
    const SplitDist dist = make_split_dist(p, a, b, p.quad);
    std::optional<TerminalClockTable> local;
    if (!table) local.emplace(p);
    const TerminalClockTable& tbl = table ? *table : *local;

    const RngStream base(seed, 1);
    std::vector<double> gaps(samples);
    parallel_for(samples, threads, [&](std::uint64_t i) {
        const SplitSample s = sample_split_pair(dist, base, i);
        const double plus = tbl(std::cos(eval_chirp(spec, s.observed + s.hidden)));
        const double minus = tbl(std::cos(eval_chirp(spec, s.observed - s.hidden)));
        gaps[i] = 0.5 * std::abs(plus - minus);
    });

    const auto ms = mean_std_error(gaps);
    return McEstimate{ms.mean, ms.std_error, samples};
}

PredictorReport optimal_predictor_error(const Params& p, const ChirpSpec& spec, double a, double b,
                                        std::uint64_t outer, std::uint64_t inner,
                                        std::uint64_t seed, int threads,
                                        const TerminalClockTable* table) {
    require(outer >= 2, "outer >= 2");
    require(inner >= 1000, "inner >= 1000 for stable medians");
    const SplitDist dist = make_split_dist(p, a, b, p.quad);
    std::optional<TerminalClockTable> local;
    if (!table) local.emplace(p);
    const TerminalClockTable& tbl = table ? *table : *local;

    const RngStream base(seed, 2);
    const RngStream observed_stream = base.child(0);
    const RngStream hidden_root = base.child(1);
    const double sd_obs = std::sqrt(dist.var_observed);
    const double sd_hid = std::sqrt(dist.var_hidden);

    std::vector<double> mad_inner(outer), mad_double(outer);
    parallel_for(outer, threads, [&](std::uint64_t i) {
        const double y1 = sd_obs * observed_stream.normal_at(i);
        const RngStream hid = hidden_root.child(i);
        std::vector<double> vals(2 * inner);
        for (std::uint64_t j = 0; j < 2 * inner; ++j) {
            const double y2 = sd_hid * hid.normal_at(j);
            vals[j] = tbl(std::cos(eval_chirp(spec, y1 + y2)));
        }
        for (int half = 0; half < 2; ++half) {
            const std::uint64_t n = half ? 2 * inner : inner;
            std::vector<double> buf(vals.begin(), vals.begin() + static_cast<std::ptrdiff_t>(n));
            const double med = median_inplace(buf);
            CompensatedSum dev;
            for (std::uint64_t j = 0; j < n; ++j) dev.add(std::abs(vals[j] - med));
            (half ? mad_double : mad_inner)[i] = dev.total() / static_cast<double>(n);
        }
    });

    PredictorReport r;
    const auto mi = mean_std_error(mad_inner);
    const auto md = mean_std_error(mad_double);
    r.inner_estimate = McEstimate{mi.mean, mi.std_error, outer};
    r.double_inner_estimate = McEstimate{md.mean, md.std_error, outer};
    r.outer = outer;
    r.inner = inner;
    return r;
}

}  // namespace slowsde
