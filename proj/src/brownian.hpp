#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "accum.hpp"
#include "coefficients.hpp"
#include "rng.hpp"

namespace slowsde {

// Discrete Brownian path on an explicit grid. Grids start at exactly 0 and
// are strictly increasing; all integral operators below read only grid points
// (no interpolation), so times of interest must be grid members.
struct BrownianPath {
    std::vector<double> t;
    std::vector<double> w;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

std::vector<double> uniform_grid(double t0, double t1, std::size_t steps);

// Piecewise-uniform grid that contains every breakpoint exactly.
std::vector<double> segmented_grid(std::span<const double> breaks, std::size_t steps_per_segment);

BrownianPath sample_path(std::vector<double> grid, std::uint64_t seed, std::uint64_t stream);

// Index of t on the grid (tolerance 1e-9 relative); error when absent.
std::size_t grid_index(const BrownianPath& path, double t);

// Chord-plus-residual split over [a, b]: linear[k] interpolates the endpoint
// values, residual[k] = w - linear vanishes exactly at both ends.
struct BridgeView {
    std::size_t ia = 0, ib = 0;
    std::vector<double> linear;
    std::vector<double> residual;
};

BridgeView bridge_split(const BrownianPath& path, double a, double b);

// Left-point stochastic integral of a deterministic integrand over [t1, t2].
template <class F>
double ito_left(F&& fn, const BrownianPath& path, double t1, double t2) {
    const std::size_t i1 = grid_index(path, t1), i2 = grid_index(path, t2);
    require(i1 <= i2, "t1 <= t2");
    CompensatedSum acc;
    for (std::size_t k = i1; k < i2; ++k)
        acc.add(fn(path.t[k]) * (path.w[k + 1] - path.w[k]));
    return acc.total();
}

// Same integral through the integration-by-parts identity
//   fn(t2) W_{t2} - fn(t1) W_{t1} - \int slope(s) W_s ds
// with a trapezoid rule for the Riemann term. Exact for constant fn.
template <class Ffn, class Fslope>
double ito_pathwise(Ffn&& fn, Fslope&& slope, const BrownianPath& path, double t1, double t2) {
    const std::size_t i1 = grid_index(path, t1), i2 = grid_index(path, t2);
    require(i1 <= i2, "t1 <= t2");
    CompensatedSum acc;
    double prev = slope(path.t[i1]) * path.w[i1];
    for (std::size_t k = i1 + 1; k <= i2; ++k) {
        const double cur = slope(path.t[k]) * path.w[k];
        acc.add(0.5 * (prev + cur) * (path.t[k] - path.t[k - 1]));
        prev = cur;
    }
    return fn(path.t[i2]) * path.w[i2] - fn(path.t[i1]) * path.w[i1] - acc.total();
}

double profile_ito_left(const Params& p, const BrownianPath& path, double t1, double t2);
double profile_ito_pathwise(const Params& p, const BrownianPath& path, double t1, double t2);

// Variance of the residual component of the frozen integral over the blind
// window [a, b]: double integral of slope(s) slope(u) K(s, u) with the bridge
// kernel K(s, u) = (b - max)(min - a)/(b - a), reduced to nested quadrature on
// the lower triangle. The generic overload exists for kernel cross-checks with
// synthetic slopes.
template <class Slope>
double hidden_component_variance_for(Slope&& slope, double a, double b, const QuadratureCfg& cfg,
                                     std::span<const double> inner_breaks = {}) {
    require(a < b, "a < b");
    auto outer_fn = [&](double u) {
        std::vector<double> br{a};
        for (double s : inner_breaks)
            if (s > a && s < u) br.push_back(s);
        br.push_back(u);
        const double inner =
            gauss_refined([&](double s) { return slope(s) * (s - a); }, br, cfg);
        return slope(u) * (b - u) / (b - a) * inner;
    };
    std::vector<double> br{a};
    for (double s : inner_breaks)
        if (s > a && s < b) br.push_back(s);
    br.push_back(b);
    return 2.0 * gauss_refined(outer_fn, br, cfg);
}

double hidden_component_variance(const Params& p, double a, double b, const QuadratureCfg& cfg);

// Variance split of the frozen integral conditioned on observing the path
// outside [a, b]: observed + hidden = alpha.
struct SplitDist {
    double var_observed = 0.0;
    double var_hidden = 0.0;
};

SplitDist make_split_dist(const Params& p, double a, double b, const QuadratureCfg& cfg);

struct SplitSample {
    double observed = 0.0;
    double hidden = 0.0;
};

SplitSample sample_split_pair(const SplitDist& dist, const RngStream& stream,
                              std::uint64_t index);

}  // namespace slowsde
