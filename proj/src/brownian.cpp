#include "brownian.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace slowsde {

std::vector<double> uniform_grid(double t0, double t1, std::size_t steps) {
    require(t1 > t0, "t1 > t0");
    require(steps >= 1, "steps >= 1");
    std::vector<double> t(steps + 1);
    const double dt = (t1 - t0) / static_cast<double>(steps);
    for (std::size_t k = 0; k <= steps; ++k) t[k] = t0 + static_cast<double>(k) * dt;
    t.back() = t1;
    return t;
}

std::vector<double> segmented_grid(std::span<const double> breaks, std::size_t steps_per_segment) {
    require(breaks.size() >= 2, "at least two breakpoints");
    std::vector<double> t{breaks.front()};
    for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
        auto seg = uniform_grid(breaks[s], breaks[s + 1], steps_per_segment);
        t.insert(t.end(), seg.begin() + 1, seg.end());
    }
    return t;
}

BrownianPath sample_path(std::vector<double> grid, std::uint64_t seed, std::uint64_t stream) {
    require(grid.size() >= 2, "grid has at least two points");
    require(grid.front() == 0.0, "grid starts at 0");
    for (std::size_t k = 1; k < grid.size(); ++k)
        require(grid[k] > grid[k - 1], "grid strictly increasing");

    BrownianPath path;
    path.seed = seed;
    path.stream = stream;
    path.w.resize(grid.size());
    path.w[0] = 0.0;
    RngStream rng(seed, stream);
    for (std::size_t k = 1; k < grid.size(); ++k) {
        const double dt = grid[k] - grid[k - 1];
        path.w[k] = path.w[k - 1] + std::sqrt(dt) * rng.normal_at(k - 1);
    }
    path.t = std::move(grid);
    return path;
}

std::size_t grid_index(const BrownianPath& path, double t) {
    const double tol = 1e-9 * std::max(1.0, std::abs(t));
    auto it = std::lower_bound(path.t.begin(), path.t.end(), t - tol);
    if (it != path.t.end() && std::abs(*it - t) <= tol)
        return static_cast<std::size_t>(it - path.t.begin());
    throw Error(Errc::invalid_argument, "time not on grid");
}

BridgeView bridge_split(const BrownianPath& path, double a, double b) {
    BridgeView v;
    v.ia = grid_index(path, a);
    v.ib = grid_index(path, b);
    require(v.ia < v.ib, "a < b");

    // Convex-combination form: lam is exactly 0 at ia and exactly 1 at ib, so
    // the residual is bitwise zero at both endpoints.
    const double ta = path.t[v.ia], tb = path.t[v.ib];
    const double wa = path.w[v.ia], wb = path.w[v.ib];
    const std::size_t n = v.ib - v.ia + 1;
    v.linear.resize(n);
    v.residual.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double lam = (path.t[v.ia + k] - ta) / (tb - ta);
        v.linear[k] = lam * wb + (1.0 - lam) * wa;
        v.residual[k] = path.w[v.ia + k] - v.linear[k];
    }
    return v;
}

double profile_ito_left(const Params& p, const BrownianPath& path, double t1, double t2) {
    return ito_left([&](double s) { return diffusion_profile(p, s); }, path, t1, t2);
}

double profile_ito_pathwise(const Params& p, const BrownianPath& path, double t1, double t2) {
    return ito_pathwise([&](double s) { return diffusion_profile(p, s); },
                        [&](double s) { return diffusion_profile_slope(p, s); }, path, t1, t2);
}

double hidden_component_variance(const Params& p, double a, double b, const QuadratureCfg& cfg) {
    require(a >= 0.0, "a >= 0");
    require(b <= p.tau, "b <= tau");
    // The slope is piecewise analytic with a join where the mollified ramp
    // enters its transition band; splitting there keeps the panel count low.
    const double joins[] = {p.tau - p.eps};
    const double var = hidden_component_variance_for(
        [&](double s) { return diffusion_profile_slope(p, s); }, a, b, cfg,
        std::span<const double>(joins, 1));

    // On [0, tau] the slope magnitude sits in [1, 2], which pins the value
    // between the kernel mass and four times it; escaping the bracket means
    // the quadrature is broken.
    const double len3 = (b - a) * (b - a) * (b - a);
    const double slack = 1e-9;
    require(var >= len3 / 12.0 - slack, "hidden variance above kernel floor");
    require(var <= len3 / 3.0 + slack, "hidden variance below kernel cap");
    return var;
}

SplitDist make_split_dist(const Params& p, double a, double b, const QuadratureCfg& cfg) {
    require(a >= 0.0, "a >= 0");
    require(b > a, "a < b");
    require(b <= p.tau, "b <= tau");

    SplitDist dist;
    dist.var_hidden = hidden_component_variance(p, a, b, cfg);
    dist.var_observed = p.alpha - dist.var_hidden;

    const double slack = 1e-9;
    require(dist.var_observed >= 0.5 * p.alpha - slack, "observed variance at least alpha/2");
    require(dist.var_observed <= p.alpha + slack, "observed variance at most alpha");
    return dist;
}

SplitSample sample_split_pair(const SplitDist& dist, const RngStream& stream,
                              std::uint64_t index) {
    SplitSample s;
    s.observed = std::sqrt(dist.var_observed) * stream.child(0).normal_at(index);
    s.hidden = std::sqrt(dist.var_hidden) * stream.child(1).normal_at(index);
    return s;
}

}  // namespace slowsde
