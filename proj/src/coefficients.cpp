#include "coefficients.hpp"

#include <algorithm>
#include <cmath>

#include "accum.hpp"

namespace slowsde {

double bump_unnormalized(double t, double radius) {
    const double d = radius * radius - t * t;
    if (d <= 0.0) return 0.0;
    const double arg = 1.0 / d;
    if (arg > 700.0) return 0.0;
    return std::exp(-arg);
}

double bump_flush_edge(double radius) {
    const double d = radius * radius - 1.0 / 700.0;
    return d > 0.0 ? std::sqrt(d) : 0.0;
}

double mollifier_mass(double radius, const QuadratureCfg& cfg) {
    validate(cfg);
    require(radius > 0.0, "mollifier radius > 0");
    auto fn = [radius](double t) { return bump_unnormalized(t, radius); };
    // The flush edge is a panel boundary: a panel straddling the underflow
    // jump never settles under relative refinement.
    std::vector<double> breaks{0.0, 0.5 * radius, radius};
    const double edge = bump_flush_edge(radius);
    if (edge > 0.0 && edge < radius) breaks.push_back(edge);
    std::sort(breaks.begin(), breaks.end());
    return 2.0 * gauss_refined(fn, breaks, cfg);
}

namespace {

// Half-domain cumulative mass table. Nodes follow the Chebyshev pattern of the
// full interval (dense near the support edge); values are panel sums of the
// unnormalized bump, rescaled so the half mass is exactly 1/2 and the node
// slopes match the table's own normalization.
std::shared_ptr<const MonotoneCubic> build_mass_table(double eps, const QuadratureCfg& cfg,
                                                      int nodes = 2049) {
    std::vector<double> x(static_cast<std::size_t>(nodes));
    for (int k = 0; k < nodes; ++k)
        x[static_cast<std::size_t>(k)] = eps * std::sin(M_PI * k / (2.0 * (nodes - 1)));
    x.front() = 0.0;
    x.back() = eps;

    std::vector<double> raw(x.size(), 0.0);
    CompensatedSum acc;
    for (std::size_t k = 1; k < x.size(); ++k) {
        acc.add(gauss_panel([eps](double t) { return bump_unnormalized(t, eps); }, x[k - 1], x[k],
                            cfg.node_count));
        raw[k] = acc.total();
    }
    const double half_mass = raw.back();
    require(half_mass > 0.0, "mu_norm > 0");

    std::vector<double> val(x.size()), slope(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        val[k] = 0.5 * (raw[k] / half_mass);
        slope[k] = bump_unnormalized(x[k], eps) / (2.0 * half_mass);
    }
    val.front() = 0.0;
    val.back() = 0.5;
    return std::make_shared<const MonotoneCubic>(std::move(x), std::move(val), std::move(slope));
}

}  // namespace

Params make_params(double T, double tau, double eps_frac, double tau2_frac, QuadratureCfg quad) {
    validate(quad);
    require(tau > 0.0, "0 < tau");
    require(tau < T, "tau < T");
    require(eps_frac > 0.0 && eps_frac < 1.0, "eps_frac in (0, 1)");
    require(tau2_frac > 0.0 && tau2_frac < 1.0, "tau2_frac in (0, 1)");

    Params p;
    p.T = T;
    p.tau = tau;
    p.eps_frac = eps_frac;
    p.tau2_frac = tau2_frac;
    const double cap = std::min(T - tau, tau * (1.0 - std::pow(2.0, -1.0 / 3.0)));
    p.eps = eps_frac * cap;
    require(p.eps > 0.0, "0 < eps");
    p.tau1 = tau + p.eps;
    p.tau2 = p.tau1 + tau2_frac * (T - p.tau1);
    require(p.tau1 < p.tau2 && p.tau2 < T, "tau1 < tau2 < T");
    p.quad = quad;

    p.mu_norm = mollifier_mass(p.eps, quad);
    require(p.mu_norm > 0.0, "mu_norm > 0");
    p.mass_half = build_mass_table(p.eps, quad);

    const double two_tau = 2.0 * tau, two_eps = 2.0 * p.eps;
    p.alpha_closed_piece =
        (two_tau * two_tau * two_tau - two_eps * two_eps * two_eps) / 6.0;
    p.alpha = profile_energy(p, quad);
    require(p.alpha >= 2.0 * tau * tau * tau / 3.0, "alpha >= 2*tau^3/3");
    return p;
}

double cumulative_mass(const Params& p, double y) {
    if (y <= -p.eps) return 0.0;
    if (y >= p.eps) return 1.0;
    const double c = (*p.mass_half)(std::abs(y));
    return y >= 0.0 ? 0.5 + c : 0.5 - c;
}

namespace {

// Shoulder integrals share this shape: rho(t) * (linear ramp evaluated at x - t)
// over a subrange of the mollifier support, with a panel break at t = 0.
template <class F>
double support_integral(const Params& p, double lo, double hi, F&& fn) {
    std::vector<double> breaks{lo};
    // Interior panel boundaries at the integrand's kink (t = 0) and at the
    // mollifier's underflow edges: rho flushes to zero past +-edge, and a
    // panel straddling that jump never settles under relative refinement.
    const double edge = bump_flush_edge(p.eps);
    for (double b : {-edge, 0.0, edge})
        if (lo < b && b < hi) breaks.push_back(b);
    breaks.push_back(hi);
    std::sort(breaks.begin(), breaks.end());
    return gauss_refined(fn, breaks, p.quad);
}

}  // namespace

double diffusion_profile(const Params& p, double x) {
    if (x >= p.tau1) return 0.0;
    if (x <= -p.tau1) return 4.0 * p.tau;
    if (x >= -p.tau + p.eps && x <= p.tau - p.eps) return 2.0 * p.tau - 2.0 * x;

    const double mu = p.mu_norm;
    auto ramp_part = [&](double t) {
        return bump_unnormalized(t, p.eps) / mu * (2.0 * p.tau - 2.0 * x + 2.0 * t);
    };
    double value;
    if (x > 0.0) {
        // Right shoulder: the ramp meets the zero plateau at t = x - tau.
        value = support_integral(p, x - p.tau, p.eps, ramp_part);
    } else {
        // Left shoulder: the ramp meets the 4*tau plateau at t = x + tau.
        const double hi = x + p.tau;
        const double lin = support_integral(p, -p.eps, hi, ramp_part);
        const double plateau = support_integral(
            p, hi, p.eps, [&](double t) { return bump_unnormalized(t, p.eps) / mu; });
        value = lin + 4.0 * p.tau * plateau;
    }
    // Quadrature rounding may overshoot the plateau value by ulps; the true
    // range is [0, 4 tau].
    return std::clamp(value, 0.0, 4.0 * p.tau);
}

double diffusion_profile_slope(const Params& p, double x) {
    const double hi = std::min(p.eps, x + p.tau);
    const double lo = std::max(-p.eps, x - p.tau);
    if (hi <= lo) return 0.0;
    // The clamp absorbs ulp-level rounding of the interpolated masses so the
    // range contract [-2, 0] holds exactly.
    const double mass = std::clamp(cumulative_mass(p, hi) - cumulative_mass(p, lo), 0.0, 1.0);
    return -2.0 * mass;
}

double decay_kernel(double u) {
    if (u <= 0.0) return 0.0;
    const double arg = 1.0 / u;
    if (arg > 700.0) return 0.0;
    return std::exp(-arg);
}

double drift_gate(const Params& p, double x) {
    if (x <= p.tau1) return 0.0;
    if (x >= p.tau2) return 4.0;
    const double hn = decay_kernel(x - p.tau1);
    if (hn == 0.0) return 0.0;
    const double hd = decay_kernel(p.tau2 - x);
    if (hd == 0.0) return 4.0;
    return 4.0 * hn / (hn + hd);
}

double drift_gate_slope(const Params& p, double x) {
    if (x <= p.tau1 || x >= p.tau2) return 0.0;
    const double a = x - p.tau1, b = p.tau2 - x;
    const double hn = decay_kernel(a), hd = decay_kernel(b);
    if (hn == 0.0 || hd == 0.0) return 0.0;  // true value positive but below double range
    const double den = hn + hd;
    return 4.0 * (hn / (a * a) * hd + hn * (hd / (b * b))) / (den * den);
}

double profile_energy(const Params& p, const QuadratureCfg& cfg) {
    validate(cfg);
    auto sq = [&](double s) {
        const double v = diffusion_profile(p, s);
        return v * v;
    };
    const double breaks[] = {p.tau - p.eps, p.tau, p.tau1 - 0.5 * p.eps, p.tau1};
    const double shoulder = gauss_refined(sq, breaks, cfg);
    return p.alpha_closed_piece + shoulder;
}

}  // namespace slowsde
