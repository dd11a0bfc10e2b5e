#pragma once

#include <memory>

#include "interp.hpp"
#include "quadrature.hpp"

namespace slowsde {

// Model constants shared by every evaluator.
//
//   tau    edge of the descending ramp in the diffusion profile
//   eps    mollifier radius, eps_frac * min(T - tau, tau * (1 - 2^{-1/3}))
//   tau1   tau + eps: the profile vanishes at and beyond tau1, and the drift
//          gate starts opening there
//   tau2   tau1 + tau2_frac * (T - tau1): the gate saturates at 4
//   mu_norm  mollifier normalizer, integral of exp(-1/(eps^2 - t^2)) on |t| < eps
//   alpha    energy of the profile, integral of profile^2 over [0, tau1]
//
// Instances are immutable after make_params and safe to share across threads.
struct Params {
    double T = 0.0;
    double tau = 0.0;
    double eps_frac = 0.0;
    double tau2_frac = 0.0;
    double eps = 0.0;
    double tau1 = 0.0;
    double tau2 = 0.0;
    double mu_norm = 0.0;
    double alpha = 0.0;
    double alpha_closed_piece = 0.0;
    QuadratureCfg quad;

    // Cumulative mollifier mass on [0, eps], normalized to 1/2 at eps. Built
    // once; slope evaluation is called per SDE step and must stay table-cheap.
    std::shared_ptr<const MonotoneCubic> mass_half;
};

Params make_params(double T, double tau, double eps_frac = 0.8, double tau2_frac = 0.8,
                   QuadratureCfg quad = {});

// Unnormalized mollifier exp(-1/(radius^2 - t^2)); exact zero outside |t| < radius
// and wherever the exponent falls below -700 (under the double range).
double bump_unnormalized(double t, double radius);

// Abscissa where the bump's underflow cutoff kicks in: bump_unnormalized is
// exactly zero for |t| >= this value. Quadrature panels must break here.
double bump_flush_edge(double radius);

// exp(-1/u) for u > 0, zero otherwise and wherever the exponent falls below
// -700. Building block of the drift gate and the smoothstep blend.
double decay_kernel(double u);

// Normalizer for the mollifier of the given radius.
double mollifier_mass(double radius, const QuadratureCfg& cfg = {});

// Cumulative normalized mollifier mass R(y) on [-eps, eps]; 0 below, 1 above,
// exactly 1/2 at the origin by the symmetric table construction.
double cumulative_mass(const Params& p, double y);

// Mollified descending ramp: 4*tau for x <= -tau1, 2*tau - 2*x on the middle
// band, 0 for x >= tau1, quadrature across the two mollified shoulders.
double diffusion_profile(const Params& p, double x);

// Derivative of the profile: -2 * (R(min(eps, x + tau)) - R(max(-eps, x - tau))),
// clamped to zero when the window is empty. Always in [-2, 0].
double diffusion_profile_slope(const Params& p, double x);

// Smooth monotone switch: 0 up to tau1, 4 from tau2 on, strictly increasing
// between (up to double-range flushing at the edges).
double drift_gate(const Params& p, double x);
double drift_gate_slope(const Params& p, double x);

// Recomputes alpha with the given quadrature settings (refinement checks).
double profile_energy(const Params& p, const QuadratureCfg& cfg);

}  // namespace slowsde
