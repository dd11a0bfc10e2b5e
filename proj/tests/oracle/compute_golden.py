#!/usr/bin/env python3
"""High-precision reference values for the frozen test constants.

Every [golden] constant in the C++ test suite is produced by this script,
independently of the library implementation: integrals are evaluated with
mpmath adaptive quadrature at 25-50 significant digits and the gated-clock
ODE with mpmath's adaptive Taylor integrator.  Run it and paste the output
into tests/golden_values.hpp if a default parameter ever changes.
"""

import json
import mpmath as mp

mp.mp.dps = 50

# Default model parameters: horizon T, ramp edge tau, mollifier radius eps.
T = mp.mpf(3) / 2
tau = mp.mpf(3) / 4
eps_frac = mp.mpf(4) / 5
tau2_frac = mp.mpf(4) / 5

eps = eps_frac * min(T - tau, tau * (1 - mp.power(2, mp.mpf(-1) / 3)))
tau1 = tau + eps
tau2 = tau1 + tau2_frac * (T - tau1)


def bump(t, radius):
    """Unnormalized mollifier exp(-1/(radius^2 - t^2)) on |t| < radius."""
    if abs(t) >= radius:
        return mp.mpf(0)
    return mp.exp(-1 / (radius * radius - t * t))


def mollifier_mass(radius):
    return 2 * mp.quad(lambda t: bump(t, radius), [0, radius / 2, radius])


mu = mollifier_mass(eps)


def rho(t):
    return bump(t, eps) / mu


def cumulative_mass(y):
    """R(y) = integral of rho over [-eps, y]."""
    if y <= -eps:
        return mp.mpf(0)
    if y >= eps:
        return mp.mpf(1)
    if y <= 0:
        return mp.quad(rho, [-eps, y])
    return mp.mpf(1) / 2 + mp.quad(rho, [0, y])


def diffusion_profile(x):
    """Mollified descending ramp: 4*tau left plateau, zero right plateau."""
    if x >= tau1:
        return mp.mpf(0)
    if x <= -tau - eps:
        return 4 * tau
    if -tau + eps <= x <= tau - eps:
        return 2 * tau - 2 * x
    if x > 0:
        lo = x - tau
        return mp.quad(lambda t: rho(t) * (2 * tau - 2 * x + 2 * t), [lo, (lo + eps) / 2, eps])
    hi = x + tau
    lin = mp.quad(lambda t: rho(t) * (2 * tau - 2 * x + 2 * t), [-eps, (hi - eps) / 2, hi])
    return lin + 4 * tau * (1 - cumulative_mass(hi))


def profile_slope(x):
    hi = min(eps, x + tau)
    lo = max(-eps, x - tau)
    if hi <= lo:
        return mp.mpf(0)
    return -2 * (cumulative_mass(hi) - cumulative_mass(lo))


def gate(x):
    """Drift gate: 0 below tau1, 4 above tau2, smooth and monotone between."""
    def h(u):
        return mp.exp(-1 / u) if u > 0 else mp.mpf(0)

    num = h(x - tau1)
    den = num + h(tau2 - x)
    return 4 * num / den if den > 0 else mp.mpf(0)


# Energy of the profile on [0, tau1]: closed form on [0, tau-eps] plus
# quadrature across the mollified shoulder.
alpha_closed = ((2 * tau) ** 3 - (2 * eps) ** 3) / 6
alpha_shoulder = mp.quad(lambda s: diffusion_profile(s) ** 2,
                         [tau - eps, tau, tau1 - eps / 2, tau1])
alpha = alpha_closed + alpha_shoulder

# Error-floor factors for a unit window at center c = 5n.
log_prefactor = (mp.log(3) / 2 + mp.log(T - tau2)
                 - mp.log(mp.pi) - (3 * mp.log(T) + mp.log(alpha)) / 2)
sin_weight = mp.quad(lambda y: mp.sin(y) * mp.exp(-6 * y * y / T ** 3), [0, 1])


def log_gauss_window(c):
    """log of integral of exp(-x^2/alpha) over [c+1/2, c+1]."""
    a, b = c + mp.mpf(1) / 2, c + 1
    val = mp.sqrt(mp.pi * alpha) / 2 * (mp.erfc(a / mp.sqrt(alpha)) - mp.erfc(b / mp.sqrt(alpha)))
    return mp.log(val)


def log_floor(n):
    return log_prefactor + log_gauss_window(5 * n) + mp.log(sin_weight)


# Gated clock z' = 1 + gate(z) * (level + 1), z(tau1) = tau1, evaluated at T.
# Solved by separation of variables: invert t(z) = tau1 + int dz'/(1 + amp g)
# across the gate band, then the tail is linear because g == 4 exactly past
# tau2. Taylor-series ODE steppers are unreliable here: the gate is flat to
# all orders at tau1, so they stride across the onset.
def clock_terminal(level, dps=30):
    with mp.workdps(dps):
        amp = mp.mpf(level) + 1
        t2 = tau1 + mp.quad(lambda z: 1 / (1 + amp * gate(z)),
                            [tau1, (tau1 + tau2) / 2, tau2])
        assert t2 <= T
        return tau2 + (1 + 4 * amp) * (T - t2)


# Hidden-component variance: double integral of slope(s)*slope(u)*K(s,u)
# with the bridge kernel K(s,u) = (b - max)(min - a)/(b - a), computed on the
# lower triangle and doubled.
def hidden_variance(a, b, dps=25):
    with mp.workdps(dps):
        def outer(u):
            inner = mp.quad(lambda s: profile_slope(s) * (s - a), [a, u])
            return profile_slope(u) * (b - u) / (b - a) * inner
        return 2 * mp.quad(outer, [a, (a + b) / 2, b])


def emit(name, value, dps=25):
    print(f'  "{name}": "{mp.nstr(value, dps)}",')


print("{")
emit("eps", eps)
emit("tau1", tau1)
emit("tau2", tau2)
emit("mu_norm_default", mu)
emit("mu_norm_radius_1", mollifier_mass(mp.mpf(1)))
emit("alpha_closed_form_piece", alpha_closed)
emit("alpha", alpha)
emit("profile_at_0p70", diffusion_profile(mp.mpf("0.70")))
emit("profile_at_tau", diffusion_profile(tau))
emit("profile_at_0p80", diffusion_profile(mp.mpf("0.80")))
emit("profile_at_m0p80", diffusion_profile(mp.mpf("-0.80")))
emit("slope_at_0p70", profile_slope(mp.mpf("0.70")))
emit("slope_at_tau", profile_slope(tau))
emit("slope_at_0p80", profile_slope(mp.mpf("0.80")))
emit("log_prefactor", log_prefactor)
emit("sin_weight", sin_weight)
emit("log_gauss_window_n1", log_gauss_window(5))
emit("log_gauss_window_n2", log_gauss_window(10))
emit("log_floor_n1", log_floor(1))
emit("log_floor_n2", log_floor(2))
emit("log10_floor_n1", log_floor(1) / mp.log(10))
emit("log10_scaling_c_logdecay_n0_1", (mp.log(1 / mp.log(2)) - log_floor(1)) / mp.log(10))
emit("log10_schedule_n1_logdecay", 1 / (mp.exp(log_floor(1)) * mp.log(10)))
emit("sin_measure_beta_half", 2 * (1 - mp.pi / 12))
emit("hidden_var_0p50_0p75", hidden_variance(mp.mpf("0.5"), tau))
emit("hidden_var_0p10_0p60", hidden_variance(mp.mpf("0.1"), mp.mpf("0.6")))
emit("clock_terminal_level_1", clock_terminal(1))
emit("clock_terminal_level_0p5", clock_terminal(mp.mpf("0.5")))
emit("clock_terminal_level_0", clock_terminal(0))
emit("clock_terminal_level_m0p5", clock_terminal(mp.mpf("-0.5")))
emit("four_T_minus_tau2", 4 * (T - tau2))
emit("erfcx_24p999", mp.erfc(mp.mpf("24.999")) * mp.exp(mp.mpf("24.999") ** 2))
emit("erfcx_25p001", mp.erfc(mp.mpf("25.001")) * mp.exp(mp.mpf("25.001") ** 2))
print('  "_": null')
print("}")
