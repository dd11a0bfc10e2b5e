#include <doctest.h>

#include <cmath>

#include "coefficients.hpp"
#include "error.hpp"
#include "golden_values.hpp"

using namespace slowsde;

namespace {
const Params& defaults() {
    static const Params p = make_params(1.5, 0.75);
    return p;
}
}  // namespace

TEST_CASE("derived constants match the frozen oracle") {
    const Params& p = defaults();
    CHECK(p.eps == doctest::Approx(golden::eps).epsilon(1e-13));
    CHECK(p.tau1 == doctest::Approx(golden::tau1).epsilon(1e-13));
    CHECK(p.tau2 == doctest::Approx(golden::tau2).epsilon(1e-13));
    CHECK(p.mu_norm == doctest::Approx(golden::mu_norm_default).epsilon(1e-10));
    CHECK(p.alpha == doctest::Approx(golden::alpha).epsilon(1e-10));
    CHECK(p.alpha_closed_piece ==
          doctest::Approx(golden::alpha_closed_form_piece).epsilon(1e-13));
}

TEST_CASE("mollifier mass at radius one matches the oracle") {
    CHECK(mollifier_mass(1.0) == doctest::Approx(golden::mu_norm_radius_1).epsilon(1e-10));
}

TEST_CASE("make_params rejects invalid shapes") {
    CHECK_THROWS_AS(make_params(0.0, 0.75), Error);
    CHECK_THROWS_AS(make_params(1.5, 0.0), Error);
    CHECK_THROWS_AS(make_params(1.5, 1.5), Error);       // tau >= T
    CHECK_THROWS_AS(make_params(1.5, 0.75, 0.0), Error); // eps_frac out of (0, 1)
    CHECK_THROWS_AS(make_params(1.5, 0.75, 1.0), Error);
    CHECK_THROWS_AS(make_params(1.5, 0.75, 0.8, 0.0), Error);
}

TEST_CASE("profile point values match the frozen oracle") {
    const Params& p = defaults();
    CHECK(diffusion_profile(p, 0.70) == doctest::Approx(golden::profile_at_0p70).epsilon(1e-9));
    CHECK(diffusion_profile(p, p.tau) == doctest::Approx(golden::profile_at_tau).epsilon(1e-9));
    CHECK(diffusion_profile(p, 0.80) ==
          doctest::Approx(golden::profile_at_0p80).epsilon(1e-6));
    CHECK(diffusion_profile(p, -0.80) ==
          doctest::Approx(golden::profile_at_m0p80).epsilon(1e-12));
}

TEST_CASE("profile slope point values match the frozen oracle") {
    const Params& p = defaults();
    CHECK(diffusion_profile_slope(p, 0.70) ==
          doctest::Approx(golden::slope_at_0p70).epsilon(1e-9));
    CHECK(diffusion_profile_slope(p, p.tau) ==
          doctest::Approx(golden::slope_at_tau).epsilon(1e-12));
    CHECK(diffusion_profile_slope(p, 0.80) ==
          doctest::Approx(golden::slope_at_0p80).epsilon(1e-6));
}

TEST_CASE("profile branches are exact on the plateau, ramp, and tail") {
    const Params& p = defaults();
    CHECK(diffusion_profile(p, -2.0) == 4.0 * p.tau);
    CHECK(diffusion_profile(p, -p.tau1) == 4.0 * p.tau);
    // Mid band is exactly linear: convolution of a linear piece with a
    // symmetric unit-mass kernel.
    CHECK(diffusion_profile(p, 0.0) == 2.0 * p.tau);
    CHECK(diffusion_profile(p, 0.3) == 2.0 * p.tau - 0.6);
    CHECK(diffusion_profile(p, p.tau1) == 0.0);
    CHECK(diffusion_profile(p, 2.0) == 0.0);
}

TEST_CASE("profile range and slope range hold on a fine grid") {
    const Params& p = defaults();
    const int n = 20001;
    double prev = diffusion_profile(p, -3.0);
    for (int i = 0; i <= n; ++i) {
        const double x = -3.0 + 6.0 * i / n;
        const double f = diffusion_profile(p, x);
        const double s = diffusion_profile_slope(p, x);
        CHECK(f >= 0.0);
        CHECK(f <= 4.0 * p.tau);
        CHECK(s >= -2.0);
        CHECK(s <= 0.0);
        // Non-increasing up to quadrature noise; near the plateaus the true
        // decline is far below one ulp of 4 tau, so exact ordering is noise.
        if (i > 0) CHECK(f <= prev + 1e-13);
        prev = f;
    }
}

TEST_CASE("slope matches finite differences of the profile") {
    const Params& p = defaults();
    const double h = 1e-6;
    for (double x : {-0.9, -0.2, 0.3, 0.65, 0.72, 0.78, 0.85}) {
        const double fd =
            (diffusion_profile(p, x + h) - diffusion_profile(p, x - h)) / (2.0 * h);
        CHECK(diffusion_profile_slope(p, x) == doctest::Approx(fd).epsilon(5e-6));
    }
}

TEST_CASE("cumulative mass is a cdf with exact endpoints and center") {
    const Params& p = defaults();
    CHECK(cumulative_mass(p, -p.eps) == 0.0);
    CHECK(cumulative_mass(p, -2.0 * p.eps) == 0.0);
    CHECK(cumulative_mass(p, p.eps) == 1.0);
    CHECK(cumulative_mass(p, 1.0) == 1.0);
    CHECK(cumulative_mass(p, 0.0) == 0.5);
    double prev = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        const double y = -p.eps + 2.0 * p.eps * i / 2000;
        const double m = cumulative_mass(p, y);
        CHECK(m >= prev - 1e-15);
        CHECK(m >= 0.0);
        CHECK(m <= 1.0);
        prev = m;
    }
}

TEST_CASE("gate plateaus are exact and the midpoint balances") {
    const Params& p = defaults();
    CHECK(drift_gate(p, p.tau1) == 0.0);
    CHECK(drift_gate(p, 0.0) == 0.0);
    CHECK(drift_gate(p, p.tau2) == 4.0);
    CHECK(drift_gate(p, 2.0) == 4.0);
    const double mid = 0.5 * (p.tau1 + p.tau2);
    CHECK(drift_gate(p, mid) == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("gate is monotone with nonnegative slope") {
    const Params& p = defaults();
    double prev = 0.0;
    for (int i = 0; i <= 5000; ++i) {
        const double x = p.tau1 - 0.1 + (p.tau2 - p.tau1 + 0.2) * i / 5000;
        const double g = drift_gate(p, x);
        CHECK(g >= prev - 1e-15);
        CHECK(g >= 0.0);
        CHECK(g <= 4.0);
        CHECK(drift_gate_slope(p, x) >= 0.0);
        prev = g;
    }
}

TEST_CASE("gate slope matches finite differences") {
    const Params& p = defaults();
    const double h = 1e-6;
    const double mid = 0.5 * (p.tau1 + p.tau2);
    for (double x : {mid, p.tau1 + 0.05, p.tau2 - 0.05}) {
        const double fd = (drift_gate(p, x + h) - drift_gate(p, x - h)) / (2.0 * h);
        CHECK(drift_gate_slope(p, x) == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("strict positivity holds outside the representability margin") {
    const Params& p = defaults();
    // At 1e-2 from the support edge the values are tiny but representable;
    // at 1e-3 they underflow to exact zero, which is why the margin is 1e-2.
    CHECK(diffusion_profile(p, p.tau1 - 1e-2) > 0.0);
    CHECK(diffusion_profile(p, p.tau1 - 1e-3) == 0.0);
    CHECK(drift_gate_slope(p, p.tau1 + 1e-2) > 0.0);
    CHECK(drift_gate_slope(p, p.tau2 - 1e-2) > 0.0);
    CHECK(drift_gate(p, p.tau1 + 1e-2) > 0.0);
}

TEST_CASE("slope is strictly below -1 inside the ramp") {
    const Params& p = defaults();
    for (double x : {1e-3, 0.1, 0.4, 0.6, p.tau - 1e-3}) {
        CHECK(diffusion_profile_slope(p, x) < -1.0);
    }
}

TEST_CASE("profile energy is stable under quadrature refinement") {
    const Params& p = defaults();
    QuadratureCfg refined = p.quad;
    refined.tol *= 1.0 / 16.0;
    refined.node_count *= 2;
    CHECK(std::abs(profile_energy(p, refined) - p.alpha) < 1e-8);
    CHECK(p.alpha >= 2.0 * p.tau * p.tau * p.tau / 3.0);
}
