#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "chirp.hpp"
#include "coefficients.hpp"
#include "dynamics.hpp"
#include "error.hpp"
#include "golden_values.hpp"

using namespace slowsde;

namespace {

Params default_params() { return make_params(1.5, 0.75); }

}  // namespace

TEST_CASE("gated clock reduces to the identity when the gate never fires") {
    const auto p = default_params();
    CHECK(solve_gated_clock(p, -1.0, p.T) == doctest::Approx(p.T).epsilon(1e-12));
}

TEST_CASE("gated clock terminal values match the frozen references") {
    const auto p = default_params();
    CHECK(solve_gated_clock(p, 1.0, p.T) ==
          doctest::Approx(golden::clock_terminal_level_1).epsilon(1e-9));
    CHECK(solve_gated_clock(p, 0.5, p.T) ==
          doctest::Approx(golden::clock_terminal_level_0p5).epsilon(1e-9));
    CHECK(solve_gated_clock(p, 0.0, p.T) ==
          doctest::Approx(golden::clock_terminal_level_0).epsilon(1e-9));
    CHECK(solve_gated_clock(p, -0.5, p.T) ==
          doctest::Approx(golden::clock_terminal_level_m0p5).epsilon(1e-9));
}

TEST_CASE("terminal clock grows with the level and separates linearly") {
    const auto p = default_params();
    const double sep = 4.0 * (p.T - p.tau2);
    CHECK(sep == doctest::Approx(golden::four_T_minus_tau2).epsilon(1e-12));

    double prev_level = -1.0, prev_z = solve_gated_clock(p, -1.0, p.T);
    for (int i = 1; i <= 20; ++i) {
        const double level = -1.0 + 0.1 * i;
        const double z = solve_gated_clock(p, level, p.T);
        CHECK(z > prev_z);
        CHECK(z - prev_z >= sep * (level - prev_level) - 1e-8);
        prev_level = level;
        prev_z = z;
    }
}

TEST_CASE("gated clock rejects out-of-range arguments") {
    const auto p = default_params();
    CHECK_THROWS_AS((void)solve_gated_clock(p, -1.5, p.T), Error);
    CHECK_THROWS_AS((void)solve_gated_clock(p, 0.0, p.tau1 - 0.1), Error);
    CHECK_THROWS_AS((void)solve_gated_clock(p, 0.0, p.T + 0.1), Error);
    CHECK_THROWS_AS((void)solve_gated_clock(p, 0.0, p.T, OdeCfg{8}), Error);
}

TEST_CASE("terminal clock table reproduces the direct solution") {
    const auto p = default_params();
    TerminalClockTable table(p);
    CHECK(table.t_end() == p.T);
    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double level = -1.0 + 0.02 * i;
        worst = std::max(worst, std::abs(table(level) - solve_gated_clock(p, level, p.T)));
    }
    CHECK(worst < 1e-8);
    // Queries clamp to the cosine range.
    CHECK(table(1.5) == table(1.0));
    CHECK(table(-1.5) == table(-1.0));
}

TEST_CASE("frozen-integral terminal state matches the plain solver") {
    const auto p = default_params();
    const auto zero = make_zero_phase();
    // Zero phase freezes the cosine at exactly 1.
    CHECK(exact_terminal_clock(p, zero, 0.37) == solve_gated_clock(p, 1.0, p.T));

    const auto r = oracle_terminal(p, zero, 0.37);
    CHECK(r.integral_T == 0.37);
    CHECK(r.clock_T == exact_terminal_clock(p, zero, 0.37));
    REQUIRE(r.state_T.size() == 2);
    CHECK(r.state_T[0] == r.clock_T);
    CHECK(r.state_T[1] == r.integral_T);
}

TEST_CASE("embedding validation rejects malformed configurations") {
    CHECK_THROWS_AS(validate(EmbeddingCfg{1, 1, 1.0, {}}), Error);
    CHECK_THROWS_AS(validate(EmbeddingCfg{2, 0, 1.0, {}}), Error);
    CHECK_THROWS_AS(validate(EmbeddingCfg{2, 1, 0.5, {}}), Error);
    CHECK_THROWS_AS(validate(EmbeddingCfg{3, 1, 1.0, {0.0, 0.0}}), Error);
    CHECK_NOTHROW(validate(EmbeddingCfg{3, 2, 2.0, {0.1, 0.2, 0.3}}));
}

TEST_CASE("euler scheme is a pure function of seed and stream") {
    const auto p = default_params();
    const auto spec = make_single_chirp(5.0, 0.375, p.T);
    SimTrace ta, tb;
    const auto a = euler_maruyama(p, spec, 400, 17, 3, {}, &ta);
    const auto b = euler_maruyama(p, spec, 400, 17, 3, {}, &tb);
    CHECK(a.clock_T == b.clock_T);
    CHECK(a.integral_T == b.integral_T);
    REQUIRE(ta.clock.size() == 401);
    REQUIRE(ta.integral.size() == 401);
    for (std::size_t k = 0; k < ta.clock.size(); ++k) {
        CHECK(ta.clock[k] == tb.clock[k]);
        CHECK(ta.integral[k] == tb.integral[k]);
    }
    const auto c = euler_maruyama(p, spec, 400, 17, 4);
    CHECK(a.clock_T != c.clock_T);
}

TEST_CASE("clock advances at unit speed until the gate region") {
    const auto p = default_params();
    const auto zero = make_zero_phase();
    const int steps = 3000;
    const double dt = p.T / steps;
    SimTrace trace;
    (void)euler_maruyama(p, zero, steps, 8, 0, {}, &trace);
    for (int k = 0; k <= steps; ++k) {
        if (trace.clock[static_cast<std::size_t>(k)] >= p.tau1) break;
        CHECK(std::abs(trace.clock[static_cast<std::size_t>(k)] - k * dt) < 1e-12);
    }
    // The gate does fire eventually: the terminal clock outruns T.
    CHECK(trace.clock.back() > p.T + 0.1);
}

TEST_CASE("integral component freezes once the clock passes the gate") {
    const auto p = default_params();
    const auto spec = make_single_chirp(5.0, 0.375, p.T);
    SimTrace trace;
    (void)euler_maruyama(p, spec, 2000, 21, 5, {}, &trace);
    std::size_t k0 = 0;
    while (k0 < trace.clock.size() && trace.clock[k0] < p.tau1) ++k0;
    REQUIRE(k0 < trace.clock.size());
    for (std::size_t k = k0; k < trace.integral.size(); ++k)
        CHECK(trace.integral[k] == trace.integral[k0]);
    // And it did move before freezing.
    CHECK(trace.integral[k0] != 0.0);
}

TEST_CASE("embedded components outside the pair stay bitwise constant") {
    const auto p = default_params();
    const auto spec = make_single_chirp(5.0, 0.375, p.T);
    EmbeddingCfg cfg;
    cfg.dim = 5;
    cfg.brown_dim = 3;
    cfg.scale_c = 7.0;
    cfg.shift = {0.3, -0.2, 1.1, 2.2, -3.3};
    const auto r = euler_maruyama(p, spec, 200, 9, 4, cfg);
    REQUIRE(r.state_T.size() == 5);
    CHECK(r.state_T[2] == 1.1);
    CHECK(r.state_T[3] == 2.2);
    CHECK(r.state_T[4] == -3.3);
    // Canonical coordinates recover the two-dimensional pair.
    CHECK(r.clock_T == (r.state_T[0] - 0.3) / 7.0);
    CHECK(r.integral_T == r.state_T[1] - (-0.2));
}

TEST_CASE("re-randomizing unused Brownian coordinates changes nothing") {
    const auto p = default_params();
    const auto spec = make_single_chirp(5.0, 0.375, p.T);
    EmbeddingCfg cfg;
    cfg.dim = 5;
    cfg.brown_dim = 3;
    cfg.scale_c = 7.0;
    cfg.shift = {0.3, -0.2, 1.1, 2.2, -3.3};
    const std::uint64_t sa[] = {1000, 2000, 3000};
    const std::uint64_t sb[] = {1000, 7777, 8888};
    const auto a = euler_maruyama(p, spec, 200, 9, 4, cfg, nullptr, sa);
    const auto b = euler_maruyama(p, spec, 200, 9, 4, cfg, nullptr, sb);
    for (std::size_t i = 0; i < a.state_T.size(); ++i) CHECK(a.state_T[i] == b.state_T[i]);
    CHECK(a.clock_T == b.clock_T);
    CHECK(a.integral_T == b.integral_T);

    // Changing the first coordinate does change the state.
    const std::uint64_t sc[] = {1001, 2000, 3000};
    const auto c = euler_maruyama(p, spec, 200, 9, 4, cfg, nullptr, sc);
    CHECK(a.integral_T != c.integral_T);

    const std::uint64_t bad[] = {1, 2};
    CHECK_THROWS_AS((void)euler_maruyama(p, spec, 200, 9, 4, cfg, nullptr, bad), Error);
}

TEST_CASE("path-driven scheme couples coarse and fine resolutions") {
    const auto p = default_params();
    const auto spec = make_single_chirp(5.0, 0.375, p.T);
    auto master = sample_path(uniform_grid(0.0, p.T, 512), 33, 2);
    const auto fine = euler_maruyama_on_path(p, spec, master, 512);
    const auto fine2 = euler_maruyama_on_path(p, spec, master, 512);
    CHECK(fine.clock_T == fine2.clock_T);
    CHECK(fine.integral_T == fine2.integral_T);

    const auto coarse = euler_maruyama_on_path(p, spec, master, 128);
    CHECK(coarse.clock_T != fine.clock_T);
    // Shared noise keeps the two resolutions in the same basin.
    CHECK(std::abs(coarse.integral_T - fine.integral_T) < 0.5);

    CHECK_THROWS_AS((void)euler_maruyama_on_path(p, spec, master, 100), Error);
    EmbeddingCfg multi;
    multi.dim = 2;
    multi.brown_dim = 2;
    CHECK_THROWS_AS((void)euler_maruyama_on_path(p, spec, master, 128, multi), Error);
}

TEST_CASE("strong error shrinks with refinement, independent of workers") {
    const auto p = default_params();
    // Levels stay strictly coarser than the master grid; a level equal to the
    // master would have identically zero error.
    const int steps[] = {16, 64};

    // Zero phase: cos(psi) == 1 no matter what the integral does, so the
    // clock recursion is deterministic and every sample sees the same error.
    const auto zero = make_zero_phase();
    const auto flat = strong_error_experiment(p, zero, steps, 32, 111, 256, 1);
    REQUIRE(flat.size() == 2);
    CHECK(flat[0].steps == 16);
    CHECK(flat[1].steps == 64);
    CHECK(flat[0].samples == 32);
    CHECK(flat[0].mean_error > flat[1].mean_error);
    CHECK(flat[1].mean_error > 0.0);
    CHECK(flat[0].std_error == 0.0);
    CHECK(flat[1].std_error == 0.0);

    // A chirp over the integral's typical range makes the level genuinely
    // path-dependent, so the error varies across samples.
    const auto chirp = make_single_chirp(2.0, 0.375, p.T);
    const auto one = strong_error_experiment(p, chirp, steps, 32, 111, 256, 1);
    const auto four = strong_error_experiment(p, chirp, steps, 32, 111, 256, 4);
    REQUIRE(one.size() == 2);
    CHECK(one[1].std_error > 0.0);
    for (std::size_t j = 0; j < one.size(); ++j) {
        CHECK(one[j].mean_error == four[j].mean_error);
        CHECK(one[j].std_error == four[j].std_error);
    }
}
