#pragma once

#include <cstdint>

#include "brownian.hpp"
#include "chirp.hpp"
#include "coefficients.hpp"
#include "dynamics.hpp"

namespace slowsde {

// Explicit terminal-gap lower bound for a matched chirp window centered at
// c_center. All factors are reported separately; the Gaussian window mass
// lives in log-domain because it underflows for centers past ~40.
struct LowerBoundReport {
    double c_center = 0.0;
    double log_prefactor = 0.0;
    double sin_weight = 0.0;
    double log_gauss_window = 0.0;
    double log_bound = 0.0;
};

LowerBoundReport lower_bound(const Params& p, double c_center);

// Natural log of the bound at window center 5m; the schedule builder's
// error-floor callback.
double log_error_floor_at(const Params& p, std::uint64_t m);

double sin_weight_factor(const Params& p, const QuadratureCfg& cfg);

// Lebesgue measure of {x in [c-1, c+1] : |sin((x-c)/beta)| >= 1/2}.
// Closed form by interval arithmetic on the bands beta*[pi/6 + k pi,
// 5 pi/6 + k pi]; the grid variant counts cells with bisection-refined
// boundary cells and serves as the oracle.
double sin_measure_closed(double c, double beta);
double sin_measure_grid(double c, double beta, std::uint64_t grid_n);
double sin_measure(double c, double beta, std::uint64_t grid_n);

struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
};

// Monte Carlo mean of half the terminal-clock gap between the two equally
// likely hidden outcomes +Y2 and -Y2. Lower-bounds any predictor's L1 error.
McEstimate two_point_lower_estimate(const Params& p, const ChirpSpec& spec, double a, double b,
                                    std::uint64_t samples, std::uint64_t seed, int threads = 1,
                                    const TerminalClockTable* table = nullptr);

// Nested Monte Carlo estimate of the best-predictor L1 error: outer draws of
// the observed component, inner draws of the hidden one, conditional median
// as the optimal predictor. The same sorted inner sample is reused for the
// median and the deviations; the 2x-inner estimate exposes inner-sample bias.
struct PredictorReport {
    McEstimate inner_estimate;
    McEstimate double_inner_estimate;
    std::uint64_t outer = 0;
    std::uint64_t inner = 0;
};

PredictorReport optimal_predictor_error(const Params& p, const ChirpSpec& spec, double a, double b,
                                        std::uint64_t outer, std::uint64_t inner,
                                        std::uint64_t seed, int threads = 1,
                                        const TerminalClockTable* table = nullptr);

}  // namespace slowsde
