#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "coefficients.hpp"
#include "error.hpp"

namespace slowsde {

// C-infinity monotone blend: 0 for u <= 0, 1 for u >= 1, built from the decay
// kernel so all derivatives vanish at both ends.
double smoothstep(double u);

struct ChirpWindow {
    double center = 0.0;
    double freq = 0.0;      // exp(log_freq); +inf when not representable
    double log_freq = 0.0;  // natural log, the authoritative value
};

// Piecewise linear phase. Inside a window [center - 2, center + 2] the phase
// is exactly freq * (x - center); between consecutive windows the two linear
// extensions are smoothstep-blended across the gap; beyond the first/last
// window the boundary line extends unchanged. No windows: identically zero.
struct ChirpSpec {
    std::vector<ChirpWindow> windows;
    static constexpr double kHalfWidth = 2.0;
};

ChirpSpec make_zero_phase();
ChirpSpec make_single_chirp(double center, double eps_width, double T);
void validate(const ChirpSpec& spec);
double eval_chirp(const ChirpSpec& spec, double x);

// Index that may exceed any integer type: ln_n is always valid, n only when
// the index fits in 64 bits.
struct LogIndex {
    bool exact = true;
    std::uint64_t n = 1;
    double ln_n = 0.0;

    static LogIndex from_exact(std::uint64_t n);
    static LogIndex from_ln(double ln);
    bool less_than(const LogIndex& other) const;
};

// Positive-index sequence, either an explicit list (1-based) or one of two
// parametric families: kappa * n^{-expo}, or 1 / log(n + 1). The per_eval flag
// divides every entry by (n + 1).
struct ErrorSequence {
    enum class Kind { list, power, log_decay };

    Kind kind = Kind::list;
    std::vector<double> values;
    double kappa = 1.0;
    double expo = 1.0;
    std::uint64_t horizon = 0;
    bool per_eval = false;

    static constexpr std::uint64_t kUnbounded = ~0ull;

    double value(std::uint64_t n) const;
    // Natural log of the entry at idx; -inf when the entry is <= 0. Works for
    // indices far beyond the integer range via ln_n.
    double log_value(const LogIndex& idx) const;
    bool parametric_monotone() const;
};

ErrorSequence make_list_sequence(std::vector<double> values);
ErrorSequence make_power_sequence(double kappa, double expo,
                                  std::uint64_t horizon = ErrorSequence::kUnbounded);
ErrorSequence make_log_decay_sequence(std::uint64_t horizon = ErrorSequence::kUnbounded);

// Checks a radius sequence for use as mollifier widths: entries in (0, tau],
// non-increasing (parametric families by construction, lists by scan).
void validate_radius_sequence(const ErrorSequence& seq, double tau);

// Running minimum / tail supremum. Parametric monotone families pass through
// unchanged; non-monotone parametric input needs a materializable horizon.
ErrorSequence prefix_min(const ErrorSequence& seq);
ErrorSequence tail_sup(const ErrorSequence& seq);

// Pointwise n-th entry divided by (n + 1): accounts for schemes charged per
// coefficient evaluation instead of per step.
ErrorSequence adjust_for_evaluations(const ErrorSequence& seq);

struct ScheduleEntry {
    std::uint64_t m = 0;
    double center = 0.0;
    LogIndex n;              // smallest admissible index, strictly increasing in m
    double log_floor = 0.0;  // natural log of the window's error floor
    double log_delta = 0.0;  // natural log of delta at n; -inf when delta <= 0
};

struct FrequencySchedule {
    std::vector<ScheduleEntry> entries;  // m = 1 .. m_max + 1 (last one feeds the final window)
    ChirpSpec spec;                      // windows at centers 5m for m = 1 .. m_max
};

// For each window m picks the smallest index n(m), strictly increasing in m,
// whose target rate delta_{n(m)} lies below the window's error floor; window m
// then carries frequency T^{3/2} / eps_{n(m+1)}^{3/2}. All comparisons run in
// the log domain; indices are representable as long as ln(n) fits in a double.
// log_floor_at(m) supplies the natural log of the floor for the window at 5m.
FrequencySchedule build_frequency_schedule(const Params& p, const ErrorSequence& radius_seq,
                                           const ErrorSequence& rate_seq, std::uint64_t m_max,
                                           const std::function<double(std::uint64_t)>& log_floor_at);

// Natural log of c = max(1, max_{n <= n0} rate_n^+ / floor(n)): the factor that
// lifts the process until the prescribed rates up to n0 sit below the floors.
double scaling_constant(const ErrorSequence& rate_seq, std::uint64_t n0,
                        const std::function<double(std::uint64_t)>& log_floor_at);

}  // namespace slowsde
