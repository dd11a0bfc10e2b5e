#include "chirp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace slowsde {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kExactLimit = 1ull << 62;
}  // namespace

double smoothstep(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double a = decay_kernel(u);
    if (a == 0.0) return 0.0;
    const double b = decay_kernel(1.0 - u);
    if (b == 0.0) return 1.0;
    return a / (a + b);
}

ChirpSpec make_zero_phase() { return {}; }

ChirpSpec make_single_chirp(double center, double eps_width, double T) {
    require(center >= 2.0, "center >= 2");
    require(eps_width > 0.0, "eps > 0");
    require(T > 0.0, "0 < T");
    ChirpWindow w;
    w.center = center;
    w.log_freq = 1.5 * (std::log(T) - std::log(eps_width));
    w.freq = std::exp(w.log_freq);
    ChirpSpec spec;
    spec.windows.push_back(w);
    return spec;
}

void validate(const ChirpSpec& spec) {
    for (std::size_t i = 0; i + 1 < spec.windows.size(); ++i)
        require(spec.windows[i + 1].center - spec.windows[i].center > 2.0 * ChirpSpec::kHalfWidth,
                "window gap positive");
    for (const ChirpWindow& w : spec.windows)
        require(std::isfinite(w.log_freq), "log_freq finite");
}

namespace {

double window_line(const ChirpWindow& w, double x) { return w.freq * (x - w.center); }

}  // namespace

double eval_chirp(const ChirpSpec& spec, double x) {
    if (spec.windows.empty()) return 0.0;
    for (const ChirpWindow& w : spec.windows)
        if (!std::isfinite(w.freq))
            throw Error(Errc::invalid_argument,
                        "chirp frequency not representable; use the log-domain fields");

    const auto& ws = spec.windows;
    // Last window whose left edge is at or below x.
    auto it = std::upper_bound(ws.begin(), ws.end(), x, [](double q, const ChirpWindow& w) {
        return q < w.center - ChirpSpec::kHalfWidth;
    });
    if (it == ws.begin()) return window_line(ws.front(), x);
    const ChirpWindow& left = *(it - 1);
    if (x <= left.center + ChirpSpec::kHalfWidth || it == ws.end()) return window_line(left, x);

    const ChirpWindow& right = *it;
    const double lo = left.center + ChirpSpec::kHalfWidth;
    const double hi = right.center - ChirpSpec::kHalfWidth;
    const double s = smoothstep((x - lo) / (hi - lo));
    if (s == 0.0) return window_line(left, x);
    if (s == 1.0) return window_line(right, x);
    return (1.0 - s) * window_line(left, x) + s * window_line(right, x);
}

LogIndex LogIndex::from_exact(std::uint64_t n) {
    LogIndex idx;
    idx.exact = true;
    idx.n = n;
    idx.ln_n = std::log(static_cast<double>(n));
    return idx;
}

LogIndex LogIndex::from_ln(double ln) {
    LogIndex idx;
    idx.exact = false;
    idx.n = 0;
    idx.ln_n = ln;
    return idx;
}

bool LogIndex::less_than(const LogIndex& other) const {
    if (exact && other.exact) return n < other.n;
    return ln_n < other.ln_n;
}

double ErrorSequence::value(std::uint64_t n) const {
    require(n >= 1, "index >= 1");
    if (n > horizon) throw Error(Errc::horizon, "sequence horizon exceeded");
    double v = 0.0;
    switch (kind) {
        case Kind::list: v = values[n - 1]; break;
        case Kind::power: v = kappa * std::pow(static_cast<double>(n), -expo); break;
        case Kind::log_decay: v = 1.0 / std::log1p(static_cast<double>(n)); break;
    }
    if (per_eval) v /= static_cast<double>(n) + 1.0;
    return v;
}

double ErrorSequence::log_value(const LogIndex& idx) const {
    if (idx.exact) {
        const double v = value(idx.n);
        return v > 0.0 ? std::log(v) : -kInf;
    }
    if (kind == Kind::list) throw Error(Errc::horizon, "sequence horizon exceeded");
    if (horizon != kUnbounded && idx.ln_n > std::log(static_cast<double>(horizon)))
        throw Error(Errc::horizon, "sequence horizon exceeded");
    // Beyond the integer range ln(n + 1) and ln(n) agree to ~exp(-ln_n).
    const double ln_np1 = idx.ln_n;
    double lv;
    if (kind == Kind::power) {
        if (kappa <= 0.0) return -kInf;
        lv = std::log(kappa) - expo * idx.ln_n;
    } else {
        lv = -std::log(ln_np1);
    }
    if (per_eval) lv -= ln_np1;
    return lv;
}

bool ErrorSequence::parametric_monotone() const {
    switch (kind) {
        case Kind::list: return false;
        case Kind::power: return kappa > 0.0 && expo >= 0.0;
        case Kind::log_decay: return true;
    }
    return false;
}

ErrorSequence make_list_sequence(std::vector<double> values) {
    require(!values.empty(), "sequence non-empty");
    ErrorSequence seq;
    seq.kind = ErrorSequence::Kind::list;
    seq.horizon = values.size();
    seq.values = std::move(values);
    return seq;
}

ErrorSequence make_power_sequence(double kappa, double expo, std::uint64_t horizon) {
    require(std::isfinite(kappa) && std::isfinite(expo), "power parameters finite");
    ErrorSequence seq;
    seq.kind = ErrorSequence::Kind::power;
    seq.kappa = kappa;
    seq.expo = expo;
    seq.horizon = horizon;
    return seq;
}

ErrorSequence make_log_decay_sequence(std::uint64_t horizon) {
    ErrorSequence seq;
    seq.kind = ErrorSequence::Kind::log_decay;
    seq.horizon = horizon;
    return seq;
}

namespace {

bool nonincreasing(const ErrorSequence& seq) {
    if (seq.kind != ErrorSequence::Kind::list) return seq.parametric_monotone();
    for (std::size_t i = 0; i + 1 < seq.values.size(); ++i) {
        const double a = seq.values[i] / (seq.per_eval ? static_cast<double>(i) + 2.0 : 1.0);
        const double b = seq.values[i + 1] / (seq.per_eval ? static_cast<double>(i) + 3.0 : 1.0);
        if (b > a) return false;
    }
    return true;
}

std::vector<double> materialize(const ErrorSequence& seq) {
    if (seq.horizon == ErrorSequence::kUnbounded)
        throw Error(Errc::invalid_argument, "horizon required");
    if (seq.horizon > (1ull << 24))
        throw Error(Errc::invalid_argument, "horizon too large to materialize");
    std::vector<double> out;
    out.reserve(seq.horizon);
    for (std::uint64_t n = 1; n <= seq.horizon; ++n) out.push_back(seq.value(n));
    return out;
}

// Lists with the per_eval flag fold the divisor into the stored values so the
// order transforms below act on the effective entries.
ErrorSequence fold_per_eval(const ErrorSequence& seq) {
    if (seq.kind != ErrorSequence::Kind::list || !seq.per_eval) return seq;
    ErrorSequence out = seq;
    out.per_eval = false;
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] /= static_cast<double>(i) + 2.0;
    return out;
}

}  // namespace

void validate_radius_sequence(const ErrorSequence& seq, double tau) {
    if (seq.kind == ErrorSequence::Kind::list) {
        for (double v : seq.values) require(v > 0.0 && v <= tau, "eps_n in (0, tau]");
        require(nonincreasing(seq), "eps non-increasing (apply prefix_min first)");
        return;
    }
    require(seq.parametric_monotone(), "eps non-increasing (apply prefix_min first)");
    require(seq.value(1) > 0.0 && seq.value(1) <= tau, "eps_n in (0, tau]");
}

ErrorSequence prefix_min(const ErrorSequence& seq) {
    if (seq.kind != ErrorSequence::Kind::list && seq.parametric_monotone()) return seq;
    ErrorSequence out = seq.kind == ErrorSequence::Kind::list ? fold_per_eval(seq)
                                                              : make_list_sequence(materialize(seq));
    double running = kInf;
    for (double& v : out.values) {
        running = std::min(running, v);
        v = running;
    }
    return out;
}

ErrorSequence tail_sup(const ErrorSequence& seq) {
    if (seq.kind != ErrorSequence::Kind::list && seq.parametric_monotone()) return seq;
    ErrorSequence out = seq.kind == ErrorSequence::Kind::list ? fold_per_eval(seq)
                                                              : make_list_sequence(materialize(seq));
    double running = -kInf;
    for (auto it = out.values.rbegin(); it != out.values.rend(); ++it) {
        running = std::max(running, *it);
        *it = running;
    }
    return out;
}

ErrorSequence adjust_for_evaluations(const ErrorSequence& seq) {
    ErrorSequence out = seq;
    if (seq.kind == ErrorSequence::Kind::list) {
        for (std::size_t i = 0; i < out.values.size(); ++i)
            out.values[i] /= static_cast<double>(i) + 2.0;
        return out;
    }
    require(!seq.per_eval, "sequence not already per-evaluation adjusted");
    out.per_eval = true;
    return out;
}

namespace {

// Smallest index with log_value < log_target, not before `floor_idx`. Lists are
// scanned linearly; parametric monotone families are solved by bisection in
// ln(n) and exactized when the index fits in 64 bits.
LogIndex smallest_index_below(const ErrorSequence& seq, double log_target,
                              const LogIndex* floor_idx) {
    const std::uint64_t start = floor_idx && floor_idx->exact ? floor_idx->n + 1 : 1;

    if (seq.kind == ErrorSequence::Kind::list) {
        for (std::uint64_t n = start; n <= seq.horizon; ++n)
            if (seq.log_value(LogIndex::from_exact(n)) < log_target) return LogIndex::from_exact(n);
        throw Error(Errc::horizon, "horizon exhausted");
    }

    require(seq.parametric_monotone(), "delta non-increasing (apply tail_sup first)");

    auto log_at_ln = [&](double ln_n) { return seq.log_value(LogIndex::from_ln(ln_n)); };

    if (seq.log_value(LogIndex::from_exact(1)) < log_target) {
        // Every index is admissible; take the first one after the floor.
        if (floor_idx && !floor_idx->exact)
            return LogIndex::from_ln(std::nextafter(floor_idx->ln_n, kInf));
        return LogIndex::from_exact(start);
    }

    // Bracket the crossing in ln(n) by doubling, then bisect.
    double lo = 0.0, hi = 1.0;
    while (log_at_ln(hi) >= log_target) {
        lo = hi;
        hi *= 2.0;
        if (!std::isfinite(hi) || hi > 1e306)
            throw Error(Errc::invalid_argument, "schedule index exceeds log-domain range");
    }
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (log_at_ln(mid) >= log_target)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-12 * std::max(1.0, hi)) break;
    }

    const bool prev_exact = !floor_idx || floor_idx->exact;
    if (prev_exact && hi < std::log(static_cast<double>(kExactLimit))) {
        std::uint64_t n = static_cast<std::uint64_t>(std::floor(std::exp(hi)));
        n = std::max<std::uint64_t>(n, 1);
        while (n > start && seq.log_value(LogIndex::from_exact(n - 1)) < log_target) --n;
        n = std::max(n, start);
        while (seq.log_value(LogIndex::from_exact(n)) >= log_target) {
            ++n;
            if (n >= kExactLimit) return LogIndex::from_ln(hi);
        }
        return LogIndex::from_exact(n);
    }
    LogIndex cand = LogIndex::from_ln(hi);
    if (floor_idx && !floor_idx->less_than(cand)) {
        // Monotone rates: any index past the floor stays admissible.
        cand = LogIndex::from_ln(std::nextafter(floor_idx->ln_n, kInf));
        cand.exact = false;
    }
    return cand;
}

}  // namespace

FrequencySchedule build_frequency_schedule(
    const Params& p, const ErrorSequence& radius_seq, const ErrorSequence& rate_seq,
    std::uint64_t m_max, const std::function<double(std::uint64_t)>& log_floor_at) {
    require(m_max >= 1, "m_max >= 1");
    require(nonincreasing(rate_seq), "delta non-increasing (apply tail_sup first)");
    validate_radius_sequence(radius_seq, p.tau);

    FrequencySchedule out;
    out.entries.reserve(m_max + 1);
    const LogIndex* prev = nullptr;
    for (std::uint64_t m = 1; m <= m_max + 1; ++m) {
        const double floor_log = log_floor_at(m);
        require(std::isfinite(floor_log), "error floor log finite");
        ScheduleEntry e;
        e.m = m;
        e.center = 5.0 * static_cast<double>(m);
        e.n = smallest_index_below(rate_seq, floor_log, prev);
        e.log_floor = floor_log;
        e.log_delta = rate_seq.log_value(e.n);
        out.entries.push_back(e);
        prev = &out.entries.back().n;
    }

    for (std::uint64_t m = 1; m <= m_max; ++m) {
        const double ln_eps = radius_seq.log_value(out.entries[m].n);
        ChirpWindow w;
        w.center = 5.0 * static_cast<double>(m);
        w.log_freq = 1.5 * (std::log(p.T) - ln_eps);
        w.freq = std::exp(w.log_freq);
        out.spec.windows.push_back(w);
    }
    validate(out.spec);
    return out;
}

double scaling_constant(const ErrorSequence& rate_seq, std::uint64_t n0,
                        const std::function<double(std::uint64_t)>& log_floor_at) {
    require(n0 >= 1, "n0 >= 1");
    if (n0 > 10'000'000ull)
        throw Error(Errc::invalid_argument, "n0 exceeds the direct-scan limit (1e7)");
    double log_c = 0.0;
    for (std::uint64_t n = 1; n <= n0; ++n) {
        const double lv = rate_seq.log_value(LogIndex::from_exact(n));
        if (lv == -kInf) continue;
        log_c = std::max(log_c, lv - log_floor_at(n));
    }
    return log_c;
}

}  // namespace slowsde
