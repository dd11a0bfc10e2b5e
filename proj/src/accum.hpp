#pragma once

#include <cmath>
#include <cstdint>

namespace slowsde {

// Neumaier compensated accumulator. Adding a fixed value sequence yields the
// same bits regardless of how the work that produced the values was threaded,
// which is what the reproducibility contract for reductions requires.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }

    double total() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

struct MeanStdErr {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t count = 0;
};

// Mean and standard error of a stored sample vector, reduced in index order.
template <class Container>
MeanStdErr mean_std_error(const Container& values) {
    MeanStdErr out;
    out.count = values.size();
    if (out.count == 0) return out;
    CompensatedSum s;
    for (double v : values) s.add(v);
    out.mean = s.total() / static_cast<double>(out.count);
    if (out.count < 2) return out;
    CompensatedSum q;
    for (double v : values) {
        const double d = v - out.mean;
        q.add(d * d);
    }
    const double var = q.total() / static_cast<double>(out.count - 1);
    out.std_error = std::sqrt(var / static_cast<double>(out.count));
    return out;
}

}  // namespace slowsde
