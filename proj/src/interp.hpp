#pragma once

#include <vector>

#include "error.hpp"

namespace slowsde {

// Cubic Hermite interpolant with the Fritsch-Carlson slope limiter. Given a
// monotone data set with consistent end slopes, the limited interpolant is
// monotone on every interval and C1 overall. Queries outside the node range
// clamp to the boundary values.
class MonotoneCubic {
public:
    MonotoneCubic() = default;
    MonotoneCubic(std::vector<double> x, std::vector<double> y, std::vector<double> slope);

    double operator()(double q) const;
    double slope_at(double q) const;

    double x_front() const { return x_.front(); }
    double x_back() const { return x_.back(); }

private:
    std::size_t interval(double q) const;

    std::vector<double> x_, y_, d_;
};

}  // namespace slowsde
