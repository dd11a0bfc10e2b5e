#include "interp.hpp"

#include <algorithm>
#include <cmath>

namespace slowsde {

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y,
                             std::vector<double> slope)
    : x_(std::move(x)), y_(std::move(y)), d_(std::move(slope)) {
    require(x_.size() >= 2, "interpolation nodes >= 2");
    require(x_.size() == y_.size() && x_.size() == d_.size(), "interpolation arrays same size");
    for (std::size_t i = 0; i + 1 < x_.size(); ++i)
        require(x_[i] < x_[i + 1], "interpolation nodes strictly increasing");

    // Fritsch-Carlson: on each interval the scaled slopes (a, b) must satisfy
    // a^2 + b^2 <= 9 for monotonicity; rescale toward the secant when not.
    for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
        const double h = x_[i + 1] - x_[i];
        const double s = (y_[i + 1] - y_[i]) / h;
        if (s == 0.0) {
            d_[i] = 0.0;
            d_[i + 1] = 0.0;
            continue;
        }
        const double a = d_[i] / s, b = d_[i + 1] / s;
        if (a < 0.0) d_[i] = 0.0;
        if (b < 0.0) d_[i + 1] = 0.0;
        const double r = a * a + b * b;
        if (r > 9.0) {
            const double t = 3.0 / std::sqrt(r);
            d_[i] = t * a * s;
            d_[i + 1] = t * b * s;
        }
    }
}

std::size_t MonotoneCubic::interval(double q) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), q);
    if (it == x_.begin()) return 0;
    std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
    return std::min(i, x_.size() - 2);
}

double MonotoneCubic::operator()(double q) const {
    if (q <= x_.front()) return y_.front();
    if (q >= x_.back()) return y_.back();
    const std::size_t i = interval(q);
    const double h = x_[i + 1] - x_[i];
    const double t = (q - x_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
}

double MonotoneCubic::slope_at(double q) const {
    if (q <= x_.front()) return d_.front();
    if (q >= x_.back()) return d_.back();
    const std::size_t i = interval(q);
    const double h = x_[i + 1] - x_[i];
    const double t = (q - x_[i]) / h;
    const double t2 = t * t;
    const double g00 = (6 * t2 - 6 * t) / h;
    const double g10 = 3 * t2 - 4 * t + 1;
    const double g01 = -g00;
    const double g11 = 3 * t2 - 2 * t;
    return g00 * y_[i] + g10 * d_[i] + g01 * y_[i + 1] + g11 * d_[i + 1];
}

}  // namespace slowsde
