#include "special.hpp"

#include <cmath>

#include "error.hpp"

namespace slowsde {

double erfcx(double x) {
    require(x >= 0.0, "erfcx argument >= 0");
    if (x < 25.0) return std::erfc(x) * std::exp(x * x);
    // 1/(x sqrt(pi)) * sum (-1)^k (2k-1)!! / (2 x^2)^k; at x >= 25 the terms
    // fall below machine epsilon before they start growing.
    const double inv2x2 = 1.0 / (2.0 * x * x);
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 12; ++k) {
        term *= -(2.0 * k - 1.0) * inv2x2;
        sum += term;
        if (std::abs(term) < 1e-18) break;
    }
    return sum / (x * 1.7724538509055160272981675);
}

double log_gauss_window(double a, double b, double alpha) {
    require(alpha > 0.0, "alpha > 0");
    require(0.0 <= a && a < b, "0 <= a < b");
    const double s = std::sqrt(alpha);
    const double u = a / s, v = b / s;
    // erfc(u) - erfc(v) = exp(-u^2) * (erfcx(u) - erfcx(v) exp(u^2 - v^2)).
    const double tail = erfcx(v) * std::exp(u * u - v * v);
    const double diff = erfcx(u) - tail;
    return std::log(std::sqrt(M_PI * alpha) / 2.0) - u * u + std::log(diff);
}

}  // namespace slowsde
