#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "error.hpp"

namespace slowsde {

// Shared quadrature settings. node_count is the Gauss-Legendre order per
// smooth panel; tol and max_depth drive the adaptive Simpson fallback used
// for cross-checks and for integrands without known panel structure.
struct QuadratureCfg {
    int node_count = 64;
    double tol = 1e-10;
    int max_depth = 48;
};

void validate(const QuadratureCfg& cfg);

// Gauss-Legendre nodes and weights on (-1, 1), computed once per order.
struct GaussRule {
    std::vector<double> node;
    std::vector<double> weight;
};

const GaussRule& gauss_rule(int order);

template <class F>
double gauss_panel(F&& fn, double a, double b, int order) {
    const GaussRule& rule = gauss_rule(order);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.node.size(); ++i)
        acc += rule.weight[i] * fn(mid + half * rule.node[i]);
    return half * acc;
}

// Integrates over [breaks.front(), breaks.back()] with one Gauss panel per
// consecutive pair. Breaks must be non-decreasing; callers place them at the
// integrand's kinks so every panel sees a smooth function.
template <class F>
double gauss_panels(F&& fn, std::span<const double> breaks, int order) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        if (breaks[i] < breaks[i + 1]) acc += gauss_panel(fn, breaks[i], breaks[i + 1], order);
    return acc;
}

// Panel integration with uniform refinement until two successive levels agree
// to rel_tol (or abs floor). Each level halves every panel. Throws Errc::quadrature
// if max_doublings levels disagree.
template <class F>
double gauss_refined(F&& fn, std::span<const double> breaks, const QuadratureCfg& cfg,
                     int max_doublings = 10) {
    std::vector<double> pts(breaks.begin(), breaks.end());
    double prev = gauss_panels(fn, pts, cfg.node_count);
    for (int level = 0; level < max_doublings; ++level) {
        std::vector<double> next;
        next.reserve(pts.size() * 2);
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            next.push_back(pts[i]);
            next.push_back(0.5 * (pts[i] + pts[i + 1]));
        }
        next.push_back(pts.back());
        pts.swap(next);
        const double cur = gauss_panels(fn, pts, cfg.node_count);
        const double scale = std::max(1e-300, std::abs(cur));
        if (std::abs(cur - prev) <= cfg.tol * scale) return cur;
        prev = cur;
    }
    throw Error(Errc::quadrature, "panel refinement did not converge");
}

struct SimpsonResult {
    double value = 0.0;
    double err_estimate = 0.0;  // accumulated Richardson estimate
    bool converged = true;
};

// Classic adaptive Simpson with Richardson error control. Never throws; the
// caller inspects `converged` and decides whether a stale estimate is fatal.
SimpsonResult adaptive_simpson(const std::function<double(double)>& fn, double a, double b,
                               double tol, int max_depth);

}  // namespace slowsde
