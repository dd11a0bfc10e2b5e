#include "quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace slowsde {

void validate(const QuadratureCfg& cfg) {
    require(cfg.node_count >= 8, "node_count >= 8");
    require(cfg.tol > 0.0, "tol > 0");
    require(cfg.max_depth >= 1, "max_depth >= 1");
}

namespace {

// Newton iteration on the Legendre polynomial, seeded by the Chebyshev
// approximation of the k-th root. Converges to full precision in a few steps.
GaussRule build_rule(int order) {
    GaussRule rule;
    rule.node.resize(order);
    rule.weight.resize(order);
    const int half = (order + 1) / 2;
    for (int k = 0; k < half; ++k) {
        double x = std::cos(M_PI * (k + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= order; ++j) {
                const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.node[k] = -x;
        rule.node[order - 1 - k] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weight[k] = w;
        rule.weight[order - 1 - k] = w;
    }
    if (order % 2 == 1) rule.node[order / 2] = 0.0;
    return rule;
}

}  // namespace

const GaussRule& gauss_rule(int order) {
    require(order >= 2, "gauss order >= 2");
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, build_rule(order)).first;
    return it->second;
}

namespace {

double simpson(double fa, double fm, double fb, double h) { return h / 6.0 * (fa + 4.0 * fm + fb); }

void simpson_rec(const std::function<double(double)>& fn, double a, double m, double b, double fa,
                 double fm, double fb, double whole, double tol, int depth, SimpsonResult& out) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = fn(lm), frm = fn(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (depth <= 0) {
        out.converged = false;
        out.err_estimate += std::abs(delta);
        out.value += left + right + delta / 15.0;
        return;
    }
    if (std::abs(delta) <= 15.0 * tol) {
        out.err_estimate += std::abs(delta) / 15.0;
        out.value += left + right + delta / 15.0;
        return;
    }
    simpson_rec(fn, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1, out);
    simpson_rec(fn, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1, out);
}

}  // namespace

SimpsonResult adaptive_simpson(const std::function<double(double)>& fn, double a, double b,
                               double tol, int max_depth) {
    require(tol > 0.0, "tol > 0");
    SimpsonResult out;
    if (a == b) return out;
    const double m = 0.5 * (a + b);
    const double fa = fn(a), fm = fn(m), fb = fn(b);
    const double whole = simpson(fa, fm, fb, b - a);
    simpson_rec(fn, a, m, b, fa, fm, fb, whole, tol, max_depth, out);
    return out;
}

}  // namespace slowsde
