#include "fockren/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace fockren {

namespace {

// tanh-sinh nodes on (-1,1): x = tanh(pi/2 sinh t), w = pi/2 cosh t / cosh^2(pi/2 sinh t)
double tanh_sinh(const std::function<double(double)>& g, double rel_tol) {
    const double tmax = 4.3; // beyond this the weights underflow
    double prev = 0.0;
    double result = 0.0;
    for (int level = 2; level <= 12; ++level) {
        double h = tmax / std::ldexp(1.0, level);
        double sum = 0.0;
        long n = std::lround(tmax / h);
        for (long j = -n; j <= n; ++j) {
            // on refinement only odd nodes are new, but recomputing keeps this simple
            double t = j * h;
            double s = std::sinh(t) * (M_PI / 2.0);
            double x = std::tanh(s);
            double w = (M_PI / 2.0) * std::cosh(t) / (std::cosh(s) * std::cosh(s));
            if (!std::isfinite(w) || w == 0.0) continue;
            double v = g(x);
            if (std::isfinite(v)) sum += w * v;
        }
        result = sum * h;
        if (level >= 5) {
            double denom = std::max(std::abs(result), 1e-300);
            if (std::abs(result - prev) <= rel_tol * denom) return result;
        }
        prev = result;
    }
    return result;
}

} // namespace

double integrate_finite(const std::function<double(double)>& f, double lo, double hi,
                        double rel_tol) {
    if (!(lo < hi)) return 0.0;
    double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    return tanh_sinh([&](double x) { return f(mid + half * x) * half; }, rel_tol);
}

double integrate_tail(const std::function<double(double)>& f, double lo, double rel_tol) {
    // r = lo + t/(1-t), dr = dt/(1-t)^2, t in [0,1)
    return integrate_finite(
        [&](double t) {
            double om = 1.0 - t;
            double r = lo + t / om;
            return f(r) / (om * om);
        },
        0.0, 1.0, rel_tol);
}

} // namespace fockren
