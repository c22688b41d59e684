#pragma once

#include <functional>

namespace fockren {

// Double-exponential (tanh-sinh) quadrature on a finite interval. Handles
// integrable endpoint singularities, which radial power-law integrands have.
double integrate_finite(const std::function<double(double)>& f, double lo, double hi,
                        double rel_tol);

// Integral over [lo, inf) for integrands decaying faster than 1/r.
// Substitutes r = lo + t/(1-t) and reuses the finite rule.
double integrate_tail(const std::function<double(double)>& f, double lo, double rel_tol);

} // namespace fockren
