#pragma once

#include <functional>

namespace tgr {

struct QuadResult {
    double value = 0.0;
    double err_estimate = 0.0;
    int intervals = 0;
    bool converged = true;
};

// Adaptive Gauss-Kronrod 15(7) on a finite interval.  Splits the worst
// interval until the summed Kronrod-Gauss discrepancy meets
// abs_tol + rel_tol*|I|, or the interval budget runs out (converged=false,
// partial value still returned).
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, double rel_tol, int max_intervals = 2000);

// Convenience wrapper that throws tgr::numerical_error (with the partial
// value in the message) when the budget is exhausted.
double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, double rel_tol, const char* what,
                          int max_intervals = 2000);

// Double-exponential (tanh-sinh) quadrature on [a, b].  Handles integrable
// endpoint singularities; converges to rel_tol on smooth integrands.
double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10);

// Double-exponential (exp-sinh) quadrature on [a, +inf) for integrands with
// exponential or fast power-law decay.
double exp_sinh(const std::function<double(double)>& f, double a,
                double rel_tol = 1e-10);

} // namespace tgr
