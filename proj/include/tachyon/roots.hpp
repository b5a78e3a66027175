#pragma once

#include <functional>
#include <vector>

namespace tgr {

struct Root {
    double r = 0.0;
    bool tangency = false; // grazing contact: f touches zero without a sign change
};

// Scan [a, b] with n_scan uniform samples, bisect every sign change down to
// xtol, and flag near-zero local minima of |f| as tangencies (multiplicity-2
// roots that never cross).
std::vector<Root> scan_roots(const std::function<double(double)>& f, double a, double b,
                             int n_scan, double xtol, double f_scale);

// Bisection on a known bracket [lo, hi] with f(lo)*f(hi) <= 0.
double bisect(const std::function<double(double)>& f, double lo, double hi, double xtol);

// Golden-section minimum of a unimodal function on [a, b].
double golden_min(const std::function<double(double)>& f, double a, double b, double xtol);

} // namespace tgr
