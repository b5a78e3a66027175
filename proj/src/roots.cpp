#include "tachyon/roots.hpp"

#include <cmath>

namespace tgr {

double bisect(const std::function<double(double)>& f, double lo, double hi, double xtol) {
    double flo = f(lo);
    for (int i = 0; i < 200 && (hi - lo) > xtol; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((flo <= 0.0) == (fm <= 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<Root> scan_roots(const std::function<double(double)>& f, double a, double b,
                             int n_scan, double xtol, double f_scale) {
    std::vector<Root> roots;
    if (n_scan < 2 || b <= a) return roots;
    const double h = (b - a) / n_scan;
    double x_prev = a, f_prev = f(a);
    double f_prev2 = f_prev; // for local-minimum detection
    for (int i = 1; i <= n_scan; ++i) {
        const double x = (i == n_scan) ? b : a + i * h;
        const double fx = f(x);
        if ((f_prev <= 0.0) != (fx <= 0.0)) {
            Root r;
            r.r = bisect(f, x_prev, x, xtol);
            roots.push_back(r);
        } else if (i >= 2 && std::abs(f_prev) < std::abs(f_prev2) &&
                   std::abs(f_prev) < std::abs(fx) &&
                   std::abs(f_prev) <= 1e-9 * f_scale) {
            // |f| dips to ~zero without crossing: grazing root
            Root r;
            r.r = x_prev;
            r.tangency = true;
            roots.push_back(r);
        }
        f_prev2 = f_prev;
        x_prev = x;
        f_prev = fx;
    }
    return roots;
}

double golden_min(const std::function<double(double)>& f, double a, double b, double xtol) {
    const double gr = 0.6180339887498949; // 1/phi
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while ((b - a) > xtol) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

} // namespace tgr
