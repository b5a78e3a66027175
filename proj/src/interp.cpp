#include "tachyon/interp.hpp"

#include <algorithm>
#include <cmath>

#include "tachyon/errors.hpp"

namespace tgr {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n != y_.size() || n < 2) throw validation_error("spline: need two or more knots");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1])) throw validation_error("spline: grid must increase strictly");
    m_.resize(n);
    // three-point slope estimates (second-order at interior knots)
    m_[0] = (y_[1] - y_[0]) / (x_[1] - x_[0]);
    m_[n - 1] = (y_[n - 1] - y_[n - 2]) / (x_[n - 1] - x_[n - 2]);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double hl = x_[i] - x_[i - 1], hr = x_[i + 1] - x_[i];
        const double sl = (y_[i] - y_[i - 1]) / hl, sr = (y_[i + 1] - y_[i]) / hr;
        m_[i] = (hr * sl + hl * sr) / (hl + hr);
    }
}

std::size_t CubicSpline::segment(double x) const {
    if (x <= x_.front()) return 0;
    if (x >= x_.back()) return x_.size() - 2;
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    return (std::size_t)(it - x_.begin()) - 1;
}

double CubicSpline::eval(double x) const {
    const std::size_t i = segment(x);
    const double h = x_[i + 1] - x_[i], t = (x - x_[i]) / h;
    const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
    const double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
    return h00 * y_[i] + h * h10 * m_[i] + h01 * y_[i + 1] + h * h11 * m_[i + 1];
}

double CubicSpline::deriv(double x) const {
    const std::size_t i = segment(x);
    const double h = x_[i + 1] - x_[i], t = (x - x_[i]) / h;
    const double d00 = (6 * t * t - 6 * t) / h, d10 = 3 * t * t - 4 * t + 1;
    const double d01 = (6 * t - 6 * t * t) / h, d11 = 3 * t * t - 2 * t;
    return d00 * y_[i] + d10 * m_[i] + d01 * y_[i + 1] + d11 * m_[i + 1];
}

double CubicSpline::second(double x) const {
    const std::size_t i = segment(x);
    const double h = x_[i + 1] - x_[i], t = (x - x_[i]) / h;
    const double s00 = (12 * t - 6) / (h * h), s10 = (6 * t - 4) / h;
    const double s01 = (6 - 12 * t) / (h * h), s11 = (6 * t - 2) / h;
    return s00 * y_[i] + s10 * m_[i] + s01 * y_[i + 1] + s11 * m_[i + 1];
}

} // namespace tgr
