#pragma once

#include <cstddef>
#include <vector>

namespace tgr {

// Piecewise-cubic Hermite interpolant on a strictly increasing grid.
// Knot slopes come from three-point finite differences (parabolic fit), so
// the curve is C1 and locally exact for cubics up to the slope estimate.
// Evaluation outside the grid clamps to the end segments.
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const { return eval(x); }
    double eval(double x) const;
    double deriv(double x) const;
    double second(double x) const;

    bool empty() const { return x_.empty(); }
    const std::vector<double>& grid() const { return x_; }
    const std::vector<double>& values() const { return y_; }

private:
    std::size_t segment(double x) const;
    std::vector<double> x_, y_, m_; // knots, values, knot slopes
};

} // namespace tgr
