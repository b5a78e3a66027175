#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace tgr {

using Vec4 = std::array<double, 4>;
using Mat4 = std::array<std::array<double, 4>, 4>;

// Connection coefficients: Gamma[lambda][mu][nu], symmetric in (mu, nu).
using Connection = std::array<Mat4, 4>;

inline Mat4 zero_mat4() {
    Mat4 m{};
    return m;
}

inline Mat4 diag(double g00, double g11, double g22, double g33) {
    Mat4 m{};
    m[0][0] = g00;
    m[1][1] = g11;
    m[2][2] = g22;
    m[3][3] = g33;
    return m;
}

inline double det_diag(const Mat4& g) {
    return g[0][0] * g[1][1] * g[2][2] * g[3][3];
}

// Determinant of a general 4x4 by cofactor expansion.  The catalog metrics
// are all diagonal, but the finite-difference machinery stays general.
double det4(const Mat4& m);

// Inverse of a symmetric 4x4 via Gauss-Jordan with partial pivoting.
Mat4 inverse4(const Mat4& m);

// g_{mu nu} u^mu w^nu
inline double contract(const Mat4& g, const Vec4& u, const Vec4& w) {
    double s = 0.0;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            s += g[mu][nu] * u[mu] * w[nu];
    return s;
}

inline double max_abs(const Mat4& m) {
    double v = 0.0;
    for (const auto& row : m)
        for (double x : row)
            v = std::max(v, std::abs(x));
    return v;
}

} // namespace tgr
