#pragma once

// Test-side oracles, deliberately independent of the library numerics they
// check: Christoffel symbols rebuilt from metric_components alone by
// Richardson-extrapolated central differences (own matrix inverse included),
// a composite-Simpson quadrature, and a deterministic uniform generator.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>

#include "tachyon/mat.hpp"
#include "tachyon/spacetime.hpp"

namespace oracle {

using tgr::Connection;
using tgr::Mat4;
using tgr::Vec4;
using tgr::spacetime::MetricSpec;

inline double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0.0) return 0.0;
    return std::abs(a - b) / scale;
}

// Gauss-Jordan inverse with partial pivoting, written here so the oracle
// does not lean on the library's inverse_metric.
inline Mat4 invert(Mat4 a) {
    Mat4 inv{};
    for (int i = 0; i < 4; ++i) inv[i][i] = 1.0;
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int row = col + 1; row < 4; ++row)
            if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
        std::swap(a[col], a[pivot]);
        std::swap(inv[col], inv[pivot]);
        const double d = a[col][col];
        for (int j = 0; j < 4; ++j) {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for (int row = 0; row < 4; ++row) {
            if (row == col) continue;
            const double m = a[row][col];
            if (m == 0.0) continue;
            for (int j = 0; j < 4; ++j) {
                a[row][j] -= m * a[col][j];
                inv[row][j] -= m * inv[col][j];
            }
        }
    }
    return inv;
}

// d g_{mu nu} / d x^k: central differences at steps h and h/2 combined by
// one Richardson level, truncation O(h^4).
inline Mat4 metric_partial(const MetricSpec& spec, const Vec4& x, int k, double h) {
    auto at = [&](double delta) {
        Vec4 y = x;
        y[k] += delta;
        return tgr::spacetime::metric_components(spec, y);
    };
    const Mat4 gp = at(h), gm = at(-h), gp2 = at(0.5 * h), gm2 = at(-0.5 * h);
    Mat4 out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const double d1 = (gp[i][j] - gm[i][j]) / (2.0 * h);
            const double d2 = (gp2[i][j] - gm2[i][j]) / h;
            out[i][j] = (4.0 * d2 - d1) / 3.0;
        }
    return out;
}

// Gamma^l_{mn} = (1/2) g^{ld} (d_m g_{dn} + d_n g_{dm} - d_d g_{mn}),
// every ingredient taken from metric_components only.
inline Connection christoffel_fd(const MetricSpec& spec, const Vec4& x, double h_base) {
    std::array<Mat4, 4> dg;
    for (int k = 0; k < 4; ++k)
        dg[k] = metric_partial(spec, x, k, h_base * std::max(1.0, std::abs(x[k])));
    const Mat4 ginv = invert(tgr::spacetime::metric_components(spec, x));
    Connection gam{};
    for (int l = 0; l < 4; ++l)
        for (int m = 0; m < 4; ++m)
            for (int n = 0; n < 4; ++n) {
                double s = 0.0;
                for (int d = 0; d < 4; ++d)
                    s += ginv[l][d] * (dg[m][d][n] + dg[n][d][m] - dg[d][m][n]);
                gam[l][m][n] = 0.5 * s;
            }
    return gam;
}

// Composite Simpson on n panels (n forced even); plenty for the smooth
// integrands the tests feed it.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// Deterministic uniform draws; the mapping keeps every draw reproducible
// across platforms (53-bit mantissa scaling, no distribution objects).
struct TestRng {
    std::mt19937_64 eng;
    explicit TestRng(std::uint64_t seed) : eng(seed) {}
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * double(eng() >> 11) * 0x1.0p-53;
    }
    int pick(int n) { return int(eng() % std::uint64_t(n)); }
};

} // namespace oracle
