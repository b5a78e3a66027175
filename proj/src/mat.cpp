#include "tachyon/mat.hpp"

#include <cmath>

#include "tachyon/errors.hpp"

namespace tgr {

static double det3(double a, double b, double c, double d, double e, double f,
                   double g, double h, double i) {
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

double det4(const Mat4& m) {
    double det = 0.0;
    for (int col = 0; col < 4; ++col) {
        double sub[9];
        int k = 0;
        for (int i = 1; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (j != col) sub[k++] = m[i][j];
        const double minor = det3(sub[0], sub[1], sub[2], sub[3], sub[4],
                                  sub[5], sub[6], sub[7], sub[8]);
        det += ((col % 2 == 0) ? 1.0 : -1.0) * m[0][col] * minor;
    }
    return det;
}

Mat4 inverse4(const Mat4& m) {
    // Gauss-Jordan with partial pivoting on an augmented [m | I] block.
    double a[4][8];
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) a[i][j] = m[i][j];
        for (int j = 4; j < 8; ++j) a[i][j] = (j - 4 == i) ? 1.0 : 0.0;
    }
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int i = col + 1; i < 4; ++i)
            if (std::abs(a[i][col]) > std::abs(a[pivot][col])) pivot = i;
        if (a[pivot][col] == 0.0)
            throw numerical_error("inverse4: singular matrix");
        if (pivot != col)
            for (int j = 0; j < 8; ++j) std::swap(a[pivot][j], a[col][j]);
        const double inv = 1.0 / a[col][col];
        for (int j = 0; j < 8; ++j) a[col][j] *= inv;
        for (int i = 0; i < 4; ++i) {
            if (i == col) continue;
            const double factor = a[i][col];
            if (factor == 0.0) continue;
            for (int j = 0; j < 8; ++j) a[i][j] -= factor * a[col][j];
        }
    }
    Mat4 out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i][j] = a[i][j + 4];
    return out;
}

} // namespace tgr
