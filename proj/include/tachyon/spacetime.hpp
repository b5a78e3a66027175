#pragma once

#include <map>
#include <string>
#include <variant>

#include "tachyon/linfield.hpp"
#include "tachyon/mat.hpp"

namespace tgr::spacetime {

// Homogeneous isotropic universe: ds^2 = dt^2 - A(t)[B(r)dr^2 + r^2 dOmega^2]
// with A = a(t)^2 and B = 1/(1 - eps r^2/R^2).
struct RobertsonWalker {
    enum class ScaleModel { power_law, exponential };
    ScaleModel scale_model = ScaleModel::power_law;
    double p = 0.5;                // a(t) = a0 t^p
    double H = 1.0;                // a(t) = a0 e^{Ht}
    double a0 = 1.0;
    int curvature = 0;             // eps in {-1, 0, +1}
    double curvature_radius = 1.0; // R

    double scale_a(double t) const;
    double scale_a_dot(double t) const;
    double A(double t) const;      // a(t)^2
    double A_dot(double t) const;
    double B(double r) const;
    double B_prime(double r) const;
};

struct Schwarzschild {
    double r_s = 1.0; // 2GM
};

// Static cylindrical vacuum family: ds^2 = A dt^2 - B dr^2 - r^2 dtheta^2 - C dz^2
// with A = a r^alpha, B = b r^beta, C = c r^gamma_exp and the vacuum exponents
// beta = alpha^2/(alpha+2), gamma_exp = -2 alpha/(alpha+2).
struct CylindricalPowerLaw {
    double a = 1.0, b = 1.0, c = 1.0;
    double alpha = 0.0;

    double beta() const { return alpha * alpha / (alpha + 2.0); }
    double gamma_exp() const { return -2.0 * alpha / (alpha + 2.0); }
};

// Same family with the regularized radius s = sqrt(r^2 + eps^2) replacing r
// inside A, B, C (the azimuthal -r^2 block keeps the bare r), turning the
// singular axis into an extended source of finite total strength.
struct SmoothedCylinder {
    double a = 1.0, b = 1.0, c = 1.0;
    double alpha = 0.0;
    double eps_smooth = 1e-3;

    double beta() const { return alpha * alpha / (alpha + 2.0); }
    double gamma_exp() const { return -2.0 * alpha / (alpha + 2.0); }
    double s(double r) const;
};

// Weak static field of a circulating flow, built from a solved FieldProfile.
// n = 3 (spherical chart):  ds^2 = (1+At)dt^2 + (-1+Br)dr^2
//                                  + (-1+Ct) r^2 [dtheta^2 + sin^2 dphi^2],
//   At = 2 V0 + 3f/2,  Br = 2 V0 - f/2 - 2g,  Ct = 2 V0 - f/2 + g.
// n = 2 (cylindrical chart): ds^2 = (1+At)dt^2 + (-1+Br)dr^2
//                                  + (-1+Ct) r^2 dtheta^2 + (-1+Dz)dz^2,
//   At = 2V0 + 2V3 + f,  Br = 2V0 - 2V3 - g,
//   Ct = 2V0 - 2V3 + g,  Dz = 2V0 + 2V3 - f.
struct LinearizedStatic {
    linfield::ProfilePtr profile;
    int symmetry_n = 3; // 2 or 3

    struct Fields {
        double At, Br, Ct, Dz;     // metric perturbation combinations
        double dAt, dBr, dCt, dDz; // radial derivatives
    };
    Fields fields(double r) const;
};

using MetricSpec = std::variant<RobertsonWalker, Schwarzschild,
                                CylindricalPowerLaw, SmoothedCylinder,
                                LinearizedStatic>;

enum class Chart { spherical, cylindrical };
Chart chart_of(const MetricSpec& spec);
const char* family_name(const MetricSpec& spec);
// coordinate names for the chart: (t, r, theta, phi) or (t, r, theta, z)
const char* coord_name(Chart chart, int index);

// Coordinates are packed as x = (t, r, theta, w) where theta is the polar
// angle (spherical) or the azimuth (cylindrical) and w is phi or z.
struct SpacetimePoint {
    Chart chart = Chart::spherical;
    Vec4 x{0.0, 1.0, 1.5707963267948966, 0.0};

    double t() const { return x[0]; }
    double r() const { return x[1]; }
    double theta() const { return x[2]; }
    double w() const { return x[3]; }
};

SpacetimePoint make_point(const MetricSpec& spec, double t, double r,
                          double theta, double w);

// Throws validation_error naming the offending coordinate when the point
// leaves the chart's validity domain (r <= 0, polar angle at the axis,
// horizon r <= r_s, curvature pole r >= R for eps=+1, t <= 0 for power-law
// scale factors, field outside the linear regime).
void validate_point(const MetricSpec& spec, const Vec4& x);

Mat4 metric_components(const MetricSpec& spec, const SpacetimePoint& p);
Mat4 metric_components(const MetricSpec& spec, const Vec4& x);
Mat4 inverse_metric(const MetricSpec& spec, const Vec4& x);

// Analytic Christoffel symbols Gamma^l_{mn}; symmetric in the lower pair.
Connection christoffel(const MetricSpec& spec, const SpacetimePoint& p);
Connection christoffel(const MetricSpec& spec, const Vec4& x);

// The five truncated first-order symbol families of the weak-field metric
// (t tr, r rr, theta theta-r, r theta-theta, z zr and their spherical
// analogues) kept for comparison against the exact symbols; agreement is
// O(field^2).  Only valid for LinearizedStatic specs.
Connection christoffel_first_order(const LinearizedStatic& spec, const Vec4& x);

// Centered finite-difference symbols built from metric_components alone:
// h = max(1e-6, 1e-6 |coord|) per coordinate.
Connection christoffel_numeric(const MetricSpec& spec, const Vec4& x);

// Einstein tensor G_{mn} in the convention where G_{mn} + 8 pi G T_{mn} = 0
// for positive energy density (the sign produced by the static cylindrical
// closed forms below).  Analytic for the two cylindrical families:
//   power law: the general A,B,C expressions, identically zero at the vacuum
//              exponents;
//   smoothed:  G00 = -(A/2B) alpha(alpha+4)/(alpha+2) eps^2/s^4,
//              G11 = -(1/2) alpha^2/(alpha+2) eps^2/s^4,
//              G33 = (C/A) G00,  G22 = (r^2/B) G11.
// Other families fall back to the finite-difference evaluation and set
// *is_numeric = true.
Mat4 einstein_tensor(const MetricSpec& spec, const SpacetimePoint& p,
                     bool* is_numeric = nullptr);
Mat4 einstein_tensor(const MetricSpec& spec, const Vec4& x,
                     bool* is_numeric = nullptr);
Mat4 einstein_numeric(const MetricSpec& spec, const Vec4& x);

// Transverse source integrals of the smoothed cylinder, I00 = int_0^inf r dr
// G00 and I33 likewise, by adaptive quadrature on [0, 1e3 max(1, eps)] with
// the analytic power-law tail appended; exact closed forms and their small
// (alpha, eps) limits -(a/2b) alpha, -(c/2b) alpha for cross-checking.
struct SourceIntegrals {
    double I00 = 0.0, I33 = 0.0;           // quadrature values
    double I00_exact = 0.0, I33_exact = 0.0;
    double I00_limit = 0.0, I33_limit = 0.0;
    bool converged = true;
};
SourceIntegrals smoothed_source_integrals(const SmoothedCylinder& spec);

// Key-value (de)serialization; field names match the struct members.
std::string format_metric(const MetricSpec& spec);
MetricSpec parse_metric(const std::map<std::string, std::string>& kv);

} // namespace tgr::spacetime
