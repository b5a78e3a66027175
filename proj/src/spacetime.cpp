#include "tachyon/spacetime.hpp"

#include <cmath>
#include <cstdio>
#include <set>

#include "tachyon/errors.hpp"
#include "tachyon/io.hpp"
#include "tachyon/quadrature.hpp"

namespace tgr::spacetime {

// ---------------------------------------------------------------- families

double RobertsonWalker::scale_a(double t) const {
    return scale_model == ScaleModel::power_law ? a0 * std::pow(t, p)
                                                : a0 * std::exp(H * t);
}

double RobertsonWalker::scale_a_dot(double t) const {
    return scale_model == ScaleModel::power_law
               ? a0 * p * std::pow(t, p - 1.0)
               : a0 * H * std::exp(H * t);
}

double RobertsonWalker::A(double t) const {
    const double a = scale_a(t);
    return a * a;
}

double RobertsonWalker::A_dot(double t) const {
    return 2.0 * scale_a(t) * scale_a_dot(t);
}

double RobertsonWalker::B(double r) const {
    return 1.0 / (1.0 - curvature * r * r / (curvature_radius * curvature_radius));
}

double RobertsonWalker::B_prime(double r) const {
    const double R2 = curvature_radius * curvature_radius;
    const double Br = B(r);
    return 2.0 * curvature * r / R2 * Br * Br;
}

double SmoothedCylinder::s(double r) const {
    return std::sqrt(r * r + eps_smooth * eps_smooth);
}

LinearizedStatic::Fields LinearizedStatic::fields(double r) const {
    // value/slope pairs keep the connection the exact derivative of the
    // evaluated metric, so geodesic invariants do not plateau at the
    // profile-interpolation error
    const auto& pr = *profile;
    const auto f = pr.f_pair(r), g = pr.g_pair(r), V0 = pr.V0_pair(r);
    Fields out{};
    if (symmetry_n == 3) {
        out.At = 2.0 * V0.value + 1.5 * f.value;
        out.Br = 2.0 * V0.value - 0.5 * f.value - 2.0 * g.value;
        out.Ct = 2.0 * V0.value - 0.5 * f.value + g.value;
        out.Dz = 0.0;
        out.dAt = 2.0 * V0.slope + 1.5 * f.slope;
        out.dBr = 2.0 * V0.slope - 0.5 * f.slope - 2.0 * g.slope;
        out.dCt = 2.0 * V0.slope - 0.5 * f.slope + g.slope;
        out.dDz = 0.0;
    } else {
        const auto V3 = pr.V3_pair(r);
        out.At = 2.0 * V0.value + 2.0 * V3.value + f.value;
        out.Br = 2.0 * V0.value - 2.0 * V3.value - g.value;
        out.Ct = 2.0 * V0.value - 2.0 * V3.value + g.value;
        out.Dz = 2.0 * V0.value + 2.0 * V3.value - f.value;
        out.dAt = 2.0 * V0.slope + 2.0 * V3.slope + f.slope;
        out.dBr = 2.0 * V0.slope - 2.0 * V3.slope - g.slope;
        out.dCt = 2.0 * V0.slope - 2.0 * V3.slope + g.slope;
        out.dDz = 2.0 * V0.slope + 2.0 * V3.slope - f.slope;
    }
    return out;
}

// ------------------------------------------------------------------ charts

Chart chart_of(const MetricSpec& spec) {
    return std::visit(
        [](const auto& m) -> Chart {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, RobertsonWalker> ||
                          std::is_same_v<T, Schwarzschild>)
                return Chart::spherical;
            else if constexpr (std::is_same_v<T, LinearizedStatic>)
                return m.symmetry_n == 3 ? Chart::spherical : Chart::cylindrical;
            else
                return Chart::cylindrical;
        },
        spec);
}

const char* family_name(const MetricSpec& spec) {
    return std::visit(
        [](const auto& m) -> const char* {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, RobertsonWalker>)
                return "robertson_walker";
            else if constexpr (std::is_same_v<T, Schwarzschild>)
                return "schwarzschild";
            else if constexpr (std::is_same_v<T, CylindricalPowerLaw>)
                return "cylindrical_power_law";
            else if constexpr (std::is_same_v<T, SmoothedCylinder>)
                return "smoothed_cylinder";
            else
                return "linearized_static";
        },
        spec);
}

const char* coord_name(Chart chart, int index) {
    static const char* sph[4] = {"t", "r", "theta", "phi"};
    static const char* cyl[4] = {"t", "r", "theta", "z"};
    return chart == Chart::spherical ? sph[index] : cyl[index];
}

SpacetimePoint make_point(const MetricSpec& spec, double t, double r,
                          double theta, double w) {
    SpacetimePoint p;
    p.chart = chart_of(spec);
    p.x = {t, r, theta, w};
    validate_point(spec, p.x);
    return p;
}

// -------------------------------------------------------------- validation

static void validate_spec(const MetricSpec& spec) {
    std::visit(
        [](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, RobertsonWalker>) {
                if (m.curvature < -1 || m.curvature > 1)
                    throw validation_error("curvature must be -1, 0 or +1");
                if (m.curvature != 0 && m.curvature_radius <= 0.0)
                    throw validation_error("curvature_radius must be positive");
                if (m.a0 <= 0.0) throw validation_error("a0 must be positive");
            } else if constexpr (std::is_same_v<T, Schwarzschild>) {
                if (m.r_s <= 0.0) throw validation_error("r_s must be positive");
            } else if constexpr (std::is_same_v<T, CylindricalPowerLaw>) {
                if (m.a <= 0.0 || m.b <= 0.0 || m.c <= 0.0)
                    throw validation_error("coefficients a, b, c must be positive");
                if (m.alpha == -2.0)
                    throw validation_error("alpha = -2 is excluded (exponent pole)");
            } else if constexpr (std::is_same_v<T, SmoothedCylinder>) {
                if (m.a <= 0.0 || m.b <= 0.0 || m.c <= 0.0)
                    throw validation_error("coefficients a, b, c must be positive");
                if (m.alpha == -2.0)
                    throw validation_error("alpha = -2 is excluded (exponent pole)");
                if (m.eps_smooth <= 0.0)
                    throw validation_error("eps_smooth must be positive");
            } else {
                if (!m.profile) throw validation_error("missing field profile");
                if (m.symmetry_n != 2 && m.symmetry_n != 3)
                    throw validation_error("symmetry must be 2 or 3");
                if (m.profile->n != m.symmetry_n)
                    throw validation_error("profile dimension does not match symmetry");
            }
        },
        spec);
}

void validate_point(const MetricSpec& spec, const Vec4& x) {
    validate_spec(spec);
    for (int i = 0; i < 4; ++i)
        if (!std::isfinite(x[i]))
            throw validation_error(std::string("non-finite coordinate ") +
                                   coord_name(chart_of(spec), i));
    const double r = x[1];
    const bool allow_axis = std::holds_alternative<SmoothedCylinder>(spec);
    if (r < 0.0 || (r == 0.0 && !allow_axis))
        throw validation_error("coordinate r must be positive, got " + io::g17(r));
    if (chart_of(spec) == Chart::spherical) {
        const double th = x[2];
        if (!(th > 0.0 && th < 3.141592653589793))
            throw validation_error("polar angle theta must lie in (0, pi), got " +
                                   io::g17(th));
    }
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, RobertsonWalker>) {
                if (m.scale_model == RobertsonWalker::ScaleModel::power_law &&
                    x[0] <= 0.0)
                    throw validation_error(
                        "power-law scale factor needs t > 0, got t = " +
                        io::g17(x[0]));
                if (m.curvature == +1 && r >= m.curvature_radius)
                    throw validation_error(
                        "r >= curvature_radius hits the B(r) pole of the closed "
                        "universe, got r = " +
                        io::g17(r));
            } else if constexpr (std::is_same_v<T, Schwarzschild>) {
                if (r <= m.r_s)
                    throw validation_error(
                        "r <= r_s lies on or inside the horizon, got r = " +
                        io::g17(r));
            } else if constexpr (std::is_same_v<T, LinearizedStatic>) {
                const auto f = m.fields(r);
                const double worst =
                    std::max(std::max(std::abs(f.At), std::abs(f.Br)),
                             std::max(std::abs(f.Ct), std::abs(f.Dz)));
                if (!(worst < 0.5))
                    throw validation_error(
                        "field perturbation exceeds the linear regime at r = " +
                        io::g17(r));
            }
        },
        spec);
}

// ------------------------------------------------------------------ metric

Mat4 metric_components(const MetricSpec& spec, const Vec4& x) {
    validate_point(spec, x);
    const double r = x[1];
    const double th = x[2];
    return std::visit(
        [&](const auto& m) -> Mat4 {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, RobertsonWalker>) {
                const double A = m.A(x[0]);
                const double s2 = std::sin(th) * std::sin(th);
                return diag(1.0, -A * m.B(r), -A * r * r, -A * r * r * s2);
            } else if constexpr (std::is_same_v<T, Schwarzschild>) {
                const double A = 1.0 - m.r_s / r;
                const double s2 = std::sin(th) * std::sin(th);
                return diag(A, -1.0 / A, -r * r, -r * r * s2);
            } else if constexpr (std::is_same_v<T, CylindricalPowerLaw>) {
                return diag(m.a * std::pow(r, m.alpha),
                            -m.b * std::pow(r, m.beta()), -r * r,
                            -m.c * std::pow(r, m.gamma_exp()));
            } else if constexpr (std::is_same_v<T, SmoothedCylinder>) {
                const double s = m.s(r);
                return diag(m.a * std::pow(s, m.alpha),
                            -m.b * std::pow(s, m.beta()), -r * r,
                            -m.c * std::pow(s, m.gamma_exp()));
            } else {
                const auto f = m.fields(r);
                if (m.symmetry_n == 3) {
                    const double s2 = std::sin(th) * std::sin(th);
                    return diag(1.0 + f.At, -1.0 + f.Br, (-1.0 + f.Ct) * r * r,
                                (-1.0 + f.Ct) * r * r * s2);
                }
                return diag(1.0 + f.At, -1.0 + f.Br, (-1.0 + f.Ct) * r * r,
                            -1.0 + f.Dz);
            }
        },
        spec);
}

Mat4 metric_components(const MetricSpec& spec, const SpacetimePoint& p) {
    return metric_components(spec, p.x);
}

Mat4 inverse_metric(const MetricSpec& spec, const Vec4& x) {
    const Mat4 g = metric_components(spec, x);
    Mat4 inv{};
    for (int i = 0; i < 4; ++i) {
        if (g[i][i] == 0.0)
            throw validation_error(std::string("metric degenerate along ") +
                                   coord_name(chart_of(spec), i));
        inv[i][i] = 1.0 / g[i][i];
    }
    return inv;
}

// ------------------------------------------------------------- christoffel

// Symbols of a static diagonal metric g = diag(g00(r), g11(r), g2(r), g3(r))
// with an optional common sin^2(theta) factor on the last slot (spherical).
static Connection static_diag_connection(Chart chart, double r, double th,
                                         double g00, double d00, double g11,
                                         double d11, double g2, double d2,
                                         double g3, double d3) {
    Connection G{};
    if (r == 0.0) throw validation_error("Christoffel symbols undefined on the axis r = 0");
    G[0][0][1] = G[0][1][0] = d00 / (2.0 * g00);
    G[1][0][0] = -d00 / (2.0 * g11);
    G[1][1][1] = d11 / (2.0 * g11);
    G[1][2][2] = -d2 / (2.0 * g11);
    G[2][1][2] = G[2][2][1] = d2 / (2.0 * g2);
    if (chart == Chart::spherical) {
        const double st = std::sin(th), ct = std::cos(th);
        G[1][3][3] = -d3 * st * st / (2.0 * g11);
        G[3][1][3] = G[3][3][1] = d3 / (2.0 * g3);
        G[2][3][3] = -st * ct;
        G[3][2][3] = G[3][3][2] = ct / st;
    } else {
        G[1][3][3] = -d3 / (2.0 * g11);
        G[3][1][3] = G[3][3][1] = d3 / (2.0 * g3);
    }
    return G;
}

Connection christoffel(const MetricSpec& spec, const Vec4& x) {
    validate_point(spec, x);
    const double r = x[1];
    const double th = x[2];
    return std::visit(
        [&](const auto& m) -> Connection {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, RobertsonWalker>) {
                const double A = m.A(x[0]), Ad = m.A_dot(x[0]);
                const double B = m.B(r), Bp = m.B_prime(r);
                const double st = std::sin(th), ct = std::cos(th);
                Connection G{};
                G[0][1][1] = Ad * B / 2.0;
                G[0][2][2] = Ad * r * r / 2.0;
                G[0][3][3] = Ad * r * r * st * st / 2.0;
                G[1][0][1] = G[1][1][0] = Ad / (2.0 * A);
                G[2][0][2] = G[2][2][0] = Ad / (2.0 * A);
                G[3][0][3] = G[3][3][0] = Ad / (2.0 * A);
                G[1][1][1] = Bp / (2.0 * B);
                G[1][2][2] = -r / B;
                G[1][3][3] = -r * st * st / B;
                G[2][1][2] = G[2][2][1] = 1.0 / r;
                G[3][1][3] = G[3][3][1] = 1.0 / r;
                G[2][3][3] = -st * ct;
                G[3][2][3] = G[3][3][2] = ct / st;
                return G;
            } else if constexpr (std::is_same_v<T, Schwarzschild>) {
                const double A = 1.0 - m.r_s / r;
                const double Ap = m.r_s / (r * r);
                return static_diag_connection(Chart::spherical, r, th, A, Ap,
                                              -1.0 / A, Ap / (A * A), -r * r,
                                              -2.0 * r, -r * r, -2.0 * r);
            } else if constexpr (std::is_same_v<T, CylindricalPowerLaw>) {
                const double A = m.a * std::pow(r, m.alpha);
                const double B = m.b * std::pow(r, m.beta());
                const double C = m.c * std::pow(r, m.gamma_exp());
                return static_diag_connection(
                    Chart::cylindrical, r, th, A, m.alpha * A / r, -B,
                    -m.beta() * B / r, -r * r, -2.0 * r, -C,
                    -m.gamma_exp() * C / r);
            } else if constexpr (std::is_same_v<T, SmoothedCylinder>) {
                const double s = m.s(r);
                const double A = m.a * std::pow(s, m.alpha);
                const double B = m.b * std::pow(s, m.beta());
                const double C = m.c * std::pow(s, m.gamma_exp());
                // dF/dr = exponent * F * r / s^2 for F = coeff * s^exponent
                const double rs2 = r / (s * s);
                return static_diag_connection(
                    Chart::cylindrical, r, th, A, m.alpha * A * rs2, -B,
                    -m.beta() * B * rs2, -r * r, -2.0 * r, -C,
                    -m.gamma_exp() * C * rs2);
            } else {
                const auto f = m.fields(r);
                const double g2 = (-1.0 + f.Ct) * r * r;
                const double d2 = f.dCt * r * r + (-1.0 + f.Ct) * 2.0 * r;
                if (m.symmetry_n == 3)
                    return static_diag_connection(Chart::spherical, r, th,
                                                  1.0 + f.At, f.dAt,
                                                  -1.0 + f.Br, f.dBr, g2, d2,
                                                  g2, d2);
                return static_diag_connection(Chart::cylindrical, r, th,
                                              1.0 + f.At, f.dAt, -1.0 + f.Br,
                                              f.dBr, g2, d2, -1.0 + f.Dz,
                                              f.dDz);
            }
        },
        spec);
}

Connection christoffel(const MetricSpec& spec, const SpacetimePoint& p) {
    return christoffel(spec, p.x);
}

Connection christoffel_first_order(const LinearizedStatic& spec, const Vec4& x) {
    validate_point(MetricSpec{spec}, x);
    const double r = x[1];
    if (r == 0.0) throw validation_error("Christoffel symbols undefined on the axis r = 0");
    const auto f = spec.fields(r);
    Connection G{};
    G[0][0][1] = G[0][1][0] = f.dAt / 2.0;
    G[1][0][0] = f.dAt / 2.0;
    G[1][1][1] = -f.dBr / 2.0;
    G[2][1][2] = G[2][2][1] = 1.0 / r - f.dCt / 2.0;
    const double r_thth = -r * (1.0 + f.Br - f.Ct) + r * r * f.dCt / 2.0;
    G[1][2][2] = r_thth;
    if (spec.symmetry_n == 3) {
        const double st = std::sin(x[2]), ct = std::cos(x[2]);
        G[3][1][3] = G[3][3][1] = 1.0 / r - f.dCt / 2.0;
        G[1][3][3] = r_thth * st * st;
        G[2][3][3] = -st * ct;
        G[3][2][3] = G[3][3][2] = ct / st;
    } else {
        G[3][1][3] = G[3][3][1] = -f.dDz / 2.0;
        G[1][3][3] = f.dDz / 2.0;
    }
    return G;
}

Connection christoffel_numeric(const MetricSpec& spec, const Vec4& x) {
    const Mat4 ginv = inverse_metric(spec, x);
    // dg[mu][a][b] = d g_ab / d x^mu, centered differences
    std::array<Mat4, 4> dg{};
    for (int mu = 0; mu < 4; ++mu) {
        const double h = std::max(1e-6, 1e-6 * std::abs(x[mu]));
        Vec4 xp = x, xm = x;
        xp[mu] += h;
        xm[mu] -= h;
        const Mat4 gp = metric_components(spec, xp);
        const Mat4 gm = metric_components(spec, xm);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                dg[mu][a][b] = (gp[a][b] - gm[a][b]) / (2.0 * h);
    }
    Connection G{};
    for (int l = 0; l < 4; ++l)
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) {
                double sum = 0.0;
                for (int rho = 0; rho < 4; ++rho)
                    sum += ginv[l][rho] * (dg[mu][rho][nu] + dg[nu][rho][mu] -
                                           dg[rho][mu][nu]);
                G[l][mu][nu] = 0.5 * sum;
            }
    return G;
}

// ---------------------------------------------------------------- einstein

// General static cylindrical Einstein components for g = diag(A, -B, -r^2, -C)
// with A, B, C functions of r; primes are radial derivatives.
static Mat4 cyl_einstein(double r, double A, double A1, double A2, double B,
                         double B1, double C, double C1, double C2) {
    const double E0 = C2 / C - C1 * C1 / (2.0 * C * C) -
                      B1 * C1 / (2.0 * B * C) + C1 / (r * C) - B1 / (r * B);
    const double G00 = A / (2.0 * B) * E0;
    const double G11 = -C1 / (2.0 * r * C) - A1 / (2.0 * r * A) -
                       A1 * C1 / (4.0 * A * C);
    const double E2 = -A2 / A + A1 * A1 / (2.0 * A * A) +
                      A1 * B1 / (2.0 * A * B) - C2 / C +
                      C1 * C1 / (2.0 * C * C) - A1 * C1 / (2.0 * A * C) +
                      B1 * C1 / (2.0 * B * C);
    const double G22 = r * r / (2.0 * B) * E2;
    const double E3 = -A2 / A + A1 * A1 / (2.0 * A * A) +
                      A1 * B1 / (2.0 * A * B) - A1 / (r * A) + B1 / (r * B);
    const double G33 = C / (2.0 * B) * E3;
    return diag(G00, G11, G22, G33);
}

Mat4 einstein_tensor(const MetricSpec& spec, const Vec4& x, bool* is_numeric) {
    validate_point(spec, x);
    if (is_numeric) *is_numeric = false;
    const double r = x[1];
    if (const auto* m = std::get_if<CylindricalPowerLaw>(&spec)) {
        if (r == 0.0)
            throw validation_error("power-law family is singular at r = 0");
        const double A = m->a * std::pow(r, m->alpha);
        const double B = m->b * std::pow(r, m->beta());
        const double C = m->c * std::pow(r, m->gamma_exp());
        const double al = m->alpha, be = m->beta(), ga = m->gamma_exp();
        return cyl_einstein(r, A, al * A / r, al * (al - 1.0) * A / (r * r), B,
                            be * B / r, C, ga * C / r,
                            ga * (ga - 1.0) * C / (r * r));
    }
    if (const auto* m = std::get_if<SmoothedCylinder>(&spec)) {
        const double s = m->s(r);
        const double eps2 = m->eps_smooth * m->eps_smooth;
        const double A = m->a * std::pow(s, m->alpha);
        const double B = m->b * std::pow(s, m->beta());
        const double C = m->c * std::pow(s, m->gamma_exp());
        const double Ka = m->alpha * (m->alpha + 4.0) / (m->alpha + 2.0);
        const double es4 = eps2 / (s * s * s * s);
        const double G00 = -(A / (2.0 * B)) * Ka * es4;
        const double G11 = -0.5 * m->alpha * m->alpha / (m->alpha + 2.0) * es4;
        const double G22 = r * r / B * G11;
        const double G33 = (C / A) * G00;
        return diag(G00, G11, G22, G33);
    }
    if (is_numeric) *is_numeric = true;
    return einstein_numeric(spec, x);
}

Mat4 einstein_tensor(const MetricSpec& spec, const SpacetimePoint& p,
                     bool* is_numeric) {
    return einstein_tensor(spec, p.x, is_numeric);
}

Mat4 einstein_numeric(const MetricSpec& spec, const Vec4& x) {
    // Ricci from the analytic symbols, radial/temporal derivatives by
    // centered differences; sign flipped to the G + 8 pi G T = 0 convention.
    const Connection Gm = christoffel(spec, x);
    std::array<Connection, 4> dG{};
    for (int mu = 0; mu < 4; ++mu) {
        const double h = std::max(1e-6, 1e-6 * std::abs(x[mu]));
        Vec4 xp = x, xm = x;
        xp[mu] += h;
        xm[mu] -= h;
        const Connection Gp = christoffel(spec, xp);
        const Connection Gn = christoffel(spec, xm);
        for (int l = 0; l < 4; ++l)
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    dG[mu][l][a][b] = (Gp[l][a][b] - Gn[l][a][b]) / (2.0 * h);
    }
    Mat4 ricci{};
    for (int nu = 0; nu < 4; ++nu)
        for (int si = 0; si < 4; ++si) {
            double v = 0.0;
            for (int mu = 0; mu < 4; ++mu)
                v += dG[mu][mu][nu][si] - dG[nu][mu][mu][si];
            for (int mu = 0; mu < 4; ++mu)
                for (int la = 0; la < 4; ++la)
                    v += Gm[mu][mu][la] * Gm[la][nu][si] -
                         Gm[mu][nu][la] * Gm[la][mu][si];
            ricci[nu][si] = v;
        }
    const Mat4 g = metric_components(spec, x);
    const Mat4 ginv = inverse_metric(spec, x);
    double scalar = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) scalar += ginv[a][b] * ricci[a][b];
    Mat4 out{};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            out[a][b] = -(ricci[a][b] - 0.5 * g[a][b] * scalar);
    return out;
}

// ---------------------------------------------------- smoothed source sums

SourceIntegrals smoothed_source_integrals(const SmoothedCylinder& spec) {
    validate_spec(MetricSpec{spec});
    SourceIntegrals out;
    const double al = spec.alpha, be = spec.beta(), ga = spec.gamma_exp();
    const double eps = spec.eps_smooth;
    const double Ka = al * (al + 4.0) / (al + 2.0);
    if (al == 0.0) return out; // flat space: everything vanishes exactly

    // closed forms: int_0^inf r s^{q-4} dr = eps^{q-2}/(2-q) for q < 2
    const double q00 = al - be, q33 = ga - be;
    out.I00_exact = -(spec.a / (2.0 * spec.b)) * Ka * std::pow(eps, q00) / (2.0 - q00);
    out.I33_exact = -(spec.c / (2.0 * spec.b)) * Ka * std::pow(eps, q33) / (2.0 - q33);
    out.I00_limit = -(spec.a / (2.0 * spec.b)) * al;
    out.I33_limit = -(spec.c / (2.0 * spec.b)) * al;

    const MetricSpec mspec{spec};
    const auto g_at = [&](double r, int comp) {
        const Vec4 x{0.0, r, 1.0, 0.0};
        const Mat4 G = einstein_tensor(mspec, x);
        return G[comp][comp];
    };
    const double r_cap = 1e3 * std::max(1.0, eps);
    // peak sits at r ~ eps: integrate decade segments so no structure is
    // skipped by a single coarse panel
    std::vector<double> cuts{0.0, eps};
    while (cuts.back() < r_cap) cuts.push_back(std::min(cuts.back() * 10.0, r_cap));
    bool ok = true;
    double i00 = 0.0, i33 = 0.0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        auto q0 = integrate_adaptive([&](double r) { return r * g_at(r, 0); },
                                     cuts[i], cuts[i + 1], 1e-10, 1e-12);
        auto q3 = integrate_adaptive([&](double r) { return r * g_at(r, 3); },
                                     cuts[i], cuts[i + 1], 1e-10, 1e-12);
        ok = ok && q0.converged && q3.converged;
        i00 += q0.value;
        i33 += q3.value;
    }
    // analytic power-law tails beyond r_cap
    const double s_cap = spec.s(r_cap);
    i00 += -(spec.a / (2.0 * spec.b)) * Ka * eps * eps *
           std::pow(s_cap, q00 - 2.0) / (2.0 - q00);
    i33 += -(spec.c / (2.0 * spec.b)) * Ka * eps * eps *
           std::pow(s_cap, q33 - 2.0) / (2.0 - q33);
    out.I00 = i00;
    out.I33 = i33;
    out.converged = ok;
    return out;
}

// ----------------------------------------------------------- serialization

static std::string fmt_kv(const char* key, const std::string& value) {
    return std::string(key) + " = " + value + "\n";
}

std::string format_metric(const MetricSpec& spec) {
    std::string out = fmt_kv("family", family_name(spec));
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, RobertsonWalker>) {
                const bool power =
                    m.scale_model == RobertsonWalker::ScaleModel::power_law;
                out += fmt_kv("scale_model", power ? "power_law" : "exponential");
                if (power)
                    out += fmt_kv("p", io::g17(m.p));
                else
                    out += fmt_kv("H", io::g17(m.H));
                out += fmt_kv("a0", io::g17(m.a0));
                out += fmt_kv("curvature", std::to_string(m.curvature));
                if (m.curvature != 0)
                    out += fmt_kv("curvature_radius", io::g17(m.curvature_radius));
            } else if constexpr (std::is_same_v<T, Schwarzschild>) {
                out += fmt_kv("r_s", io::g17(m.r_s));
            } else if constexpr (std::is_same_v<T, CylindricalPowerLaw> ||
                                 std::is_same_v<T, SmoothedCylinder>) {
                out += fmt_kv("a", io::g17(m.a));
                out += fmt_kv("b", io::g17(m.b));
                out += fmt_kv("c", io::g17(m.c));
                out += fmt_kv("alpha", io::g17(m.alpha));
                if constexpr (std::is_same_v<T, SmoothedCylinder>)
                    out += fmt_kv("eps_smooth", io::g17(m.eps_smooth));
            } else {
                out += fmt_kv("symmetry", std::to_string(m.symmetry_n));
                const auto& env = m.profile->envelope;
                out += fmt_kv("profile", env.shape_name());
                out += fmt_kv("b0", io::g17(env.b0));
                if (env.shape == linfield::SourceEnvelope::Shape::gaussian)
                    out += fmt_kv("sigma", io::g17(env.sigma));
                else
                    out += fmt_kv("R", io::g17(env.R));
                if (env.shape == linfield::SourceEnvelope::Shape::poly_cutoff)
                    out += fmt_kv("k", std::to_string(env.k));
                out += fmt_kv("grav", io::g17(m.profile->G));
            }
        },
        spec);
    return out;
}

static double parse_double(const std::map<std::string, std::string>& kv,
                           const std::string& key, double fallback,
                           bool required = false) {
    auto it = kv.find(key);
    if (it == kv.end()) {
        if (required) throw validation_error("missing metric key: " + key);
        return fallback;
    }
    try {
        size_t used = 0;
        const double v = std::stod(it->second, &used);
        while (used < it->second.size() && std::isspace(static_cast<unsigned char>(it->second[used]))) ++used;
        if (used != it->second.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw validation_error("bad numeric value for key '" + key +
                               "': " + it->second);
    }
}

static void reject_unknown(const std::map<std::string, std::string>& kv,
                           const std::set<std::string>& allowed) {
    for (const auto& [k, v] : kv)
        if (!allowed.count(k))
            throw validation_error("unknown metric key: " + k);
}

MetricSpec parse_metric(const std::map<std::string, std::string>& kv) {
    auto fam_it = kv.find("family");
    if (fam_it == kv.end()) throw validation_error("missing metric key: family");
    const std::string& fam = fam_it->second;

    MetricSpec spec;
    if (fam == "robertson_walker") {
        reject_unknown(kv, {"family", "scale_model", "p", "H", "a0",
                            "curvature", "curvature_radius"});
        RobertsonWalker m;
        auto sm = kv.find("scale_model");
        if (sm != kv.end()) {
            if (sm->second == "power_law")
                m.scale_model = RobertsonWalker::ScaleModel::power_law;
            else if (sm->second == "exponential")
                m.scale_model = RobertsonWalker::ScaleModel::exponential;
            else
                throw validation_error("unknown scale_model: " + sm->second);
        }
        m.p = parse_double(kv, "p", m.p);
        m.H = parse_double(kv, "H", m.H);
        m.a0 = parse_double(kv, "a0", m.a0);
        const double curv = parse_double(kv, "curvature", 0.0);
        if (curv != -1.0 && curv != 0.0 && curv != 1.0)
            throw validation_error("curvature must be -1, 0 or +1");
        m.curvature = static_cast<int>(curv);
        m.curvature_radius = parse_double(kv, "curvature_radius", m.curvature_radius);
        spec = m;
    } else if (fam == "schwarzschild") {
        reject_unknown(kv, {"family", "r_s"});
        Schwarzschild m;
        m.r_s = parse_double(kv, "r_s", m.r_s, true);
        spec = m;
    } else if (fam == "cylindrical_power_law" || fam == "smoothed_cylinder") {
        if (fam == "cylindrical_power_law") {
            reject_unknown(kv, {"family", "a", "b", "c", "alpha"});
            CylindricalPowerLaw m;
            m.a = parse_double(kv, "a", m.a);
            m.b = parse_double(kv, "b", m.b);
            m.c = parse_double(kv, "c", m.c);
            m.alpha = parse_double(kv, "alpha", m.alpha, true);
            spec = m;
        } else {
            reject_unknown(kv, {"family", "a", "b", "c", "alpha", "eps_smooth"});
            SmoothedCylinder m;
            m.a = parse_double(kv, "a", m.a);
            m.b = parse_double(kv, "b", m.b);
            m.c = parse_double(kv, "c", m.c);
            m.alpha = parse_double(kv, "alpha", m.alpha, true);
            m.eps_smooth = parse_double(kv, "eps_smooth", m.eps_smooth, true);
            spec = m;
        }
    } else if (fam == "linearized_static") {
        reject_unknown(kv, {"family", "symmetry", "profile", "b0", "R", "sigma",
                            "k", "flow_speed", "grav"});
        LinearizedStatic m;
        const double n = parse_double(kv, "symmetry", 3.0);
        if (n != 2.0 && n != 3.0)
            throw validation_error("symmetry must be 2 or 3");
        m.symmetry_n = static_cast<int>(n);
        linfield::SourceEnvelope env;
        env.n = m.symmetry_n;
        auto pf = kv.find("profile");
        const std::string shape = pf == kv.end() ? "top_hat" : pf->second;
        if (shape == "top_hat")
            env.shape = linfield::SourceEnvelope::Shape::top_hat;
        else if (shape == "gaussian")
            env.shape = linfield::SourceEnvelope::Shape::gaussian;
        else if (shape == "poly_cutoff")
            env.shape = linfield::SourceEnvelope::Shape::poly_cutoff;
        else
            throw validation_error("unknown profile shape: " + shape);
        env.b0 = parse_double(kv, "b0", 1e-6);
        env.R = parse_double(kv, "R", env.R);
        env.sigma = parse_double(kv, "sigma", env.sigma);
        env.k = static_cast<int>(parse_double(kv, "k", env.k));
        const double flow = parse_double(kv, "flow_speed", 1.0);
        const double grav = parse_double(kv, "grav", 1.0);
        auto profile = std::make_shared<linfield::FieldProfile>(
            linfield::solve_fg(linfield::build_stress(env, flow), grav));
        m.profile = profile;
        spec = m;
    } else {
        throw validation_error("unknown metric family: " + fam);
    }
    validate_spec(spec);
    return spec;
}

} // namespace tgr::spacetime
