#include "doctest.h"

#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "tachyon/errors.hpp"
#include "tachyon/spacetime.hpp"

using namespace tgr;
using namespace tgr::spacetime;
using oracle::rel_diff;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct CatalogEntry {
    const char* label;
    MetricSpec spec;
    // sampling box for random points and the finite-difference step scale
    double t_lo, t_hi, r_lo, r_hi;
    double h_base;
    double fd_tol;
};

std::vector<CatalogEntry> fd_catalog() {
    RobertsonWalker rw_flat;
    rw_flat.p = 2.0 / 3.0;

    RobertsonWalker rw_closed;
    rw_closed.p = 0.5;
    rw_closed.curvature = +1;
    rw_closed.curvature_radius = 10.0;

    RobertsonWalker rw_open;
    rw_open.scale_model = RobertsonWalker::ScaleModel::exponential;
    rw_open.H = 0.3;
    rw_open.curvature = -1;
    rw_open.curvature_radius = 5.0;

    CylindricalPowerLaw cyl;
    cyl.a = 1.1;
    cyl.b = 0.9;
    cyl.c = 1.2;
    cyl.alpha = 1.0;

    SmoothedCylinder smooth;
    smooth.alpha = 0.8;
    smooth.eps_smooth = 0.05;

    std::vector<CatalogEntry> out;
    out.push_back({"rw-flat", rw_flat, 0.5, 3.0, 0.1, 2.0, 1e-3, 2e-9});
    out.push_back({"rw-closed", rw_closed, 0.5, 3.0, 0.3, 8.0, 1e-3, 2e-9});
    out.push_back({"rw-open", rw_open, -1.0, 1.0, 0.2, 4.0, 1e-3, 2e-9});
    out.push_back({"schwarzschild", Schwarzschild{1.0}, -1.0, 1.0, 1.5, 12.0, 1e-3, 2e-9});
    out.push_back({"cyl-power", cyl, -1.0, 1.0, 0.3, 5.0, 1e-3, 2e-9});
    out.push_back({"cyl-smoothed", smooth, -1.0, 1.0, 0.02, 3.0, 5e-5, 2e-8});
    out.push_back({"weak-spherical", fixtures::weak_spherical(), -1.0, 1.0, 0.2, 20.0, 1e-3, 1e-8});
    out.push_back({"weak-cylindrical", fixtures::weak_cylindrical(), -1.0, 1.0, 0.2, 20.0, 1e-3, 1e-8});
    return out;
}

Vec4 random_point(const CatalogEntry& e, oracle::TestRng& rng) {
    return Vec4{rng.uniform(e.t_lo, e.t_hi), rng.uniform(e.r_lo, e.r_hi),
                rng.uniform(0.5, 2.6), rng.uniform(0.0, 6.0)};
}

} // namespace

TEST_SUITE("spacetime") {

TEST_CASE("schwarzschild metric components at twice the horizon radius") {
    const MetricSpec spec = Schwarzschild{1.0};
    const Mat4 g = metric_components(spec, Vec4{0.0, 2.0, kPi / 2.0, 0.0});
    CHECK(g[0][0] == 0.5);
    CHECK(g[1][1] == -2.0);
    CHECK(g[2][2] == -4.0);
    CHECK(rel_diff(g[3][3], -4.0) <= 1e-15); // sin^2(pi/2) rounds through kPi
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) CHECK(g[i][j] == 0.0);
}

TEST_CASE("cylindrical power-law metric at unit radius is minkowski-like") {
    CylindricalPowerLaw cyl;
    cyl.alpha = 1.0; // r^alpha factors all equal 1 at r = 1
    const MetricSpec spec = cyl;
    const Mat4 g = metric_components(spec, Vec4{0.0, 1.0, 0.3, 0.0});
    CHECK(g[0][0] == 1.0);
    CHECK(g[1][1] == -1.0);
    CHECK(g[2][2] == -1.0);
    CHECK(g[3][3] == -1.0);
}

TEST_CASE("static robertson-walker chart reduces to flat polar form") {
    RobertsonWalker rw;
    rw.scale_model = RobertsonWalker::ScaleModel::exponential;
    rw.H = 0.0; // a(t) = a0 for all t
    const MetricSpec spec = rw;
    const Mat4 g = metric_components(spec, Vec4{7.0, 2.0, kPi / 2.0, 1.0});
    CHECK(g[0][0] == 1.0);
    CHECK(g[1][1] == -1.0);
    CHECK(g[2][2] == -4.0);
    CHECK(rel_diff(g[3][3], -4.0) <= 1e-15);
}

TEST_CASE("analytic christoffel symbols match a finite-difference rebuild") {
    oracle::TestRng rng(911);
    for (const auto& entry : fd_catalog()) {
        CAPTURE(entry.label);
        double worst = 0.0;
        for (int trial = 0; trial < 6; ++trial) {
            const Vec4 x = random_point(entry, rng);
            const Connection exact = christoffel(entry.spec, x);
            const Connection fd = oracle::christoffel_fd(entry.spec, x, entry.h_base);
            for (int l = 0; l < 4; ++l)
                for (int m = 0; m < 4; ++m)
                    for (int n = 0; n < 4; ++n) {
                        const double scaled = std::abs(exact[l][m][n] - fd[l][m][n]) /
                                              (1.0 + std::abs(exact[l][m][n]));
                        worst = std::max(worst, scaled);
                    }
        }
        CHECK(worst <= entry.fd_tol);
    }
}

TEST_CASE("frozen christoffel entries of the static centers") {
    const MetricSpec schw = Schwarzschild{1.0};
    const Connection gs = christoffel(schw, Vec4{0.0, 2.0, kPi / 2.0, 0.0});
    // Gamma^t_tr = r_s / (2 r (r - r_s)), Gamma^r_tt = r_s (r - r_s) / (2 r^3)
    CHECK(rel_diff(gs[0][0][1], 0.25) <= 1e-15);
    CHECK(rel_diff(gs[1][0][0], 0.0625) <= 1e-15);

    CylindricalPowerLaw cyl;
    cyl.alpha = 1.0;
    const Connection gc = christoffel(MetricSpec{cyl}, Vec4{0.0, 2.0, 0.0, 0.0});
    CHECK(rel_diff(gc[0][0][1], 0.25) <= 1e-15); // A'/2A = alpha/2r
}

TEST_CASE("christoffel symbols are symmetric in the lower index pair") {
    oracle::TestRng rng(912);
    for (const auto& entry : fd_catalog()) {
        CAPTURE(entry.label);
        const Connection gam = christoffel(entry.spec, random_point(entry, rng));
        for (int l = 0; l < 4; ++l)
            for (int m = 0; m < 4; ++m)
                for (int n = m + 1; n < 4; ++n)
                    CHECK(gam[l][m][n] == gam[l][n][m]);
    }
}

TEST_CASE("metric determinant stays negative across the catalog") {
    oracle::TestRng rng(913);
    for (const auto& entry : fd_catalog()) {
        CAPTURE(entry.label);
        for (int trial = 0; trial < 8; ++trial) {
            const Mat4 g = metric_components(entry.spec, random_point(entry, rng));
            CHECK(det4(g) < 0.0);
        }
    }
}

TEST_CASE("inverse_metric inverts metric_components") {
    oracle::TestRng rng(914);
    for (const auto& entry : fd_catalog()) {
        CAPTURE(entry.label);
        const Vec4 x = random_point(entry, rng);
        const Mat4 g = metric_components(entry.spec, x);
        const Mat4 gi = inverse_metric(entry.spec, x);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double s = 0.0;
                for (int k = 0; k < 4; ++k) s += g[i][k] * gi[k][j];
                CHECK(std::abs(s - (i == j ? 1.0 : 0.0)) <= 1e-13);
            }
    }
}

TEST_CASE("library finite-difference symbols track the analytic ones") {
    const MetricSpec spec = Schwarzschild{1.0};
    const Vec4 x{0.0, 4.0, 1.1, 0.4};
    const Connection exact = christoffel(spec, x);
    const Connection num = christoffel_numeric(spec, x);
    for (int l = 0; l < 4; ++l)
        for (int m = 0; m < 4; ++m)
            for (int n = 0; n < 4; ++n)
                CHECK(std::abs(exact[l][m][n] - num[l][m][n]) /
                          (1.0 + std::abs(exact[l][m][n])) <=
                      1e-7);
}

TEST_CASE("first-order weak-field symbols agree to second order in the field") {
    // truncation error must scale like the field amplitude squared: doubling
    // the source quadruples the worst defect between the exact symbols and
    // the first-order ones
    const MetricSpec weak = fixtures::weak_spherical(1e-4, 1024);
    const MetricSpec strong = fixtures::weak_spherical(2e-4, 1024);

    auto worst_defect = [](const MetricSpec& spec, const Vec4& x) {
        const Connection exact = christoffel(spec, x);
        const Connection trunc =
            christoffel_first_order(std::get<LinearizedStatic>(spec), x);
        double worst = 0.0;
        for (int l = 0; l < 4; ++l)
            for (int m = 0; m < 4; ++m)
                for (int n = 0; n < 4; ++n)
                    worst = std::max(worst, std::abs(exact[l][m][n] - trunc[l][m][n]));
        return worst;
    };

    oracle::TestRng rng(915);
    for (int trial = 0; trial < 5; ++trial) {
        const Vec4 x{0.0, rng.uniform(0.3, 10.0), rng.uniform(0.6, 2.5), 0.0};
        const double d1 = worst_defect(weak, x);
        const double d2 = worst_defect(strong, x);
        CHECK(d1 <= 1e-4);
        if (d1 > 1e-13) { // below that the ratio is roundoff noise
            const double ratio = d2 / d1;
            CHECK(ratio >= 3.0);
            CHECK(ratio <= 5.5);
        }
    }
}

TEST_CASE("validate_point rejects out-of-domain coordinates") {
    CHECK_THROWS_AS(validate_point(Schwarzschild{1.0}, Vec4{0.0, 1.0, 1.0, 0.0}),
                    validation_error);
    CHECK_THROWS_AS(validate_point(Schwarzschild{1.0}, Vec4{0.0, -2.0, 1.0, 0.0}),
                    validation_error);

    RobertsonWalker closed;
    closed.curvature = +1;
    closed.curvature_radius = 2.0;
    CHECK_THROWS_AS(validate_point(MetricSpec{closed}, Vec4{1.0, 2.5, 1.0, 0.0}),
                    validation_error);

    RobertsonWalker power; // a(t) = a0 t^p needs t > 0
    CHECK_THROWS_AS(validate_point(MetricSpec{power}, Vec4{-1.0, 0.5, 1.0, 0.0}),
                    validation_error);
}

TEST_CASE("einstein tensor vanishes for the vacuum power-law cylinder") {
    CylindricalPowerLaw cyl;
    cyl.a = 1.3;
    cyl.b = 0.7;
    cyl.c = 1.6;
    cyl.alpha = 1.5;
    const MetricSpec spec = cyl;
    for (double r : {0.4, 1.0, 2.5, 7.0}) {
        bool numeric = true;
        const Mat4 G = einstein_tensor(spec, Vec4{0.0, r, 0.0, 0.0}, &numeric);
        CHECK_FALSE(numeric);
        CHECK(max_abs(G) <= 1e-12);
    }
}

TEST_CASE("smoothed cylinder closed forms: axis value and component identities") {
    SmoothedCylinder sm;
    sm.a = 1.2;
    sm.b = 0.8;
    sm.c = 1.1;
    sm.alpha = 0.9;
    sm.eps_smooth = 0.01;
    const MetricSpec spec = sm;

    // G11 -> -(1/2) alpha^2/(alpha+2) / eps^2 on the axis (s(0) = eps)
    const Mat4 g0 = einstein_tensor(spec, Vec4{0.0, 1e-14, 0.0, 0.0});
    const double g11_axis =
        -0.5 * sm.alpha * sm.alpha / (sm.alpha + 2.0) / (sm.eps_smooth * sm.eps_smooth);
    CHECK(rel_diff(g0[1][1], g11_axis) <= 1e-12);

    for (double r : {0.003, 0.02, 0.3}) {
        const Vec4 x{0.0, r, 0.0, 0.0};
        const Mat4 G = einstein_tensor(spec, x);
        const Mat4 g = metric_components(spec, x);
        const double A = g[0][0], B = -g[1][1], C = -g[3][3];
        CHECK(rel_diff(G[3][3], (C / A) * G[0][0]) <= 1e-13);
        CHECK(rel_diff(G[2][2], (r * r / B) * G[1][1]) <= 1e-13);
    }
}

TEST_CASE("smoothed cylinder closed forms match the finite-difference tensor") {
    SmoothedCylinder sm;
    sm.alpha = 0.6;
    sm.eps_smooth = 0.05;
    const MetricSpec spec = sm;
    for (double r : {0.01, 0.08, 0.5}) {
        const Vec4 x{0.0, r, 0.0, 0.0};
        const Mat4 exact = einstein_tensor(spec, x);
        const Mat4 num = einstein_numeric(spec, x);
        const double scale = std::max(max_abs(exact), 1e-30);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                CHECK(std::abs(exact[i][j] - num[i][j]) <= 2e-4 * scale);
    }
}

TEST_CASE("transverse source integrals approach the thin-line limits") {
    SmoothedCylinder sm;
    sm.a = 1.0;
    sm.b = 0.9;
    sm.c = 1.3;
    sm.alpha = 1e-3;
    sm.eps_smooth = 1e-3;
    const SourceIntegrals si = smoothed_source_integrals(sm);
    CHECK(si.converged);
    // quadrature against the closed forms of the same integrals
    CHECK(rel_diff(si.I00, si.I00_exact) <= 1e-8);
    CHECK(rel_diff(si.I33, si.I33_exact) <= 1e-8);
    // exact values against the small-(alpha, eps) limits
    CHECK(rel_diff(si.I00_exact, si.I00_limit) <= 0.02);
    CHECK(rel_diff(si.I33_exact, si.I33_limit) <= 0.02);
    CHECK(si.I00_limit == -0.5 * (sm.a / sm.b) * sm.alpha);
    CHECK(si.I33_limit == -0.5 * (sm.c / sm.b) * sm.alpha);
}

TEST_CASE("metric serialization round-trips through parse_metric") {
    std::vector<MetricSpec> specs;
    RobertsonWalker rw;
    rw.p = 0.75;
    rw.curvature = +1;
    rw.curvature_radius = 3.5;
    specs.push_back(rw);
    specs.push_back(Schwarzschild{2.25});
    CylindricalPowerLaw cyl;
    cyl.a = 1.5;
    cyl.alpha = 0.625;
    specs.push_back(cyl);
    SmoothedCylinder sm;
    sm.alpha = 0.375;
    sm.eps_smooth = 0.0078125;
    specs.push_back(sm);

    for (const auto& spec : specs) {
        const std::string text = format_metric(spec);
        std::map<std::string, std::string> kv;
        size_t pos = 0;
        while (pos < text.size()) {
            const size_t eol = text.find('\n', pos);
            const std::string line = text.substr(pos, eol - pos);
            pos = eol + 1;
            const size_t eq = line.find(" = ");
            REQUIRE(eq != std::string::npos);
            kv[line.substr(0, eq)] = line.substr(eq + 3);
        }
        const MetricSpec back = parse_metric(kv);
        CHECK(format_metric(back) == text);
        CHECK(std::string(family_name(back)) == family_name(spec));
    }
}

} // TEST_SUITE
