#include "doctest.h"

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "tachyon/errors.hpp"
#include "tachyon/interp.hpp"
#include "tachyon/quadrature.hpp"
#include "tachyon/roots.hpp"

using namespace tgr;
using oracle::rel_diff;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_SUITE("numerics") {

TEST_CASE("adaptive quadrature nails smooth closed forms") {
    const auto sq = [](double x) { return x * x; };
    const QuadResult r = integrate_adaptive(sq, 0.0, 1.0, 0.0, 1e-13);
    CHECK(r.converged);
    CHECK(rel_diff(r.value, 1.0 / 3.0) <= 1e-13);

    const QuadResult osc =
        integrate_adaptive([](double x) { return std::cos(x); }, 0.0, 2.0 * kPi,
                           1e-13, 0.0);
    CHECK(std::abs(osc.value) <= 1e-12);
}

TEST_CASE("adaptive quadrature agrees with an independent simpson rule") {
    const auto f = [](double x) {
        return std::exp(-x * x) + 0.25 * std::sin(3.0 * x);
    };
    const double lib = integrate_or_throw(f, -1.0, 2.5, 1e-13, 1e-13, "test integral");
    const double oracle_value = oracle::simpson(f, -1.0, 2.5, 20000);
    CHECK(rel_diff(lib, oracle_value) <= 1e-10);
}

TEST_CASE("exhausted interval budget raises a numerical error") {
    const auto nasty = [](double x) { return 1.0 / std::sqrt(std::abs(x - 0.3) + 1e-14); };
    CHECK_THROWS_AS(integrate_or_throw(nasty, 0.0, 1.0, 1e-14, 1e-14, "nasty", 3),
                    numerical_error);
}

TEST_CASE("double-exponential rules handle endpoint singularities and tails") {
    // the endpoint singularity costs a few digits against the smooth rate
    const double inv_sqrt =
        tanh_sinh([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-12);
    CHECK(rel_diff(inv_sqrt, 2.0) <= 1e-8);

    const double expo = exp_sinh([](double x) { return std::exp(-x); }, 0.0, 1e-12);
    CHECK(rel_diff(expo, 1.0) <= 1e-10);

    const double tail = exp_sinh([](double x) { return 1.0 / (x * x); }, 1.0, 1e-12);
    CHECK(rel_diff(tail, 1.0) <= 1e-9);
}

TEST_CASE("root scan finds simple crossings and flags grazing contacts") {
    const auto roots =
        scan_roots([](double x) { return std::sin(x); }, 0.1, 10.0, 400, 1e-12, 1.0);
    REQUIRE(roots.size() == 3);
    CHECK(rel_diff(roots[0].r, kPi) <= 1e-10);
    CHECK(rel_diff(roots[1].r, 2.0 * kPi) <= 1e-10);
    CHECK(rel_diff(roots[2].r, 3.0 * kPi) <= 1e-10);
    for (const auto& rt : roots) CHECK_FALSE(rt.tangency);

    // a strictly positive dip below the zero threshold is a grazing contact
    const auto graze = scan_roots(
        [](double x) { return (x - 2.000001) * (x - 2.000001); }, 1.0, 3.0, 400,
        1e-12, 1.0);
    REQUIRE(graze.size() == 1);
    CHECK(graze[0].tangency);
    CHECK(std::abs(graze[0].r - 2.0) <= 0.01);

    // an exact zero on a sample point degenerates into a crossing pair; every
    // report must still sit on the contact
    const auto exact_hit = scan_roots([](double x) { return (x - 2.0) * (x - 2.0); },
                                      1.0, 3.0, 400, 1e-12, 1.0);
    REQUIRE(exact_hit.size() >= 1);
    for (const auto& rt : exact_hit) CHECK(std::abs(rt.r - 2.0) <= 0.01);
}

TEST_CASE("bisection and golden-section refinement") {
    const double root =
        bisect([](double x) { return std::cos(x); }, 1.0, 2.0, 1e-13);
    CHECK(std::abs(root - kPi / 2.0) <= 1e-12);

    const double xmin =
        golden_min([](double x) { return (x - 1.5) * (x - 1.5) + 0.25; }, 0.0, 4.0,
                   1e-9);
    CHECK(std::abs(xmin - 1.5) <= 1e-7);
}

TEST_CASE("cubic spline reproduces quadratics and differentiates itself") {
    std::vector<double> xs, ys;
    for (int i = 0; i <= 20; ++i) {
        const double x = 0.5 + 0.35 * i;
        xs.push_back(x);
        ys.push_back(x * x - 3.0 * x + 2.0);
    }
    const CubicSpline sp(xs, ys);

    // interior knot slopes are the 3-point weighted secants, exact for a
    // parabola — interior segments reproduce it to roundoff.  the end knots
    // use one-sided secants, so the two boundary segments only approximate.
    for (double x = xs[1] + 0.01; x < xs[19] - 0.01; x += 0.173) {
        CHECK(std::abs(sp.eval(x) - (x * x - 3.0 * x + 2.0)) <= 1e-12);
        CHECK(std::abs(sp.deriv(x) - (2.0 * x - 3.0)) <= 1e-11);
        CHECK(std::abs(sp.second(x) - 2.0) <= 1e-9);
    }
    for (double x : {0.62, 0.78, 7.22, 7.38}) {
        CHECK(std::abs(sp.eval(x) - (x * x - 3.0 * x + 2.0)) <= 0.04);
    }

    // deriv() must be the exact derivative of eval(), knot to knot
    for (double x = 0.91; x < 7.1; x += 0.41) {
        const double h = 1e-4; // Richardson is exact on cubics, so a wide
        const double d1 = (sp.eval(x + h) - sp.eval(x - h)) / (2.0 * h); // step
        const double d2 = (sp.eval(x + 0.5 * h) - sp.eval(x - 0.5 * h)) / h;
        CHECK(std::abs(sp.deriv(x) - (4.0 * d2 - d1) / 3.0) <= 5e-10);
    }

    // outside the grid the end segments continue without jumps
    CHECK(std::abs(sp.eval(xs.front() - 1e-9) - sp.eval(xs.front())) <= 1e-7);
    CHECK(std::abs(sp.eval(xs.back() + 1e-9) - sp.eval(xs.back())) <= 1e-7);
}

} // TEST_SUITE
