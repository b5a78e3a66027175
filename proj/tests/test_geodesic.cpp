#include "doctest.h"

#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "tachyon/errors.hpp"
#include "tachyon/geodesic.hpp"

using namespace tgr;
using namespace tgr::geodesic;
using oracle::rel_diff;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_SUITE("geodesic") {

TEST_CASE("causal classification of flat-space velocities") {
    spacetime::RobertsonWalker rw;
    rw.scale_model = spacetime::RobertsonWalker::ScaleModel::exponential;
    rw.H = 0.0; // minkowski in polar form
    const MetricSpec spec = rw;
    const Vec4 x{0.0, 2.0, kPi / 2.0, 0.0};

    CHECK(classify(make_state(spec, x, Vec4{2.0, 1.0, 0.0, 0.0}), spec) == +1);
    CHECK(classify(make_state(spec, x, Vec4{1.0, 1.0, 0.0, 0.0}), spec) == 0);
    CHECK(classify(make_state(spec, x, Vec4{1.0, 2.0, 0.0, 0.0}), spec) == -1);

    // construction rescales onto the affine convention q = Q exactly
    const auto s = make_state(spec, x, Vec4{2.0, 1.0, 0.0, 0.0});
    CHECK(rel_diff(q_value(spec, s), 1.0) <= 4e-16);
    const auto tach = make_state(spec, x, Vec4{1.0, 2.0, 0.0, 0.0});
    CHECK(rel_diff(q_value(spec, tach), -1.0) <= 4e-16);
    const auto null_ray = make_state(spec, x, Vec4{1.0, 1.0, 0.0, 0.0});
    CHECK(q_value(spec, null_ray) == 0.0); // null directions are not rescaled
}

TEST_CASE("first integrals reduce to flat charges when the field vanishes") {
    // a zero-amplitude source solves to an identically zero profile, so the
    // weak-field chart is exactly flat
    const MetricSpec cyl = spacetime::LinearizedStatic{
        fixtures::solved_profile(linfield::SourceEnvelope::Shape::top_hat, 2, 0.0, 2.0,
                                 512),
        2};
    // q = 4 - 1 - 4*(1/4) - 1 = 1 exactly, so the affine rescale is a no-op
    const auto sc = make_state(cyl, Vec4{0.0, 2.0, 1.0, 0.5}, Vec4{2.0, 1.0, 0.5, 1.0});
    const auto cc = first_integrals(cyl, sc);
    CHECK(cc.charge_gamma == 2.0); // g00 tdot
    CHECK(cc.kappa == 1.0);        // -g33 zdot
    CHECK(cc.L == 2.0);            // r^2 thetadot

    const MetricSpec sph = spacetime::LinearizedStatic{
        fixtures::solved_profile(linfield::SourceEnvelope::Shape::gaussian, 3, 0.0, 2.0,
                                 512),
        3};
    // q = 2.25 - 0.25 - 4*(1/4) = 1 exactly at r = 2 on the equator
    const auto ss =
        make_state(sph, Vec4{0.0, 2.0, kPi / 2.0, 0.0}, Vec4{1.5, 0.5, 0.0, 0.5});
    const auto cs = first_integrals(sph, ss);
    CHECK(cs.charge_gamma == 1.5);
    CHECK(rel_diff(cs.L, 2.0) <= 1e-15); // equatorial: |L| = r^2 phidot
    CHECK(rel_diff(cs.M, 2.0) <= 1e-15); // azimuthal charge equals it
}

TEST_CASE("quadratic form and charges are conserved along a tachyon orbit") {
    const MetricSpec spec = spacetime::Schwarzschild{1.0};
    const auto s0 = make_state(spec, Vec4{0.0, 6.0, kPi / 2.0, 0.0},
                               Vec4{1.0, 1.6, 0.0, 0.1});
    REQUIRE(classify(s0, spec) == -1);
    const Trajectory traj = integrate(spec, s0, 0.0, 8.0, 1e-10);
    CHECK(traj.stop == StopReason::span_end);
    CHECK(traj.max_q_drift <= 5e-9);
    CHECK(traj.max_charge_drift <= 1e-8);
    CHECK(traj.states.size() == traj.tau.size());
}

TEST_CASE("integration is reversible up to integrator error") {
    const MetricSpec spec = spacetime::Schwarzschild{1.0};
    const auto s0 = make_state(spec, Vec4{0.0, 6.0, kPi / 2.0, 0.0},
                               Vec4{1.0, 1.6, 0.0, 0.1});
    const Trajectory fwd = integrate(spec, s0, 0.0, 4.0, 1e-11);
    REQUIRE(fwd.stop == StopReason::span_end);

    GeodesicState turn = fwd.back();
    for (auto& c : turn.velocity) c = -c;
    const Trajectory bwd = integrate(spec, turn, 0.0, 4.0, 1e-11);
    REQUIRE(bwd.stop == StopReason::span_end);

    const auto& home = bwd.back();
    for (int k = 0; k < 4; ++k) {
        CHECK(std::abs(home.point.x[k] - s0.point.x[k]) <= 1e-6);
        CHECK(std::abs(home.velocity[k] + s0.velocity[k]) <= 1e-6);
    }
}

TEST_CASE("turning points of the radial first integral bracket the orbit") {
    const MetricSpec spec = spacetime::Schwarzschild{1.0};
    // near-circular bound ordinary orbit at r = 10
    const double r0 = 10.0, L = 2.4254, E = 0.98;
    const double A = 1.0 - 1.0 / r0;
    const double rdot2 = E * E - A * (1.0 + L * L / (r0 * r0));
    REQUIRE(rdot2 > 0.0);
    const auto s0 = make_state(
        spec, Vec4{0.0, r0, kPi / 2.0, 0.0},
        Vec4{E / A, std::sqrt(rdot2), 0.0, L / (r0 * r0)});
    REQUIRE(classify(s0, spec) == +1);

    const auto charges = first_integrals(spec, s0);
    const auto roots = radial_turning_points(charges, spec, 1.5, 60.0);
    REQUIRE(roots.size() == 2);
    const double peri = roots[0].r, apo = roots[1].r;
    REQUIRE(peri < r0);
    REQUIRE(apo > r0);

    const Trajectory traj = integrate(spec, s0, 0.0, 500.0, 1e-10);
    REQUIRE(traj.stop == StopReason::span_end);
    double rmin = 1e300, rmax = 0.0;
    for (const auto& st : traj.states) {
        rmin = std::min(rmin, st.point.r());
        rmax = std::max(rmax, st.point.r());
    }
    CHECK(rmin >= peri * (1.0 - 1e-6));
    CHECK(rmax <= apo * (1.0 + 1e-6));
    CHECK(rmin <= peri * (1.0 + 1e-3)); // the orbit actually visits both ends
    CHECK(rmax >= apo * (1.0 - 1e-3));
}

TEST_CASE("equatorial launches stay exactly equatorial") {
    const MetricSpec spec = spacetime::Schwarzschild{1.0};
    const auto s0 = make_state(spec, Vec4{0.0, 8.0, kPi / 2.0, 0.0},
                               Vec4{1.2, 0.3, 0.0, 0.09});
    const Trajectory traj = integrate(spec, s0, 0.0, 10.0, 1e-9);
    for (const auto& st : traj.states) {
        CHECK(st.point.theta() == kPi / 2.0);
        CHECK(st.velocity[2] == 0.0);
    }
}

TEST_CASE("the horizon guard stops an infalling geodesic") {
    const MetricSpec spec = spacetime::Schwarzschild{1.0};
    const auto s0 = make_state(spec, Vec4{0.0, 3.0, kPi / 2.0, 0.0},
                               Vec4{1.5, -0.9, 0.0, 0.01});
    const Trajectory traj = integrate(spec, s0, 0.0, 50.0, 1e-9);
    CHECK(traj.stop == StopReason::domain_exit);
    CHECK(traj.back().point.r() > 1.0);
    CHECK(traj.back().point.r() < 1.1);
    CHECK_FALSE(traj.stop_detail.empty());
}

TEST_CASE("the curvature-pole guard stops near the closed-universe rim") {
    spacetime::RobertsonWalker rw;
    rw.p = 2.0 / 3.0;
    rw.curvature = +1;
    rw.curvature_radius = 1.0;
    const MetricSpec spec = rw;
    const auto s0 = make_state(spec, Vec4{1.0, 0.3, kPi / 2.0, 0.0},
                               Vec4{1.0, 1.8, 0.0, 0.2});
    REQUIRE(classify(s0, spec) == -1);
    const Trajectory traj = integrate(spec, s0, 0.0, 3.0, 1e-8);
    CHECK(traj.back().point.r() < 1.0);
    if (traj.stop == StopReason::domain_exit)
        CHECK(traj.back().point.r() > 0.99);
}

TEST_CASE("trajectory CSV is deterministic with one row per accepted step") {
    const MetricSpec spec = spacetime::Schwarzschild{1.0};
    const auto s0 = make_state(spec, Vec4{0.0, 6.0, kPi / 2.0, 0.0},
                               Vec4{1.0, 1.6, 0.0, 0.1});
    const Trajectory t1 = integrate(spec, s0, 0.0, 5.0, 1e-9);
    const Trajectory t2 = integrate(spec, s0, 0.0, 5.0, 1e-9);
    const std::string csv1 = trajectory_csv(t1, spec, "");
    const std::string csv2 = trajectory_csv(t2, spec, "");
    CHECK(csv1 == csv2);
    CHECK(csv1.rfind("tau,t,r,theta,", 0) == 0);
    size_t lines = 0;
    for (char c : csv1)
        if (c == '\n') ++lines;
    CHECK(lines == t1.states.size() + 1); // header plus one row per step
}

TEST_CASE("make_state rejects invalid start points") {
    const MetricSpec spec = spacetime::Schwarzschild{1.0};
    CHECK_THROWS_AS(
        make_state(spec, Vec4{0.0, 0.5, kPi / 2.0, 0.0}, Vec4{1.0, 0.0, 0.0, 0.0}),
        validation_error);
    CHECK_THROWS_AS(
        make_state(spec, Vec4{0.0, -3.0, kPi / 2.0, 0.0}, Vec4{1.0, 0.0, 0.0, 0.0}),
        validation_error);
}

} // TEST_SUITE
