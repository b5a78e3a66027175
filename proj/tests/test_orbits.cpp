#include "doctest.h"

#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "tachyon/errors.hpp"
#include "tachyon/orbits.hpp"

using namespace tgr;
using namespace tgr::orbits;
using oracle::rel_diff;

TEST_SUITE("orbits") {

TEST_CASE("deflection prefactor: frozen values and causal ordering") {
    ScatteringSetup null_ray;
    null_ray.Q = 0;
    null_ray.v = 1.0;
    CHECK(chi_factor(null_ray) == 2.0);

    ScatteringSetup tachyon;
    tachyon.Q = -1;
    tachyon.v = 2.0;
    CHECK(chi_factor(tachyon) == 1.25); // 2 - 1/(v^2 gamma^2) lands exactly

    ScatteringSetup slow_tachyon = tachyon;
    slow_tachyon.v = 1.5;
    ScatteringSetup bradyon;
    bradyon.Q = +1;
    bradyon.v = 0.5;
    CHECK(chi_factor(slow_tachyon) < 2.0);
    CHECK(chi_factor(bradyon) > 2.0);

    // huge-speed tachyon limit: chi -> 1 from above
    ScatteringSetup fast = tachyon;
    fast.v = 1e3;
    CHECK(chi_factor(fast) > 1.0);
    CHECK(chi_factor(fast) < 1.001);
}

TEST_CASE("numeric deflection converges to the first-order form") {
    ScatteringSetup setup;
    setup.r_s = 1e-3;
    setup.b_impact = 1.0;
    setup.v = 2.0;
    setup.Q = -1;
    const auto analytic = deflection_angle(setup, DeflectionMethod::analytic);
    const auto numeric = deflection_angle(setup, DeflectionMethod::numeric);
    REQUIRE_FALSE(numeric.captured);
    CHECK(rel_diff(numeric.delta_phi, analytic.delta_phi) <= 5e-3);

    // quadratic error decay: doubling b shrinks the defect by about 4
    ScatteringSetup wide = setup;
    wide.b_impact = 2.0;
    const double e1 = std::abs(numeric.delta_phi - analytic.delta_phi);
    const double e2 = std::abs(deflection_angle(wide, DeflectionMethod::numeric).delta_phi -
                               deflection_angle(wide, DeflectionMethod::analytic).delta_phi);
    CHECK(e1 / e2 > 2.8);
    CHECK(e1 / e2 < 5.7);
}

TEST_CASE("close passage with no outer turning point is flagged captured") {
    ScatteringSetup setup;
    setup.r_s = 1.0;
    setup.b_impact = 1.2; // far inside the critical impact parameter
    setup.v = 1.05;
    setup.Q = -1;
    const auto res = deflection_angle(setup, DeflectionMethod::numeric);
    CHECK(res.captured);
}

TEST_CASE("setup validation ties speed domain to the causal class") {
    ScatteringSetup bad;
    bad.Q = -1;
    bad.v = 0.5; // tachyon must be superluminal
    CHECK_THROWS_AS(bad.validate(), validation_error);
    bad.Q = +1;
    bad.v = 2.0; // ordinary particle must be subluminal
    CHECK_THROWS_AS(bad.validate(), validation_error);
    bad.Q = 0;
    bad.v = 2.0; // null means v = 1
    CHECK_THROWS_AS(bad.validate(), validation_error);
}

TEST_CASE("spherical weak field cannot trap a tachyon") {
    const auto profile = fixtures::solved_profile(
        linfield::SourceEnvelope::Shape::gaussian, 3, 1e-3, 2.0, 1024);
    oracle::TestRng rng(77);
    for (int trial = 0; trial < 25; ++trial) {
        geodesic::ConservedCharges charges;
        charges.Q = -1;
        charges.charge_gamma = rng.uniform(0.05, 5.0);
        charges.L = rng.uniform(0.0, 20.0);
        const auto verdict = spherical_bound_analysis(*profile, charges);
        CHECK(verdict.no_bound_possible);
        // the radial constant is pinned by the charges alone
        CHECK(verdict.curve.script_E ==
              0.5 * (charges.charge_gamma * charges.charge_gamma + 1.0));
        CHECK(verdict.curve.script_E > 0.0);
    }
}

TEST_CASE("cylindrical weak field traps a tachyon and the state reproduces it") {
    const auto profile = fixtures::solved_profile(
        linfield::SourceEnvelope::Shape::top_hat, 2, 1e-4, 2.0, 2048);
    const BoundOrbit orbit = bound_orbit_search(profile);
    REQUIRE(orbit.found);
    CHECK(orbit.r_peri < orbit.r_star);
    CHECK(orbit.r_star < orbit.r_apo);
    CHECK(orbit.margin > 0.0);

    const MetricSpec spec = spacetime::LinearizedStatic{profile, 2};
    const double r0 = std::sqrt(orbit.r_peri * orbit.r_apo);
    const auto state = bound_orbit_state(spec, orbit, r0);
    CHECK(geodesic::classify(state, spec) == -1);
    const auto charges = geodesic::first_integrals(spec, state);
    CHECK(rel_diff(charges.charge_gamma, orbit.gamma) <= 1e-12);
    CHECK(rel_diff(charges.kappa, orbit.kappa) <= 1e-12);
    CHECK(rel_diff(charges.L, orbit.L) <= 1e-12);
}

TEST_CASE("effective potential curve locates the well of the trap") {
    const auto profile = fixtures::solved_profile(
        linfield::SourceEnvelope::Shape::top_hat, 2, 1e-4, 2.0, 2048);
    const BoundOrbit orbit = bound_orbit_search(profile);
    REQUIRE(orbit.found);
    const auto curve = cylindrical_effective_potential(*profile, orbit.gamma,
                                                       orbit.kappa, orbit.L);
    CHECK(curve.has_minimum);
    CHECK_FALSE(curve.minimum_on_boundary);
    CHECK(rel_diff(curve.r_star, orbit.r_star) <= 1e-6);
    // the orbit energy sits strictly inside the well
    CHECK(curve.script_E > curve.U_star);
}

TEST_CASE("deflection scan: frozen header and bitwise-identical paths") {
    std::vector<ScatteringSetup> setups;
    for (double b : {3.0, 5.0, 8.0, 13.0}) {
        ScatteringSetup s;
        s.r_s = 0.1;
        s.b_impact = b;
        s.v = 2.0;
        s.Q = -1;
        setups.push_back(s);
        s.Q = 0;
        s.v = 1.0;
        setups.push_back(s);
    }
    const auto serial = deflection_scan(setups, Exec::serial);
    const auto parallel = deflection_scan(setups, Exec::parallel);
    const std::string csv_s = deflect_csv(serial, "");
    const std::string csv_p = deflect_csv(parallel, "");
    CHECK(csv_s == csv_p);
    CHECK(csv_s.rfind("Q,v,b,rs,chi_analytic,delta_phi_numeric,delta_phi_analytic,"
                      "abs_err",
                      0) == 0);
}

} // TEST_SUITE
