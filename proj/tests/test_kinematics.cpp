#include "doctest.h"

#include <cfloat>
#include <cmath>

#include "oracles.hpp"
#include "tachyon/errors.hpp"
#include "tachyon/kinematics.hpp"

using namespace tgr;
using namespace tgr::kinematics;
using oracle::rel_diff;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_SUITE("kinematics") {

TEST_CASE("exchange timing: frozen values for the canonical scenario") {
    ExchangeScenario sc;
    sc.x0 = 1.0;
    sc.v = 0.6;
    sc.V = 2.0;
    const ExchangeTimes t = exchange_times(sc);
    CHECK(rel_diff(t.dt_earth, 5.0 / 7.0) <= 1e-15);
    CHECK(rel_diff(t.dt_ship, -5.0 / 28.0) <= 1e-15);
    CHECK(t.reversed); // v V = 1.2 > 1

    sc.v = -0.6; // approaching ship never sees a reversed reply
    const ExchangeTimes ta = exchange_times(sc);
    CHECK_FALSE(ta.reversed);
    CHECK(ta.dt_ship > 0.0);
}

TEST_CASE("exchange validation rejects non-tachyonic signals and v >= 1") {
    ExchangeScenario sc;
    sc.V = 0.8;
    CHECK_THROWS_AS(sc.validate(), validation_error);
    sc.V = 2.0;
    sc.v = 1.0;
    CHECK_THROWS_AS(sc.validate(), validation_error);
}

TEST_CASE("packet size transform: rest size, boost, and the divergence pole") {
    const PacketTransform p = packet_size_transform(2.0, 0.5, 0.25);
    CHECK(p.dx_rest == 4.0);
    const double gamma = 1.0 / std::sqrt(1.0 - 0.0625);
    CHECK(rel_diff(p.dx_boosted, 2.0 / (gamma * 0.5 * 0.5)) <= 1e-15);
    CHECK_FALSE(p.diverges);

    // v V = 1 exactly: the boosted size diverges
    const PacketTransform pole = packet_size_transform(2.0, 0.5, 0.5);
    CHECK(pole.diverges);

    // one ulp off the pole with a strict threshold: finite again
    const double v_off = std::nextafter(0.5, 1.0);
    const PacketTransform off = packet_size_transform(2.0, 0.5, v_off, DBL_MIN);
    CHECK_FALSE(off.diverges);
    CHECK(std::isfinite(off.dx_boosted));
}

TEST_CASE("on-shell state density on the tachyon shell") {
    // (1/2 pi^2) E0 sqrt(E0^2 + m^2) at E0 = 3, m = 4 gives 15 / (2 pi^2)
    CHECK(rel_diff(on_shell_density(3.0, 4.0), 15.0 / (2.0 * kPi * kPi)) <= 1e-15);
}

TEST_CASE("beta spectra at the photon-mass point E0 - Ee = m") {
    const double E0 = 2.5, m = 0.5; // both exact in binary
    SpectrumModel massless{SpectrumModel::Variant::massless, 0.0, E0};
    SpectrumModel bradyonic{SpectrumModel::Variant::bradyonic, m, E0};
    SpectrumModel tachyonic{SpectrumModel::Variant::tachyonic, m, E0};

    const double Ee = E0 - m;
    CHECK(rel_diff(beta_spectrum(massless, Ee), m * m) <= 1e-15);
    CHECK(beta_spectrum(bradyonic, bradyonic.support_max()) == 0.0);
    CHECK(rel_diff(beta_spectrum(tachyonic, Ee), std::sqrt(2.0) * m * m) <= 1e-15);

    // the spectra are nonnegative on their support and vanish nowhere inside
    for (int i = 1; i < 40; ++i) {
        const double e = E0 * double(i) / 40.0;
        CHECK(beta_spectrum(massless, e) >= 0.0);
        CHECK(beta_spectrum(tachyonic, e) > 0.0);
        if (e <= bradyonic.support_max()) CHECK(beta_spectrum(bradyonic, e) >= 0.0);
    }
    CHECK_THROWS_AS(beta_spectrum(massless, E0 * 1.01), validation_error);
    CHECK_THROWS_AS(beta_spectrum(bradyonic, E0 - 0.5 * m), validation_error);
}

TEST_CASE("endpoint slope classifications agree between analysis and fit") {
    const double E0 = 2.5, m = 0.5;
    SpectrumModel massless{SpectrumModel::Variant::massless, 0.0, E0};
    SpectrumModel bradyonic{SpectrumModel::Variant::bradyonic, m, E0};
    SpectrumModel tachyonic{SpectrumModel::Variant::tachyonic, m, E0};

    CHECK(endpoint_slope(SpectrumModel::Variant::massless) == EndpointSlope::zero);
    CHECK(endpoint_slope(SpectrumModel::Variant::bradyonic) == EndpointSlope::infinite);
    CHECK(endpoint_slope(SpectrumModel::Variant::tachyonic) ==
          EndpointSlope::finite_negative);

    double slope = 0.0;
    CHECK(endpoint_slope_fit(massless) == EndpointSlope::zero);
    CHECK(endpoint_slope_fit(bradyonic) == EndpointSlope::infinite);
    CHECK(endpoint_slope_fit(tachyonic, 1e-4, &slope) == EndpointSlope::finite_negative);
    CHECK(rel_diff(slope, -m) <= 1e-3); // tachyonic spectrum ends with slope -m
}

TEST_CASE("small-mass oscillation phases are opposite and equal") {
    CHECK(oscillation_phase(MassModel::bradyonic, 1.0, 100.0, 100.0) == -0.5);
    CHECK(oscillation_phase(MassModel::tachyonic, 1.0, 100.0, 100.0) == 0.5);
    CHECK(phase_fractional_difference(1.0, 100.0, 100.0, 50.0, 50.0) == 0.0);
    // the expansion needs k > m
    CHECK_THROWS_AS(oscillation_phase(MassModel::bradyonic, 1.0, 0.5, 1.0),
                    validation_error);
}

TEST_CASE("gas equation of state: cold power laws and the hot radiation limit") {
    const double m = 1.0;
    // cold side: rho ~ T^3 and P ~ T near kT/m = 1e-2
    const double T = 1e-2;
    const double lr = std::log(gas_energy_density(T * 1.1, m, Statistics::fermi) /
                               gas_energy_density(T / 1.1, m, Statistics::fermi)) /
                      (2.0 * std::log(1.1));
    const double lp = std::log(gas_pressure(T * 1.1, m, Statistics::fermi) /
                               gas_pressure(T / 1.1, m, Statistics::fermi)) /
                      (2.0 * std::log(1.1));
    CHECK(std::abs(lr - 3.0) <= 0.05 * 3.0);
    CHECK(std::abs(lp - 1.0) <= 0.05);

    // hot side: the shell forgets the mass and radiates, rho = 3P
    const double Th = 100.0;
    CHECK(std::abs(3.0 * gas_pressure(Th, m, Statistics::fermi) /
                       gas_energy_density(Th, m, Statistics::fermi) -
                   1.0) <= 1e-3);

    // dT derivative consistency against central differences
    const double fd = (gas_energy_density(1.01, m, Statistics::fermi) -
                       gas_energy_density(0.99, m, Statistics::fermi)) /
                      0.02;
    CHECK(rel_diff(gas_energy_density_dT(1.0, m, Statistics::fermi), fd) <= 1e-3);
}

TEST_CASE("bose occupancy is rejected where its soft mode diverges") {
    CHECK(std::isfinite(gas_energy_density(1.0, 1.0, Statistics::bose)));
    CHECK_THROWS_AS(gas_pressure(1.0, 1.0, Statistics::bose), validation_error);
}

TEST_CASE("full evolution conserves the comoving energy step by step") {
    GasState init;
    init.T = 0.5;
    init.m = 1.0;
    init.a_scale = 1.0;
    const GasCurve c = gas_evolution(init, 2.0, GasMode::full_ode, 400);
    REQUIRE(c.a.size() == 400);
    const double scale = c.rho.front() * std::pow(c.a.front(), 3.0);
    double worst = 0.0;
    for (size_t i = 0; i + 1 < c.a.size(); ++i) {
        if (c.quenched && c.a[i + 1] >= c.a_quench) break;
        if (c.T[i + 1] < 0.05 * init.T) break; // sqrt-type collapse defeats trapezoids
        const double da = c.a[i + 1] - c.a[i];
        const double am = 0.5 * (c.a[i] + c.a[i + 1]);
        const double pm = 0.5 * (c.P[i] + c.P[i + 1]);
        const double lhs = c.rho[i + 1] * std::pow(c.a[i + 1], 3.0) -
                           c.rho[i] * std::pow(c.a[i], 3.0);
        worst = std::max(worst, std::abs(lhs + 3.0 * pm * am * am * da) / scale);
    }
    CHECK(worst <= 1e-5);
}

TEST_CASE("closed form: explicit curve, finite domain, and the quench flag") {
    GasState init;
    init.T = 0.25;
    init.m = 1.0;
    init.a_scale = 2.0;
    const GasCurve c = gas_evolution(init, 4.0, GasMode::low_T_closed_form, 101);
    CHECK(rel_diff(c.domain_end, 2.0 * std::sqrt(2.0)) <= 1e-15);
    CHECK(c.quenched);
    // the reported quench radius may sit on the sampling grid
    CHECK(std::abs(c.a_quench - c.domain_end) <= (4.0 - 2.0) / 100.0 + 1e-12);
    for (size_t i = 0; i < c.a.size(); ++i) {
        const double x = 2.0 * std::pow(init.a_scale / c.a[i], 2.0) - 1.0;
        if (x <= 0.0) break;
        CHECK(rel_diff(c.T[i], init.T * std::sqrt(x)) <= 1e-12);
    }
}

TEST_CASE("csv exports are deterministic") {
    CHECK(spectrum_csv(2.5, 0.5, 64, "") == spectrum_csv(2.5, 0.5, 64, ""));
    CHECK(spectrum_csv(2.5, 0.5, 16, "").rfind("Ee,massless,bradyonic,tachyonic", 0) ==
          0);
    GasState init;
    init.T = 0.5;
    const GasCurve full = gas_evolution(init, 1.5, GasMode::full_ode, 32);
    const GasCurve closed = gas_evolution(init, 1.5, GasMode::low_T_closed_form, 32);
    CHECK(cosmo_csv(full, closed, "") == cosmo_csv(full, closed, ""));
    CHECK(cosmo_csv(full, closed, "").rfind("a,T_full,T_closed_form,rho,P", 0) == 0);
}

} // TEST_SUITE
