#pragma once

#include <string>
#include <vector>

#include "tachyon/geodesic.hpp"
#include "tachyon/linfield.hpp"
#include "tachyon/spacetime.hpp"

namespace tgr::orbits {

using spacetime::MetricSpec;

// Asymptotic scattering data off a Schwarzschild center.  The causal class
// fixes the speed domain: v > 1 for Q = -1, v < 1 for Q = +1, v = 1 for null.
struct ScatteringSetup {
    double r_s = 1.0;
    double v = 2.0;
    double b_impact = 10.0;
    int Q = -1;

    void validate() const;
    // gamma^2 = Q + v^2 gamma^2  =>  gamma^2 = Q/(1-v^2)
    double gamma_sq() const;
    double v2g2() const; // v^2 gamma^2 = gamma^2 - Q
    double L() const;    // b v gamma
};

enum class DeflectionMethod { analytic, numeric };

struct DeflectionResult {
    double delta_phi = 0.0;
    bool captured = false; // numeric branch found no outer turning point
};

// First-order deflection (r_s/b)(2 + Q/(v^2 gamma^2)) or the exact orbital
// integral of u'^2 = r_s u^3 - u^2 + (Q r_s u + v^2 gamma^2)/L^2.
DeflectionResult deflection_angle(const ScatteringSetup& setup,
                                  DeflectionMethod method);
double chi_factor(const ScatteringSetup& setup); // 2 + Q/(v^2 gamma^2)

struct EffectivePotentialCurve {
    std::vector<double> r;
    std::vector<double> U;           // potential term alone
    std::vector<double> centrifugal; // L^2 / 2 r^2
    double script_E = 0.0;
    bool has_minimum = false;        // interior minimum located
    bool minimum_on_boundary = false;
    double r_star = 0.0, U_star = 0.0; // minimum of U + centrifugal
};

// Radial curve U(r) = (gamma^2+kappa^2)(V0+V3) + (gamma^2-kappa^2) f/2 of the
// cylindrical weak field, plus the centrifugal term; the minimum is refined
// by golden section after a grid scan.
EffectivePotentialCurve cylindrical_effective_potential(
    const linfield::FieldProfile& profile, double charge_gamma, double kappa,
    double L);

struct SphericalVerdict {
    bool no_bound_possible = true;
    std::string reason;
    EffectivePotentialCurve curve;
};

// Tachyon (Q=-1) radial bracket in the spherical weak field:
// rdot^2 = 2E - gamma^2 A(r) - L^2/r^2 with 2E = gamma^2 + 1 > 0 while the
// potential dies off at infinity, so no well can trap the motion.
SphericalVerdict spherical_bound_analysis(const linfield::FieldProfile& profile,
                                          const geodesic::ConservedCharges& charges);

struct BoundOrbit {
    bool found = false;
    double gamma = 0.0, kappa = 0.0, L = 0.0, script_E = 0.0;
    double r_peri = 0.0, r_apo = 0.0;
    double r_star = 0.0;   // well minimum used by the search
    double margin = 0.0;   // well-confinement margin of the best candidate
    double well_min = 0.0, well_cap = 0.0;
};

// Search charge space (gamma, kappa, L) for a trapped radial bracket in the
// n=2 weak field: 2 script_E = gamma^2 - kappa^2 + 1 strictly inside the well
// of the effective curve, with the outer turning point kept below half the
// grid radius so the log-growing rim is genuine and not a truncation artifact.
BoundOrbit bound_orbit_search(const linfield::ProfilePtr& profile);

// State at radius r0 on the orbit with the given charges (rdot >= 0 branch);
// exact in the metric, so first_integrals reproduces gamma, kappa, L.
geodesic::GeodesicState bound_orbit_state(const MetricSpec& spec,
                                          const BoundOrbit& orbit, double r0);

struct DeflectRow {
    int Q = -1;
    double v = 0.0, b = 0.0, rs = 0.0;
    double chi_analytic = 0.0;
    double delta_phi_numeric = 0.0;
    double delta_phi_analytic = 0.0;
    double abs_err = 0.0;
    bool captured = false;
};

// CSV: Q,v,b,rs,chi_analytic,delta_phi_numeric,delta_phi_analytic,abs_err
// (numeric columns are nan on captured rows).  Returns the text; "-" writes
// to stdout.
std::string deflect_csv(const std::vector<DeflectRow>& rows, const std::string& path);

// Scan a grid of setups, optionally in parallel (rows are independent).
std::vector<DeflectRow> deflection_scan(const std::vector<ScatteringSetup>& setups,
                                        Exec mode = Exec::parallel);

} // namespace tgr::orbits
