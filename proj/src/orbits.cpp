#include "tachyon/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include "tachyon/errors.hpp"
#include "tachyon/io.hpp"
#include "tachyon/quadrature.hpp"
#include "tachyon/roots.hpp"

namespace tgr::orbits {

using namespace spacetime;

namespace {
constexpr double pi = 3.14159265358979323846;
constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();
} // namespace

// ---------------------------------------------------------------------------
// Scattering

void ScatteringSetup::validate() const {
    if (!(r_s > 0.0) || !std::isfinite(r_s))
        throw validation_error("scattering: r_s must be positive");
    if (!(b_impact > 0.0) || !std::isfinite(b_impact))
        throw validation_error("scattering: impact parameter must be positive");
    if (Q != -1 && Q != 0 && Q != 1)
        throw validation_error("scattering: causal class must be -1, 0 or +1");
    if (Q == -1 && !(v > 1.0))
        throw validation_error("scattering: tachyon setups need v > 1");
    if (Q == +1 && !(v > 0.0 && v < 1.0))
        throw validation_error("scattering: subluminal setups need 0 < v < 1");
    if (Q == 0 && v != 1.0)
        throw validation_error("scattering: null setups need v = 1");
}

double ScatteringSetup::gamma_sq() const {
    if (Q == 0) return std::numeric_limits<double>::infinity();
    return double(Q) / (1.0 - v * v);
}

double ScatteringSetup::v2g2() const {
    // gamma^2 = Q + v^2 gamma^2, so v^2 gamma^2 = gamma^2 - Q; for null rays
    // only the ratio v^2 gamma^2 / L^2 = 1/b^2 enters, normalized here to 1.
    if (Q == 0) return 1.0;
    return gamma_sq() - double(Q);
}

double ScatteringSetup::L() const { return b_impact * std::sqrt(v2g2()); }

double chi_factor(const ScatteringSetup& setup) {
    setup.validate();
    if (setup.Q == 0) return 2.0;
    return 2.0 + double(setup.Q) / setup.v2g2();
}

DeflectionResult deflection_angle(const ScatteringSetup& setup,
                                  DeflectionMethod method) {
    setup.validate();
    DeflectionResult out;
    if (method == DeflectionMethod::analytic) {
        out.delta_phi = setup.r_s / setup.b_impact * chi_factor(setup);
        return out;
    }

    // orbital equation u'^2 = F(u) = rs u^3 - u^2 + c1 u + c0 for u = 1/r(phi)
    const double rs = setup.r_s;
    const double b = setup.b_impact;
    const double L2 = setup.L() * setup.L();
    const double c1 = double(setup.Q) * rs / L2;
    const double c0 = setup.v2g2() / L2; // = 1/b^2
    const auto F = [rs, c1, c0](double u) {
        return ((rs * u - 1.0) * u + c1) * u + c0;
    };

    // turning point: smallest positive root of F
    const double u_hi = std::max(3.0 / b, 0.8 / rs);
    const auto roots = scan_roots(F, 0.0, u_hi, 16384, 1e-15 * u_hi, c0);
    if (roots.empty() || roots.front().tangency) {
        out.captured = true;
        out.delta_phi = nan_v;
        return out;
    }
    double ut = roots.front().r;
    for (int it = 0; it < 6; ++it) { // Newton polish of the simple root
        const double dF = (3.0 * rs * ut - 2.0) * ut + c1;
        if (dF == 0.0) break;
        ut -= F(ut) / dF;
    }

    // synthetic division F(u) = (ut - u) G(u); the substitution u = ut(1-w^2)
    // removes the square-root endpoint
    const double p1 = rs * ut - 1.0;
    const double p0 = p1 * ut + c1;
    const auto G = [rs, p1, p0](double u) { return -((rs * u + p1) * u + p0); };
    const auto integrand = [&](double w) {
        const double u = ut * (1.0 - w * w);
        return 1.0 / std::sqrt(G(u));
    };
    const double I =
        integrate_or_throw(integrand, 0.0, 1.0, 0.0, 1e-13,
                           "deflection: orbital integral failed to converge", 4000);
    out.delta_phi = 4.0 * std::sqrt(ut) * I - pi;
    return out;
}

std::vector<DeflectRow> deflection_scan(const std::vector<ScatteringSetup>& setups,
                                        Exec mode) {
    std::vector<DeflectRow> rows(setups.size());
    std::vector<std::exception_ptr> errs(setups.size());
    parallel_for(setups.size(), mode, [&](std::size_t i) {
        try {
            const auto& s = setups[i];
            DeflectRow r;
            r.Q = s.Q;
            r.v = s.v;
            r.b = s.b_impact;
            r.rs = s.r_s;
            r.chi_analytic = chi_factor(s);
            r.delta_phi_analytic = s.r_s / s.b_impact * r.chi_analytic;
            const auto num = deflection_angle(s, DeflectionMethod::numeric);
            r.captured = num.captured;
            r.delta_phi_numeric = num.delta_phi;
            r.abs_err = num.captured ? nan_v
                                     : std::abs(num.delta_phi - r.delta_phi_analytic);
            rows[i] = r;
        } catch (...) {
            errs[i] = std::current_exception();
        }
    });
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return rows;
}

std::string deflect_csv(const std::vector<DeflectRow>& rows, const std::string& path) {
    std::vector<std::vector<double>> data;
    data.reserve(rows.size());
    for (const auto& r : rows)
        data.push_back({double(r.Q), r.v, r.b, r.rs, r.chi_analytic,
                        r.delta_phi_numeric, r.delta_phi_analytic, r.abs_err});
    return io::write_csv(path,
                     "Q,v,b,rs,chi_analytic,delta_phi_numeric,delta_phi_analytic,abs_err",
                     data);
}

// ---------------------------------------------------------------------------
// Effective potentials

namespace {

// potential term of the radial bracket, in the convention
// rdot^2 = 2E - 2[U(r) + L^2/2r^2]
double cyl_U(const linfield::FieldProfile& p, double g2, double k2, double r) {
    return (g2 + k2) * (p.V0(r) + p.V3(r)) + 0.5 * (g2 - k2) * p.f(r);
}

} // namespace

EffectivePotentialCurve cylindrical_effective_potential(
    const linfield::FieldProfile& profile, double charge_gamma, double kappa,
    double L) {
    if (profile.n != 2)
        throw validation_error("effective potential: needs an n=2 profile");
    const double g2 = charge_gamma * charge_gamma;
    const double k2 = kappa * kappa;
    const double L2 = L * L;

    EffectivePotentialCurve curve;
    curve.r = profile.r_grid;
    curve.U.reserve(curve.r.size());
    curve.centrifugal.reserve(curve.r.size());
    for (double r : curve.r) {
        curve.U.push_back(cyl_U(profile, g2, k2, r));
        curve.centrifugal.push_back(0.5 * L2 / (r * r));
    }

    std::size_t imin = 0;
    double wmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < curve.r.size(); ++i) {
        const double w = curve.U[i] + curve.centrifugal[i];
        if (w < wmin) {
            wmin = w;
            imin = i;
        }
    }
    const auto W = [&](double r) {
        return cyl_U(profile, g2, k2, r) + 0.5 * L2 / (r * r);
    };
    if (imin == 0 || imin + 1 == curve.r.size()) {
        curve.minimum_on_boundary = true;
        curve.r_star = curve.r[imin];
        curve.U_star = wmin;
    } else {
        curve.has_minimum = true;
        curve.r_star = golden_min(W, curve.r[imin - 1], curve.r[imin + 1],
                                  1e-12 * curve.r[imin]);
        curve.U_star = W(curve.r_star);
    }
    return curve;
}

SphericalVerdict spherical_bound_analysis(const linfield::FieldProfile& profile,
                                          const geodesic::ConservedCharges& charges) {
    if (profile.n != 3)
        throw validation_error("spherical bound analysis: needs an n=3 profile");
    if (charges.Q != -1)
        throw validation_error("spherical bound analysis: out of scope for Q != -1");

    const double g2 = charges.charge_gamma * charges.charge_gamma;
    const double L2 = charges.L * charges.L;
    const double twoE = g2 + 1.0; // 2E = gamma^2 - Q with Q = -1

    SphericalVerdict verdict;
    auto& curve = verdict.curve;
    curve.script_E = 0.5 * twoE;
    curve.r = profile.r_grid;
    for (double r : curve.r) {
        // rdot^2 = 2E - gamma^2 A(r) - L^2/r^2 with A = 2 V0 + 3f/2
        const double At = 2.0 * profile.V0(r) + 1.5 * profile.f(r);
        curve.U.push_back(0.5 * g2 * At);
        curve.centrifugal.push_back(0.5 * L2 / (r * r));
    }

    const double W_far = curve.U.back() + curve.centrifugal.back();
    char buf[256];
    if (twoE > 2.0 * W_far) {
        verdict.no_bound_possible = true;
        std::snprintf(buf, sizeof buf,
                      "2E = gamma^2 + 1 = %.6g stays above the potential at large "
                      "radius (2W(r_max) = %.6g); the radial bracket is positive "
                      "beyond every turning point, so the motion escapes",
                      twoE, 2.0 * W_far);
    } else {
        verdict.no_bound_possible = false;
        std::snprintf(buf, sizeof buf,
                      "potential at the grid edge (2W = %.6g) exceeds 2E = %.6g",
                      2.0 * W_far, twoE);
    }
    verdict.reason = buf;
    return verdict;
}

// ---------------------------------------------------------------------------
// Bound orbits in the n=2 weak field

geodesic::GeodesicState bound_orbit_state(const MetricSpec& spec,
                                          const BoundOrbit& orbit, double r0) {
    const auto* lin = std::get_if<LinearizedStatic>(&spec);
    if (!lin || lin->symmetry_n != 2)
        throw validation_error("bound orbit state: needs an n=2 linearized metric");
    const auto fl = lin->fields(r0);
    const double tdot = orbit.gamma / (1.0 + fl.At);
    const double zdot = orbit.kappa / (1.0 - fl.Dz);
    const double thdot = orbit.L / ((1.0 - fl.Ct) * r0 * r0);
    // Q = -1: (1-Br) rdot^2 = gamma^2/(1+At) - kappa^2/(1-Dz) - L^2/((1-Ct)r^2) + 1
    const double F = orbit.gamma * orbit.gamma / (1.0 + fl.At) -
                     orbit.kappa * orbit.kappa / (1.0 - fl.Dz) -
                     orbit.L * orbit.L / ((1.0 - fl.Ct) * r0 * r0) + 1.0;
    const double rdot = std::sqrt(std::max(0.0, F) / (1.0 - fl.Br));
    return geodesic::make_state(spec, Vec4{0.0, r0, 0.0, 0.0},
                                Vec4{tdot, rdot, thdot, zdot});
}

BoundOrbit bound_orbit_search(const linfield::ProfilePtr& profile) {
    if (!profile || profile->n != 2)
        throw validation_error("bound orbit search: needs an n=2 profile");
    const auto& p = *profile;
    const MetricSpec spec = LinearizedStatic{profile, 2};

    const double scale = p.scale();
    const double r_lo = p.r_min();
    const double r_cap = 0.5 * p.r_max();

    // radial subsample for the well scan
    std::vector<double> rs;
    for (std::size_t i = 0; i < p.r_grid.size(); i += 4)
        if (p.r_grid[i] <= r_cap) rs.push_back(p.r_grid[i]);

    BoundOrbit best;
    best.margin = -std::numeric_limits<double>::infinity();

    const double gammas[] = {0.5, 1.0, 1.5, 2.0, 3.0};
    for (double gam : gammas) {
        const double g2 = gam * gam;
        for (int li = 0; li < 14; ++li) {
            const double L = scale * std::pow(10.0, -3.0 + 5.0 * li / 13.0);
            const double L2 = L * L;

            // fixed point on kappa: pick 2E = gamma^2 - kappa^2 + 1 at the well
            // midpoint, which itself moves (weakly) with kappa
            double kap = gam;
            double E = 0.0, Wmin = 0.0, Wcap = 0.0, rstar = 0.0;
            bool ok = false;
            for (int it = 0; it < 40; ++it) {
                const double k2 = kap * kap;
                const auto W = [&](double r) {
                    return cyl_U(p, g2, k2, r) + 0.5 * L2 / (r * r);
                };
                std::size_t imin = 0;
                double wmin = std::numeric_limits<double>::infinity();
                for (std::size_t i = 0; i < rs.size(); ++i) {
                    const double w = W(rs[i]);
                    if (w < wmin) {
                        wmin = w;
                        imin = i;
                    }
                }
                if (imin == 0 || imin + 1 == rs.size()) {
                    ok = false;
                    break;
                }
                rstar = golden_min(W, rs[imin - 1], rs[imin + 1], 1e-10 * rs[imin]);
                Wmin = W(rstar);
                Wcap = std::min(W(r_lo), W(r_cap));
                if (!(Wcap > Wmin)) {
                    ok = false;
                    break;
                }
                const double E_target = Wmin + 0.5 * (Wcap - Wmin);
                const double k2_new = g2 + 1.0 - 2.0 * E_target;
                if (k2_new < 0.0) {
                    ok = false;
                    break;
                }
                const double kap_new = std::sqrt(k2_new);
                const bool conv = std::abs(kap_new - kap) < 1e-14 * (1.0 + kap);
                kap = kap_new;
                E = E_target;
                ok = true;
                if (conv) break;
            }
            if (!ok) continue;

            const double margin = std::min(E - Wmin, Wcap - E);
            if (margin > best.margin) {
                best.margin = margin;
                best.gamma = gam;
                best.kappa = kap;
                best.L = L;
                best.script_E = E;
                best.r_star = rstar;
                best.well_min = Wmin;
                best.well_cap = Wcap;
            }
            if (margin <= 0.0) continue;

            // candidate binds; pin the turning radii with the exact radial law
            BoundOrbit found = best;
            found.found = true;
            const auto state = bound_orbit_state(spec, found, rstar);
            const auto charges = geodesic::first_integrals(spec, state);
            const auto turns =
                geodesic::radial_turning_points(charges, spec, r_lo, r_cap, 4096);
            double peri = 0.0, apo = 0.0;
            for (const auto& t : turns) {
                if (t.tangency) continue;
                if (t.r < rstar) peri = std::max(peri, t.r);
                else if (apo == 0.0) apo = t.r;
            }
            if (peri == 0.0 || apo == 0.0) continue; // exact law disagrees; keep looking
            found.r_peri = peri;
            found.r_apo = apo;
            found.script_E = charges.script_E;
            return found;
        }
    }
    return best;
}

} // namespace tgr::orbits
