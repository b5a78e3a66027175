#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "tachyon/interp.hpp"

namespace tgr::linfield {

// Radial envelope of the circulating-flow kinetic stress b(r) >= 0.
struct SourceEnvelope {
    enum class Shape { top_hat, gaussian, poly_cutoff };
    Shape shape = Shape::top_hat;
    double b0 = 1.0;    // central amplitude
    double R = 1.0;     // cutoff radius (top_hat, poly_cutoff)
    double sigma = 1.0; // gaussian width
    int k = 2;          // poly_cutoff smoothness exponent
    int n = 3;          // spatial dimension of the static problem: 2 or 3

    void validate() const;
    double scale() const;      // characteristic radius (R or sigma)
    double b(double r) const;  // envelope value
    double breakpoint() const; // radius where b is non-smooth; 0 if none
    // analytic tail integral J(r) = \int_r^inf b(s)/s ds
    double tail_J(double r) const;
    std::string shape_name() const;
};

// Divergence-free circular-flow stress: T_ij = delta_ij a(r) + D_ij b(r)
// with D_ij = delta_ij - n x_i x_j / r^2.  Momentum conservation fixes the
// isotropic part: a = (n-1) [ b - n J ], J(r) = \int_r^inf b/s ds, which
// decays to zero and integrates to zero against r^{n-1}.
struct StressProfile {
    SourceEnvelope envelope;
    double flow_speed = 1.0; // source speed; T00 defaults to b / v^2
    std::function<double(double)> T00; // energy density rho(r)
    std::function<double(double)> T33; // axial pressure envelope (n=2 only)

    double b(double r) const { return envelope.b(r); }
    double a_of_r(double r) const;
    double J(double r) const; // \int_r^inf b/s ds (analytic or quadrature)
};

StressProfile build_stress(const SourceEnvelope& env, double flow_speed = 1.0,
                           std::function<double(double)> T00_override = {},
                           std::function<double(double)> T33_override = {});

// Static weak-field solution around a conserved circular flow.
//
//   h_ij = delta_ij f(r) + D_ij g(r)
//   g(r)  = -16 pi G/(n+2) [ r^-n M(r) + r^2 J(r) ],  M(r) = \int_0^r s^{n+1} b ds
//   f'(r) = -16 pi G (n-1) r J(r),                    f(inf) = 0
//   h_00  = 4 V0,  h_33 = 4 V3 (n=2)
//
// Freshly solved profiles evaluate fields and derivatives from the cumulative
// integrals above (derivatives are exact in M and J); profiles imported from
// CSV fall back to spline interpolation of the sampled columns.
class FieldProfile {
public:
    int n = 3;
    double G = 1.0;
    SourceEnvelope envelope;
    bool from_samples = false;

    std::vector<double> r_grid;
    std::vector<double> f_samples, g_samples, V0_samples, V3_samples;

    double asymptotic_coeff = 0.0; // g -> asymptotic_coeff / r^n
    double f0 = 0.0;               // f(0) from the cumulative solution
    double log_zero_radius = 1.0;  // n=2: radius where the log potentials vanish
    double mass_total = 0.0;       // n=3: 4 pi \int r^2 rho ; n=2: 2 pi \int r rho
    double lambda3_total = 0.0;    // n=2: 2 pi \int r T33
    double flow_speed = 1.0;
    double K_pref = 0.0;     // 16 pi G / (n+2) as used by the solve
    double f_end = 0.0;      // f at r_max (zero for compact envelopes)
    double Mkin_total = 0.0; // M at r_max

    double r_min() const { return r_grid.front(); }
    double r_max() const { return r_grid.back(); }
    double scale() const { return envelope.scale(); }

    double f(double r) const;
    double f_prime(double r) const;
    double g(double r) const;
    double g_prime(double r) const;
    double g_second(double r) const;
    double V0(double r) const;
    double V0_prime(double r) const;
    double V3(double r) const;
    double V3_prime(double r) const;
    double lensing_potential(double r) const { return V0(r) + V3(r); }

    // Metric-consistent (value, slope) pairs: the slope is the exact
    // derivative of the value path actually returned (spline plus its own
    // derivative in-grid, matched closed forms outside), so a connection
    // built from the slopes conserves geodesic invariants to integrator
    // accuracy instead of plateauing at the interpolation error.
    struct ValueSlope {
        double value = 0.0, slope = 0.0;
    };
    ValueSlope f_pair(double r) const;
    ValueSlope g_pair(double r) const;
    ValueSlope V0_pair(double r) const;
    ValueSlope V3_pair(double r) const;

    // internals used by the solver and the residual checks
    double M_kin(double r) const;  // \int_0^r s^{n+1} b ds
    double J_tail(double r) const; // \int_r^inf b/s ds
    double b_at(double r) const;
    double rho_at(double r) const;
    double enclosed(double r) const; // n=3: 4 pi \int_0^r s^2 rho ; n=2: 2 pi \int_0^r s rho

    CubicSpline sp_Mkin, sp_J, sp_f, sp_g, sp_V0, sp_V3;
    CubicSpline sp_lam, sp_lam3;  // enclosed source strength for V0 / V3
    std::function<double(double)> rho_fn, t33_fn;
};

using ProfilePtr = std::shared_ptr<const FieldProfile>;

// Solve the f,g system and the static potentials on a log grid
// [1e-3, 1e+3] * scale with grid_points samples.
FieldProfile solve_fg(const StressProfile& stress, double G = 1.0,
                      int grid_points = 4096);

// Static potentials alone: V0' = G m(<r)/r^2 (n=3) or 2 G lambda(<r)/r (n=2).
struct Potentials {
    std::function<double(double)> V0, V0_prime, V3, V3_prime;
    double mass_total = 0.0, lambda3_total = 0.0, log_zero_radius = 0.0;
};
Potentials newtonian_potentials(const StressProfile& stress, double G = 1.0);

// Integral moments of the source: zeroth \int T_kj d^n x and first
// \int x_k T_ij d^n x.  `kinetic_only` drops the conservation-completing
// isotropic part (regression guard: its zeroth moment must NOT vanish).
enum class StressPart { conserved, kinetic_only };
struct VirialMoments {
    std::array<std::array<double, 3>, 3> zeroth{};
    std::array<std::array<std::array<double, 3>, 3>, 3> first{};
    double max_zeroth() const;
    double max_first() const;
};
VirialMoments virial_moments(const StressProfile& stress,
                             StressPart part = StressPart::conserved,
                             double abs_tol = 1e-12);

// Radial force per unit probe energy next to an infinite straight line
// source.  lambda_or_P is rho*gamma (mass line) or the pressure per unit
// length (weak-field circular model).
enum class LineKind { mass_line, tachyon_line };
enum class LineContext { exact_cylinder, weak_field };
double line_source_force(double lambda_or_P, double r, LineKind kind,
                         LineContext ctx, double G = 1.0,
                         double source_speed = 0.0, double probe_zdot = 0.0);
// d^2 r / dt^2 for a fast probe: force divided by lorentz_gamma^2.
double coordinate_acceleration(double force, double probe_lorentz_gamma);
// pressure per unit length of a tachyon line at fixed rest-mass line density
// nm: P = nm v^2 / sqrt(v^2 - 1); grows like |v| at large v.
double tachyon_line_pressure(double nm, double v);

// CSV ("r,f,g,V0,V3", 17 significant digits) plus a JSON sidecar carrying
// n, envelope parameters, prefactor conventions and asymptotic_coeff.
void write_profile(const FieldProfile& p, const std::string& csv_path,
                   const std::string& json_path);
FieldProfile read_profile(const std::string& csv_path, const std::string& json_path);

} // namespace tgr::linfield
