#pragma once

#include <string>
#include <vector>

#include "tachyon/parallel.hpp"
#include "tachyon/roots.hpp"
#include "tachyon/spacetime.hpp"

namespace tgr::geodesic {

using spacetime::MetricSpec;
using spacetime::SpacetimePoint;

// Instantaneous state of a test particle: coordinates, parameter derivatives
// dx^mu/dtau, and the causal class Q = g_{mu nu} xdot^mu xdot^nu in {-1,0,+1}
// (tachyon / null / ordinary).  tau is the real affine parameter normalized
// by that Q, for tachyons included.
struct GeodesicState {
    SpacetimePoint point;
    Vec4 velocity{};
    int q_class = -1;
};

// Build a state at x from the direction v.  Timelike and spacelike
// directions are rescaled so the quadratic form lands exactly on the causal
// class; null directions are scale-free and pass through unchanged.
GeodesicState make_state(const MetricSpec& spec, const Vec4& x, const Vec4& v);

// Quadratic-form value g_{mu nu} xdot^mu xdot^nu of a state.
double q_value(const MetricSpec& spec, const GeodesicState& s);

// Sign of the quadratic form; |q| below the classification tolerance (1e-9)
// maps to 0 (null).
int classify(const GeodesicState& s, const MetricSpec& spec);

// First integrals of the catalog metrics.  Charges that do not exist for a
// family (kappa in spherical charts, M in cylindrical ones, charge_gamma in
// expanding universes) are reported as 0 and skipped by drift monitoring.
struct ConservedCharges {
    double charge_gamma = 0.0; // time-translation charge g00*tdot
    double L = 0.0;            // total angular momentum magnitude
    double M = 0.0;            // azimuthal charge (spherical charts)
    double kappa = 0.0;        // axial-translation charge (cylindrical charts)
    double script_E = 0.0;     // radial-equation constant
    int Q = -1;
};

ConservedCharges first_integrals(const MetricSpec& spec, const GeodesicState& s);

enum class StopReason { span_end, domain_exit, step_underflow, step_limit };

struct Trajectory {
    std::vector<double> tau;
    std::vector<GeodesicState> states; // one per accepted step, s0 included
    StopReason stop = StopReason::span_end;
    std::string stop_detail;
    double max_q_drift = 0.0;      // max |g xdot xdot - Q| over the run
    double max_charge_drift = 0.0; // max drift of the applicable charges
    ConservedCharges charges;      // evaluated at the initial state

    const GeodesicState& back() const { return states.back(); }
};

// Integrate xddot^lam + Gamma^lam_{mu nu} xdot^mu xdot^nu = 0 over tau_span
// with an adaptive 5(4) pair.  States with theta = pi/2, theta_dot = 0 in a
// spherical chart run through the reduced equatorial system.  Domain guards
// stop just outside the Schwarzschild horizon (r_s(1+1e-6)) and just inside
// the curvature pole of the closed universe (R(1-1e-6)); a step underflow
// near a singular point returns the partial trajectory with a diagnostic.
Trajectory integrate(const MetricSpec& spec, const GeodesicState& s0,
                     double tau0, double tau1, double tol);

// Batch form of integrate(); items are independent, so the serial and the
// OpenMP path give bitwise-identical trajectories.
std::vector<Trajectory> integrate_batch(const MetricSpec& spec,
                                        const std::vector<GeodesicState>& starts,
                                        double tau0, double tau1, double tol,
                                        Exec mode = Exec::parallel);

// Roots of rdot^2(r) = 0 from the closed-form radial first integral of the
// given family, located by a sign-change scan plus bisection; grazing
// (multiplicity-2) roots come back flagged as tangencies.
std::vector<Root> radial_turning_points(const ConservedCharges& charges,
                                        const MetricSpec& spec, double r_lo,
                                        double r_hi, int n_scan = 2048,
                                        double xtol_factor = 1e-12);

// CSV export: tau,t,r,theta,phi_or_z,dt,dr,dtheta,dphi_or_dz,q_residual with
// one row per accepted step.  Returns the text; path "-" writes to stdout.
std::string trajectory_csv(const Trajectory& traj, const MetricSpec& spec,
                           const std::string& path);

} // namespace tgr::geodesic
