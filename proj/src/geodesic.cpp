#include "tachyon/geodesic.hpp"

#include <cmath>
#include <exception>
#include <functional>
#include <limits>

#include "tachyon/errors.hpp"
#include "tachyon/io.hpp"
#include "tachyon/ode.hpp"

namespace tgr::geodesic {

using namespace spacetime;

namespace {

constexpr double pi = 3.14159265358979323846;
constexpr double classify_tol = 1e-9;

bool is_equatorial(const MetricSpec& spec, const GeodesicState& s) {
    return chart_of(spec) == Chart::spherical &&
           std::abs(s.point.theta() - pi / 2) < 1e-12 && s.velocity[2] == 0.0;
}

// charges that are exact constants for each family, used by drift monitoring
struct ChargeMask {
    bool gamma = false, L = false, M = false, kappa = false, E = false;
};

ChargeMask charge_mask(const MetricSpec& spec) {
    ChargeMask m;
    std::visit(
        [&](const auto& fam) {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, RobertsonWalker>) {
                m.L = m.M = m.E = true;
            } else if constexpr (std::is_same_v<T, Schwarzschild>) {
                m.gamma = m.L = m.M = m.E = true;
            } else if constexpr (std::is_same_v<T, CylindricalPowerLaw> ||
                                 std::is_same_v<T, SmoothedCylinder>) {
                m.gamma = m.L = m.kappa = m.E = true;
            } else {
                m.gamma = m.L = m.E = true;
                if (fam.symmetry_n == 3)
                    m.M = true;
                else
                    m.kappa = true;
            }
        },
        spec);
    return m;
}

double charge_drift(const ConservedCharges& c, const ConservedCharges& c0,
                    const ChargeMask& m) {
    double d = 0.0;
    if (m.gamma) d = std::max(d, std::abs(c.charge_gamma - c0.charge_gamma));
    if (m.L) d = std::max(d, std::abs(c.L - c0.L));
    if (m.M) d = std::max(d, std::abs(c.M - c0.M));
    if (m.kappa) d = std::max(d, std::abs(c.kappa - c0.kappa));
    if (m.E) d = std::max(d, std::abs(c.script_E - c0.script_E));
    return d;
}

void check_azimuthal_degeneracy(Chart chart, const Vec4& x, const Vec4& v) {
    if (chart != Chart::spherical) return;
    const double s = std::sin(x[2]);
    if (s * s < 1e-24 && v[3] != 0.0)
        throw validation_error(
            "first integrals: sin(theta) = 0 with a nonzero azimuthal rate");
}

} // namespace

GeodesicState make_state(const MetricSpec& spec, const Vec4& x, const Vec4& v) {
    validate_point(spec, x);
    GeodesicState s;
    s.point = SpacetimePoint{chart_of(spec), x};
    s.velocity = v;
    s.q_class = classify(s, spec);
    // rescale onto the affine convention |g xdot xdot| = 1; null directions
    // are scale-free and pass through untouched
    if (s.q_class != 0) {
        const double scale = 1.0 / std::sqrt(std::abs(q_value(spec, s)));
        if (!std::isfinite(scale))
            throw validation_error("geodesic state: quadratic form overflows");
        for (double& c : s.velocity) c *= scale;
    }
    return s;
}

double q_value(const MetricSpec& spec, const GeodesicState& s) {
    return contract(metric_components(spec, s.point.x), s.velocity, s.velocity);
}

int classify(const GeodesicState& s, const MetricSpec& spec) {
    bool all_zero = true;
    for (double v : s.velocity)
        if (v != 0.0) all_zero = false;
    if (all_zero)
        throw validation_error("causal classification: velocity must not vanish");
    const double q = q_value(spec, s);
    if (std::abs(q) < classify_tol) return 0;
    return q > 0 ? +1 : -1;
}

ConservedCharges first_integrals(const MetricSpec& spec, const GeodesicState& s) {
    validate_point(spec, s.point.x);
    const Vec4& x = s.point.x;
    const Vec4& v = s.velocity;
    check_azimuthal_degeneracy(chart_of(spec), x, v);

    ConservedCharges c;
    c.Q = s.q_class;
    const double r = x[1];

    std::visit(
        [&](const auto& fam) {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, RobertsonWalker>) {
                const double A = fam.A(x[0]);
                const double B = fam.B(r);
                const double s2 = std::sin(x[2]) * std::sin(x[2]);
                c.M = A * r * r * s2 * v[3];
                const double L2 =
                    A * A * r * r * r * r * v[2] * v[2] + (s2 > 0 ? c.M * c.M / s2 : 0.0);
                c.L = std::sqrt(L2);
                c.script_E = 0.5 * (A * A * B * v[1] * v[1] + L2 / (r * r));
            } else if constexpr (std::is_same_v<T, Schwarzschild>) {
                const double A = 1.0 - fam.r_s / r;
                const double s2 = std::sin(x[2]) * std::sin(x[2]);
                c.charge_gamma = A * v[0];
                c.M = r * r * s2 * v[3];
                const double L2 =
                    r * r * r * r * v[2] * v[2] + (s2 > 0 ? c.M * c.M / s2 : 0.0);
                c.L = std::sqrt(L2);
                c.script_E = 0.5 * (c.charge_gamma * c.charge_gamma - c.Q);
            } else if constexpr (std::is_same_v<T, CylindricalPowerLaw>) {
                c.charge_gamma = fam.a * std::pow(r, fam.alpha) * v[0];
                c.kappa = fam.c * std::pow(r, fam.gamma_exp()) * v[3];
                c.L = r * r * v[2];
                c.script_E =
                    0.5 * (c.charge_gamma * c.charge_gamma - c.kappa * c.kappa - c.Q);
            } else if constexpr (std::is_same_v<T, SmoothedCylinder>) {
                const double ss = fam.s(r);
                c.charge_gamma = fam.a * std::pow(ss, fam.alpha) * v[0];
                c.kappa = fam.c * std::pow(ss, fam.gamma_exp()) * v[3];
                c.L = r * r * v[2];
                c.script_E =
                    0.5 * (c.charge_gamma * c.charge_gamma - c.kappa * c.kappa - c.Q);
            } else { // LinearizedStatic
                const auto fl = fam.fields(r);
                c.charge_gamma = (1.0 + fl.At) * v[0];
                if (fam.symmetry_n == 3) {
                    const double D = 1.0 - fl.Ct;
                    const double s2 = std::sin(x[2]) * std::sin(x[2]);
                    c.M = D * r * r * s2 * v[3];
                    const double L2 = D * D * r * r * r * r * v[2] * v[2] +
                                      (s2 > 0 ? c.M * c.M / s2 : 0.0);
                    c.L = std::sqrt(L2);
                    c.script_E = 0.5 * (c.charge_gamma * c.charge_gamma - c.Q);
                } else {
                    c.kappa = (1.0 - fl.Dz) * v[3];
                    c.L = (1.0 - fl.Ct) * r * r * v[2];
                    c.script_E = 0.5 * (c.charge_gamma * c.charge_gamma -
                                        c.kappa * c.kappa - c.Q);
                }
            }
        },
        spec);
    return c;
}

namespace {

// geodesic right-hand side; trial stages outside the metric domain poison the
// derivatives with NaN so the adaptive stepper backs off instead of aborting
template <int N>
struct GeodesicRhs;

Vec4 unpack_x_full(const double* y) { return Vec4{y[0], y[1], y[2], y[3]}; }
Vec4 unpack_v_full(const double* y) { return Vec4{y[4], y[5], y[6], y[7]}; }

template <>
struct GeodesicRhs<8> {
    const MetricSpec& spec;
    void operator()(double, const double* y, double* dy) const {
        try {
            const Vec4 x = unpack_x_full(y);
            const Vec4 v = unpack_v_full(y);
            const Connection G = christoffel(spec, x);
            for (int i = 0; i < 4; ++i) dy[i] = y[4 + i];
            for (int lam = 0; lam < 4; ++lam) {
                double acc = 0.0;
                for (int mu = 0; mu < 4; ++mu)
                    for (int nu = 0; nu < 4; ++nu)
                        acc += G[lam][mu][nu] * v[mu] * v[nu];
                dy[4 + lam] = -acc;
            }
        } catch (const std::exception&) {
            for (int i = 0; i < 8; ++i) dy[i] = std::numeric_limits<double>::quiet_NaN();
        }
    }
};

// equatorial reduction: theta = pi/2 held fixed, y = (t, r, w, dt, dr, dw)
template <>
struct GeodesicRhs<6> {
    const MetricSpec& spec;
    void operator()(double, const double* y, double* dy) const {
        try {
            const Vec4 x{y[0], y[1], pi / 2, y[2]};
            const Vec4 v{y[3], y[4], 0.0, y[5]};
            const Connection G = christoffel(spec, x);
            dy[0] = y[3];
            dy[1] = y[4];
            dy[2] = y[5];
            const int idx[3] = {0, 1, 3};
            for (int k = 0; k < 3; ++k) {
                const int lam = idx[k];
                double acc = 0.0;
                for (int mu = 0; mu < 4; ++mu)
                    for (int nu = 0; nu < 4; ++nu)
                        acc += G[lam][mu][nu] * v[mu] * v[nu];
                dy[3 + k] = -acc;
            }
        } catch (const std::exception&) {
            for (int i = 0; i < 6; ++i) dy[i] = std::numeric_limits<double>::quiet_NaN();
        }
    }
};

struct GuardSpec {
    double r_floor = 0.0;  // stop when r <= r_floor
    double r_ceil = 0.0;   // stop when r >= r_ceil (0: none)
    std::string floor_what, ceil_what;
};

GuardSpec make_guard(const MetricSpec& spec, double r0) {
    GuardSpec g;
    g.r_floor = 1e-10 * std::max(1.0, r0);
    g.floor_what = "domain exit: reached the coordinate axis r = 0";
    std::visit(
        [&](const auto& fam) {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, Schwarzschild>) {
                g.r_floor = fam.r_s * (1.0 + 1e-6);
                g.floor_what = "domain exit: reached the horizon guard r_s(1+1e-6)";
            } else if constexpr (std::is_same_v<T, RobertsonWalker>) {
                if (fam.curvature == +1) {
                    g.r_ceil = fam.curvature_radius * (1.0 - 1e-6);
                    g.ceil_what =
                        "domain exit: reached the curvature-pole guard R(1-1e-6)";
                }
            }
        },
        spec);
    return g;
}

} // namespace

Trajectory integrate(const MetricSpec& spec, const GeodesicState& s0, double tau0,
                     double tau1, double tol) {
    if (!(tol > 0.0) || !std::isfinite(tol))
        throw validation_error("geodesic integrate: tol must be positive");
    if (!std::isfinite(tau0) || !std::isfinite(tau1))
        throw validation_error("geodesic integrate: tau span must be finite");
    validate_point(spec, s0.point.x);
    for (double v : s0.velocity)
        if (!std::isfinite(v))
            throw validation_error("geodesic integrate: velocity must be finite");
    if (std::abs(q_value(spec, s0) - s0.q_class) > 1e-6)
        throw validation_error(
            "geodesic integrate: initial velocity does not satisfy its causal class");

    const Chart chart = chart_of(spec);
    const ChargeMask mask = charge_mask(spec);
    Trajectory traj;
    traj.charges = first_integrals(spec, s0);
    traj.tau.push_back(tau0);
    traj.states.push_back(s0);

    const GuardSpec gs = make_guard(spec, s0.point.r());
    const bool reduced = is_equatorial(spec, s0);

    const auto record = [&](double tau, const Vec4& x, const Vec4& v) {
        GeodesicState s;
        s.point = SpacetimePoint{chart, x};
        s.velocity = v;
        s.q_class = s0.q_class;
        traj.tau.push_back(tau);
        traj.states.push_back(s);
        try {
            traj.max_q_drift =
                std::max(traj.max_q_drift, std::abs(q_value(spec, s) - s.q_class));
            traj.max_charge_drift = std::max(
                traj.max_charge_drift,
                charge_drift(first_integrals(spec, s), traj.charges, mask));
        } catch (const std::exception&) {
            // diagnostics only; a state clamped onto a guard may sit at the
            // very edge of the chart
        }
    };

    OdeOptions opt;
    opt.tol = tol;

    OdeStatus status;
    try {
        if (reduced) {
            OdeStepState<6> st;
            st.tau = tau0;
            st.y = {s0.point.x[0], s0.point.x[1], s0.point.x[3],
                    s0.velocity[0], s0.velocity[1], s0.velocity[3]};
            GeodesicRhs<6> rhs{spec};
            std::function<double(double, const double*)> guard =
                [&gs](double, const double* y) {
                    double g = y[1] - gs.r_floor;
                    if (gs.r_ceil > 0.0) g = std::min(g, gs.r_ceil - y[1]);
                    return g;
                };
            status = integrate_ode<6>(
                rhs, guard,
                [&](const OdeStepState<6>&, const OdeStepState<6>& cur) {
                    record(cur.tau, Vec4{cur.y[0], cur.y[1], pi / 2, cur.y[2]},
                           Vec4{cur.y[3], cur.y[4], 0.0, cur.y[5]});
                },
                st, tau1, opt);
        } else {
            OdeStepState<8> st;
            st.tau = tau0;
            for (int i = 0; i < 4; ++i) {
                st.y[std::size_t(i)] = s0.point.x[std::size_t(i)];
                st.y[std::size_t(4 + i)] = s0.velocity[std::size_t(i)];
            }
            GeodesicRhs<8> rhs{spec};
            std::function<double(double, const double*)> guard =
                [&gs](double, const double* y) {
                    double g = y[1] - gs.r_floor;
                    if (gs.r_ceil > 0.0) g = std::min(g, gs.r_ceil - y[1]);
                    return g;
                };
            status = integrate_ode<8>(
                rhs, guard,
                [&](const OdeStepState<8>&, const OdeStepState<8>& cur) {
                    record(cur.tau, unpack_x_full(cur.y.data()),
                           unpack_v_full(cur.y.data()));
                },
                st, tau1, opt);
        }
    } catch (const numerical_error& e) {
        traj.stop = StopReason::step_underflow;
        traj.stop_detail = e.what();
        return traj;
    }

    switch (status) {
    case OdeStatus::completed:
        traj.stop = StopReason::span_end;
        break;
    case OdeStatus::event_stop: {
        traj.stop = StopReason::domain_exit;
        const double r_end = traj.states.back().point.r();
        const bool hit_ceil =
            gs.r_ceil > 0.0 && std::abs(r_end - gs.r_ceil) < std::abs(r_end - gs.r_floor);
        traj.stop_detail = hit_ceil ? gs.ceil_what : gs.floor_what;
        break;
    }
    case OdeStatus::step_limit:
        traj.stop = StopReason::step_limit;
        traj.stop_detail = "step budget exhausted";
        break;
    }
    return traj;
}

std::vector<Trajectory> integrate_batch(const MetricSpec& spec,
                                        const std::vector<GeodesicState>& starts,
                                        double tau0, double tau1, double tol,
                                        Exec mode) {
    std::vector<Trajectory> out(starts.size());
    std::vector<std::exception_ptr> errs(starts.size());
    parallel_for(starts.size(), mode, [&](std::size_t i) {
        try {
            out[i] = integrate(spec, starts[i], tau0, tau1, tol);
        } catch (...) {
            errs[i] = std::current_exception();
        }
    });
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return out;
}

std::vector<Root> radial_turning_points(const ConservedCharges& charges,
                                        const MetricSpec& spec, double r_lo,
                                        double r_hi, int n_scan,
                                        double xtol_factor) {
    if (!(r_lo > 0.0) || !(r_hi > r_lo))
        throw validation_error("turning points: need 0 < r_lo < r_hi");
    if (n_scan < 8)
        throw validation_error("turning points: scan density must be at least 8");

    // rdot^2(r) as fixed by the conserved charges of each family (positive
    // prefactors that cannot vanish in the domain are dropped: only the sign
    // pattern matters for root location)
    std::function<double(double)> F = std::visit(
        [&](const auto& fam) -> std::function<double(double)> {
            using T = std::decay_t<decltype(fam)>;
            const double g2 = charges.charge_gamma * charges.charge_gamma;
            const double L2 = charges.L * charges.L;
            const double k2 = charges.kappa * charges.kappa;
            const double Q = charges.Q;
            if constexpr (std::is_same_v<T, RobertsonWalker>) {
                const double twoE = 2.0 * charges.script_E;
                const int eps = fam.curvature;
                const double R2 = fam.curvature_radius * fam.curvature_radius;
                return [twoE, L2, eps, R2](double r) {
                    double f = twoE - L2 / (r * r);
                    if (eps != 0) f *= 1.0 - eps * r * r / R2;
                    return f;
                };
            } else if constexpr (std::is_same_v<T, Schwarzschild>) {
                const double rs = fam.r_s;
                return [g2, L2, Q, rs](double r) {
                    return g2 - (1.0 - rs / r) * (Q + L2 / (r * r));
                };
            } else if constexpr (std::is_same_v<T, CylindricalPowerLaw>) {
                const T f = fam;
                return [g2, L2, k2, Q, f](double r) {
                    return g2 / (f.a * std::pow(r, f.alpha)) -
                           k2 / (f.c * std::pow(r, f.gamma_exp())) - L2 / (r * r) - Q;
                };
            } else if constexpr (std::is_same_v<T, SmoothedCylinder>) {
                const T f = fam;
                return [g2, L2, k2, Q, f](double r) {
                    const double s = f.s(r);
                    return g2 / (f.a * std::pow(s, f.alpha)) -
                           k2 / (f.c * std::pow(s, f.gamma_exp())) - L2 / (r * r) - Q;
                };
            } else {
                const T f = fam;
                if (f.symmetry_n == 3) {
                    return [g2, L2, Q, f](double r) {
                        const auto fl = f.fields(r);
                        return g2 / (1.0 + fl.At) -
                               L2 / ((1.0 - fl.Ct) * r * r) - Q;
                    };
                }
                return [g2, L2, k2, Q, f](double r) {
                    const auto fl = f.fields(r);
                    return g2 / (1.0 + fl.At) - k2 / (1.0 - fl.Dz) -
                           L2 / ((1.0 - fl.Ct) * r * r) - Q;
                };
            }
        },
        spec);

    // tangency threshold keyed to the typical magnitude of F over the scan
    double f_scale = 0.0;
    for (int i = 0; i <= 32; ++i) {
        const double r = r_lo + (r_hi - r_lo) * i / 32.0;
        const double v = std::abs(F(r));
        if (std::isfinite(v)) f_scale = std::max(f_scale, v);
    }
    f_scale = std::max(f_scale, 1e-30);

    return scan_roots(F, r_lo, r_hi, n_scan, xtol_factor * (r_hi - r_lo), f_scale);
}

std::string trajectory_csv(const Trajectory& traj, const MetricSpec& spec,
                           const std::string& path) {
    std::vector<std::vector<double>> rows;
    rows.reserve(traj.states.size());
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        const auto& s = traj.states[i];
        double qres;
        try {
            qres = q_value(spec, s) - s.q_class;
        } catch (const std::exception&) {
            qres = std::numeric_limits<double>::quiet_NaN();
        }
        rows.push_back({traj.tau[i], s.point.x[0], s.point.x[1], s.point.x[2],
                        s.point.x[3], s.velocity[0], s.velocity[1], s.velocity[2],
                        s.velocity[3], qres});
    }
    return io::write_csv(path, "tau,t,r,theta,phi_or_z,dt,dr,dtheta,dphi_or_dz,q_residual",
                     rows);
}

} // namespace tgr::geodesic
