#include "tachyon/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tachyon/errors.hpp"
#include "tachyon/io.hpp"
#include "tachyon/ode.hpp"
#include "tachyon/quadrature.hpp"

namespace tgr::kinematics {

namespace {
constexpr double pi = 3.14159265358979323846;
constexpr double two_pi_sq = 2.0 * pi * pi;
} // namespace

// ---------------------------------------------------------------------------
// Exchange and packets

void ExchangeScenario::validate() const {
    if (!std::isfinite(x0))
        throw validation_error("exchange: emission position must be finite");
    if (!(std::abs(v) < 1.0))
        throw validation_error("exchange: ship speed must satisfy |v| < 1");
    if (!(V > 1.0) || !std::isfinite(V))
        throw validation_error("exchange: signal speed must exceed 1");
}

ExchangeTimes exchange_times(const ExchangeScenario& sc) {
    sc.validate();
    ExchangeTimes out;
    const double gamma = 1.0 / std::sqrt(1.0 - sc.v * sc.v);
    out.dt_earth = sc.x0 / (sc.V - sc.v);
    out.dt_ship = gamma * (1.0 - sc.v * sc.V) * out.dt_earth;
    out.reversed = sc.v * sc.V > 1.0;
    return out;
}

PacketTransform packet_size_transform(double V, double decay_rate, double v,
                                      double threshold) {
    if (!(V > 1.0) || !std::isfinite(V))
        throw validation_error("packet: tachyon speed must exceed 1");
    if (!(decay_rate > 0.0) || !std::isfinite(decay_rate))
        throw validation_error("packet: decay rate must be positive");
    if (!(std::abs(v) < 1.0))
        throw validation_error("packet: frame speed must satisfy |v| < 1");
    PacketTransform out;
    out.dx_rest = V / decay_rate;
    const double gamma = 1.0 / std::sqrt(1.0 - v * v);
    const double factor = std::abs(1.0 - v * V);
    if (factor < threshold) {
        out.diverges = true;
        out.dx_boosted = std::numeric_limits<double>::infinity();
    } else {
        out.dx_boosted = V / (gamma * decay_rate * factor);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Shell counting and spectra

double on_shell_density(double E0, double m) {
    if (!(E0 >= 0.0) || !std::isfinite(E0))
        throw validation_error("on-shell density: E0 must be >= 0");
    if (!(m >= 0.0) || !std::isfinite(m))
        throw validation_error("on-shell density: mass must be >= 0");
    return E0 * std::sqrt(E0 * E0 + m * m) / two_pi_sq;
}

void SpectrumModel::validate() const {
    if (!(E0 > 0.0) || !std::isfinite(E0))
        throw validation_error("spectrum: endpoint energy must be positive");
    if (variant != Variant::massless) {
        if (!(m > 0.0) || !std::isfinite(m))
            throw validation_error("spectrum: massive variants need m > 0");
        if (variant == Variant::bradyonic && !(m < E0))
            throw validation_error("spectrum: bradyonic support needs m < E0");
    }
}

double SpectrumModel::support_max() const {
    return variant == Variant::bradyonic ? E0 - m : E0;
}

double beta_spectrum(const SpectrumModel& model, double Ee) {
    model.validate();
    if (!(Ee >= 0.0) || Ee > model.support_max() + 1e-15 * model.E0)
        throw validation_error("spectrum: electron energy outside the support");
    const double d = model.E0 - Ee;
    switch (model.variant) {
    case SpectrumModel::Variant::massless:
        return d * d;
    case SpectrumModel::Variant::bradyonic:
        return d * std::sqrt(std::max(0.0, d * d - model.m * model.m));
    case SpectrumModel::Variant::tachyonic:
        return d * std::sqrt(d * d + model.m * model.m);
    }
    return 0.0;
}

EndpointSlope endpoint_slope(SpectrumModel::Variant variant) {
    switch (variant) {
    case SpectrumModel::Variant::massless: return EndpointSlope::zero;
    case SpectrumModel::Variant::bradyonic: return EndpointSlope::infinite;
    case SpectrumModel::Variant::tachyonic: return EndpointSlope::finite_negative;
    }
    return EndpointSlope::zero;
}

EndpointSlope endpoint_slope_fit(const SpectrumModel& model, double window,
                                 double* slope_out) {
    model.validate();
    if (!(window > 0.0) || window >= model.support_max())
        throw validation_error("spectrum: slope window must be inside the support");
    const double edge = model.support_max();
    const auto slope_at = [&](double h) {
        // spectrum vanishes at the endpoint, so the secant is -S(edge-h)/h
        return -beta_spectrum(model, edge - h) / h;
    };
    const double s1 = slope_at(window);
    const double s2 = slope_at(window / 10.0);
    if (slope_out) *slope_out = s2;
    const double ratio = std::abs(s1) > 0 ? std::abs(s2) / std::abs(s1) : 0.0;
    if (ratio < 0.3) return EndpointSlope::zero;      // slope vanishes with window
    if (ratio > 2.0) return EndpointSlope::infinite;  // slope grows as window shrinks
    return EndpointSlope::finite_negative;
}

// ---------------------------------------------------------------------------
// Oscillation phases

double oscillation_phase(MassModel model, double m2, double k_or_omega,
                         double baseline) {
    if (!(m2 >= 0.0) || !std::isfinite(m2))
        throw validation_error("oscillation: m^2 must be >= 0");
    if (!(k_or_omega > 0.0) || !std::isfinite(k_or_omega))
        throw validation_error("oscillation: wavenumber must be positive");
    if (k_or_omega * k_or_omega <= m2)
        throw validation_error(
            "oscillation: the small-mass expansion requires k > m");
    const double mag = m2 / (2.0 * k_or_omega) * baseline;
    return model == MassModel::bradyonic ? -mag : +mag;
}

double phase_fractional_difference(double m2, double k, double omega, double x,
                                   double t) {
    const double pb = oscillation_phase(MassModel::bradyonic, m2, k, t);
    const double pt = oscillation_phase(MassModel::tachyonic, m2, omega, x);
    const double top = std::abs(pt + pb); // opposite signs: magnitude mismatch
    const double bot = std::max(std::abs(pt), std::abs(pb));
    return bot > 0.0 ? top / bot : 0.0;
}

// ---------------------------------------------------------------------------
// Tachyon gas

void GasState::validate() const {
    if (!(T > 0.0) || !std::isfinite(T))
        throw validation_error("gas: temperature must be positive");
    if (!(a_scale > 0.0) || !std::isfinite(a_scale))
        throw validation_error("gas: scale factor must be positive");
    if (!(m > 0.0) || !std::isfinite(m))
        throw validation_error("gas: tachyon mass must be positive");
}

namespace {

double occupancy(double E, double T, Statistics stats) {
    const double x = E / T;
    if (x > 700.0) return 0.0;
    return stats == Statistics::fermi ? 1.0 / (std::exp(x) + 1.0)
                                      : 1.0 / std::expm1(x);
}

double gas_cut(double T) { return 60.0 * T; }

} // namespace

double gas_energy_density(double T, double m, Statistics stats) {
    if (!(T > 0.0) || !(m > 0.0))
        throw validation_error("gas: need T > 0 and m > 0");
    const auto f = [T, m, stats](double E) {
        return E * E * std::sqrt(E * E + m * m) * occupancy(E, T, stats);
    };
    return tanh_sinh(f, 0.0, gas_cut(T), 1e-11) / two_pi_sq;
}

double gas_pressure(double T, double m, Statistics stats) {
    if (!(T > 0.0) || !(m > 0.0))
        throw validation_error("gas: need T > 0 and m > 0");
    if (stats == Statistics::bose)
        throw validation_error(
            "gas: bose pressure diverges at zero chemical potential (the "
            "(m^2+E^2)^{3/2} integrand behaves as m^3 T/E near E = 0)");
    const auto f = [T, m](double E) {
        return std::pow(E * E + m * m, 1.5) * occupancy(E, T, Statistics::fermi);
    };
    return tanh_sinh(f, 0.0, gas_cut(T), 1e-11) / (3.0 * two_pi_sq);
}

double gas_energy_density_dT(double T, double m, Statistics stats) {
    if (!(T > 0.0) || !(m > 0.0))
        throw validation_error("gas: need T > 0 and m > 0");
    if (stats == Statistics::bose)
        throw validation_error("gas: evolution supports fermi statistics only");
    const auto f = [T, m](double E) {
        const double c = std::cosh(0.5 * E / T);
        const double dn = (E / (T * T)) / (4.0 * c * c);
        return E * E * std::sqrt(E * E + m * m) * dn;
    };
    return tanh_sinh(f, 0.0, gas_cut(T), 1e-11) / two_pi_sq;
}

GasCurve gas_evolution(const GasState& initial, double a_end, GasMode mode,
                       int samples) {
    initial.validate();
    if (!(a_end > initial.a_scale))
        throw validation_error("gas: a_end must exceed the initial scale factor");
    if (samples < 2)
        throw validation_error("gas: need at least 2 output samples");
    if (initial.statistics == Statistics::bose)
        throw validation_error(
            "gas: evolution needs fermi statistics (bose pressure diverges at "
            "zero chemical potential)");

    const double a1 = initial.a_scale;
    const double T1 = initial.T;
    const double m = initial.m;

    GasCurve curve;
    curve.a.resize(std::size_t(samples));
    for (int i = 0; i < samples; ++i)
        curve.a[std::size_t(i)] = a1 + (a_end - a1) * double(i) / double(samples - 1);

    if (mode == GasMode::low_T_closed_form) {
        curve.domain_end = a1 * std::sqrt(2.0);
        for (double a : curve.a) {
            const double arg = 2.0 * (a1 / a) * (a1 / a) - 1.0;
            double T = 0.0;
            if (arg > 0.0) {
                T = T1 * std::sqrt(arg);
            } else if (!curve.quenched) {
                curve.quenched = true;
                curve.a_quench = curve.domain_end;
            }
            curve.T.push_back(T);
            curve.rho.push_back(T > 0.0 ? gas_energy_density(T, m, Statistics::fermi)
                                        : 0.0);
            curve.P.push_back(T > 0.0 ? gas_pressure(T, m, Statistics::fermi) : 0.0);
        }
        return curve;
    }

    // full conservation law in u = T^2, x = ln a:
    //   du/dx = -6 T (rho + P) / (d rho/dT),
    // finite at the quench point u -> 0 where the right side tends to
    // -2 * (P/T)/(d rho/dT * / T^2) -> constant
    const double u_floor = 1e-20 * T1 * T1;
    const auto rhs = [m, u_floor](double, const double* y, double* dy) {
        const double u = std::max(y[0], u_floor);
        const double T = std::sqrt(u);
        const double rho = gas_energy_density(T, m, Statistics::fermi);
        const double P = gas_pressure(T, m, Statistics::fermi);
        const double drho = gas_energy_density_dT(T, m, Statistics::fermi);
        dy[0] = -6.0 * T * (rho + P) / drho;
    };
    const std::function<double(double, const double*)> guard =
        [u_floor](double, const double* y) { return y[0] - 10.0 * u_floor; };

    OdeStepState<1> st;
    st.tau = std::log(a1);
    st.y = {T1 * T1};
    OdeOptions opt;
    opt.tol = 1e-8;

    curve.T.push_back(T1);
    curve.rho.push_back(gas_energy_density(T1, m, Statistics::fermi));
    curve.P.push_back(gas_pressure(T1, m, Statistics::fermi));

    bool dead = false;
    for (std::size_t i = 1; i < curve.a.size(); ++i) {
        double T = 0.0;
        if (!dead) {
            const double x_target = std::log(curve.a[i]);
            const auto status = integrate_ode<1>(
                rhs, guard, [](const OdeStepState<1>&, const OdeStepState<1>&) {},
                st, x_target, opt);
            if (status == OdeStatus::event_stop) {
                dead = true;
                curve.quenched = true;
                curve.a_quench = std::exp(st.tau);
            } else {
                T = std::sqrt(std::max(0.0, st.y[0]));
            }
        }
        curve.T.push_back(T);
        curve.rho.push_back(T > 0.0 ? gas_energy_density(T, m, Statistics::fermi)
                                    : 0.0);
        curve.P.push_back(T > 0.0 ? gas_pressure(T, m, Statistics::fermi) : 0.0);
    }
    return curve;
}

// ---------------------------------------------------------------------------
// CSV exports

std::string spectrum_csv(double E0, double m, int samples, const std::string& path) {
    if (!(E0 > 0.0))
        throw validation_error("spectrum csv: E0 must be positive");
    if (samples < 2)
        throw validation_error("spectrum csv: need at least 2 samples");
    SpectrumModel mless{SpectrumModel::Variant::massless, 0.0, E0};
    SpectrumModel brad{SpectrumModel::Variant::bradyonic, m, E0};
    SpectrumModel tach{SpectrumModel::Variant::tachyonic, m, E0};
    const bool massive = m > 0.0 && m < E0;
    std::vector<std::vector<double>> rows;
    rows.reserve(std::size_t(samples));
    for (int i = 0; i < samples; ++i) {
        const double Ee = E0 * double(i) / double(samples - 1);
        const double s0 = beta_spectrum(mless, Ee);
        double sb = 0.0, st = 0.0;
        if (m > 0.0) {
            if (massive && Ee <= brad.support_max()) sb = beta_spectrum(brad, Ee);
            st = beta_spectrum(tach, Ee);
        } else {
            sb = st = s0;
        }
        rows.push_back({Ee, s0, sb, st});
    }
    return io::write_csv(path, "Ee,massless,bradyonic,tachyonic", rows);
}

std::string cosmo_csv(const GasCurve& full, const GasCurve& closed_form,
                      const std::string& path) {
    if (full.a.size() != closed_form.a.size())
        throw validation_error("cosmo csv: curves sampled on different grids");
    std::vector<std::vector<double>> rows;
    rows.reserve(full.a.size());
    for (std::size_t i = 0; i < full.a.size(); ++i)
        rows.push_back(
            {full.a[i], full.T[i], closed_form.T[i], full.rho[i], full.P[i]});
    return io::write_csv(path, "a,T_full,T_closed_form,rho,P", rows);
}

} // namespace tgr::kinematics
