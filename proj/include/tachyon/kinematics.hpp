#pragma once

#include <string>
#include <vector>

namespace tgr::kinematics {

// ---------------------------------------------------------------------------
// Tachyon exchange between a fixed observer and a moving ship

struct ExchangeScenario {
    double x0 = 1.0; // ship position at emission
    double v = 0.5;  // ship speed, |v| < 1 (negative: approaching)
    double V = 2.0;  // tachyon signal speed, > 1

    void validate() const;
};

struct ExchangeTimes {
    double dt_earth = 0.0; // x0 / (V - v)
    double dt_ship = 0.0;  // gamma (1 - v V) dt_earth
    bool reversed = false; // reply arrives before emission: v V > 1
};

ExchangeTimes exchange_times(const ExchangeScenario& sc);

// ---------------------------------------------------------------------------
// Wave-packet size under a boost

struct PacketTransform {
    double dx_rest = 0.0;    // V / decay_rate
    double dx_boosted = 0.0; // V / (gamma decay_rate |1 - v V|)
    bool diverges = false;   // |1 - v V| below threshold
};

PacketTransform packet_size_transform(double V, double decay_rate, double v,
                                      double threshold = 1e-12);

// ---------------------------------------------------------------------------
// On-shell state counting and beta-decay endpoint spectra

// (1/2 pi^2) E0 p0 with the tachyon shell p0 = sqrt(E0^2 + m^2)
double on_shell_density(double E0, double m);

struct SpectrumModel {
    enum class Variant { massless, bradyonic, tachyonic };
    Variant variant = Variant::massless;
    double m = 0.0;  // neutrino mass parameter (> 0 for massive variants)
    double E0 = 1.0; // endpoint energy

    void validate() const;
    double support_max() const; // E0, shifted to E0 - m for the bradyonic case
};

// unnormalized spectral density at electron energy Ee; outside the support
// the model rejects the query
double beta_spectrum(const SpectrumModel& model, double Ee);

enum class EndpointSlope { zero, infinite, finite_negative };

// analytic classification of the spectrum's approach to its endpoint
EndpointSlope endpoint_slope(SpectrumModel::Variant variant);

// finite-difference classification: fits the slope just below the endpoint at
// two window sizes and classifies by how the fit scales as the window shrinks
EndpointSlope endpoint_slope_fit(const SpectrumModel& model, double window = 1e-4,
                                 double* slope_out = nullptr);

// ---------------------------------------------------------------------------
// Oscillation phases of a small-mass expansion

enum class MassModel { bradyonic, tachyonic };

// bradyonic: -(m^2/2k) * t ; tachyonic: +(m^2/2 omega) * x.
// The expansion requires k (or omega) > m.
double oscillation_phase(MassModel model, double m2, double k_or_omega,
                         double baseline);

// |phi_tachyonic + phi_bradyonic| / max(|phi|): zero when omega = k, x = t
double phase_fractional_difference(double m2, double k, double omega, double x,
                                   double t);

// ---------------------------------------------------------------------------
// Tachyon-gas cosmology

enum class Statistics { fermi, bose };

struct GasState {
    double T = 1.0;
    double a_scale = 1.0;
    Statistics statistics = Statistics::fermi;
    double m = 1.0;

    void validate() const;
};

// energy density (1/2pi^2) int E^2 sqrt(E^2+m^2) n(E) dE over the tachyon
// shell E = sqrt(p^2 - m^2), p in [m, inf); n = 1/(e^{E/T} +- 1)
double gas_energy_density(double T, double m, Statistics stats);
// pressure (1/6pi^2) int (E^2+m^2)^{3/2} n(E) dE; diverges for bose at zero
// chemical potential (soft mode), which is rejected
double gas_pressure(double T, double m, Statistics stats);
// d rho / dT at fixed m
double gas_energy_density_dT(double T, double m, Statistics stats);

enum class GasMode { full_ode, low_T_closed_form };

struct GasCurve {
    std::vector<double> a;
    std::vector<double> T;
    std::vector<double> rho;
    std::vector<double> P;
    bool quenched = false;   // temperature reached zero inside the span
    double a_quench = 0.0;   // where (0 if not quenched)
    double domain_end = 0.0; // closed form: a1 sqrt(2), where its T^2 crosses 0
};

// Evolve T(a) from (T1, a1) to a_end on a uniform a-grid with `samples`
// points.  full_ode integrates d(rho a^3)/da = -3 P a^2 with the exact
// quadrature equation of state; low_T_closed_form evaluates
// (T/T1)^2 = 2 (a1/a)^2 - 1 and reports its finite-expansion endpoint.
GasCurve gas_evolution(const GasState& initial, double a_end, GasMode mode,
                       int samples = 200);

// CSV "Ee,massless,bradyonic,tachyonic" over a uniform Ee grid; the bradyonic
// column is zero beyond its shifted endpoint.  Returns text; "-" = stdout.
std::string spectrum_csv(double E0, double m, int samples, const std::string& path);

// CSV "a,T_full,T_closed_form,rho,P" merging the two modes on one grid (rho,
// P follow the full-ODE curve).
std::string cosmo_csv(const GasCurve& full, const GasCurve& closed_form,
                      const std::string& path);

} // namespace tgr::kinematics
