#include "tachyon/linfield.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "tachyon/errors.hpp"
#include "tachyon/io.hpp"
#include "tachyon/quadrature.hpp"

namespace tgr::linfield {

namespace {

constexpr double pi = 3.14159265358979323846;

double binom(int k, int j) {
    double c = 1.0;
    for (int i = 1; i <= j; ++i) c *= double(k - (j - i)) / double(i);
    return c;
}

double harmonic(int k) {
    double h = 0.0;
    for (int j = 1; j <= k; ++j) h += 1.0 / double(j);
    return h;
}

// Integral over one grid cell, split at a breakpoint so the integrand stays
// smooth on each side of an envelope cutoff.
double cell_integral(const std::function<double(double)>& f, double a, double b,
                     double brk) {
    if (brk > a && brk < b) {
        return integrate_adaptive(f, a, brk, 0.0, 1e-13, 80).value +
               integrate_adaptive(f, brk, b, 0.0, 1e-13, 80).value;
    }
    return integrate_adaptive(f, a, b, 0.0, 1e-13, 80).value;
}

double small_integral(const std::function<double(double)>& f, double a, double b) {
    if (!(b > a)) return 0.0;
    return integrate_adaptive(f, a, b, 1e-300, 1e-12, 200).value;
}

} // namespace

// ---------------------------------------------------------------------------
// SourceEnvelope

void SourceEnvelope::validate() const {
    if (n != 2 && n != 3)
        throw validation_error("source envelope: spatial dimension n must be 2 or 3");
    if (!(b0 >= 0.0) || !std::isfinite(b0))
        throw validation_error("source envelope: amplitude b0 must be finite and >= 0");
    if (shape == Shape::gaussian) {
        if (!(sigma > 0.0) || !std::isfinite(sigma))
            throw validation_error("source envelope: gaussian width sigma must be positive");
    } else {
        if (!(R > 0.0) || !std::isfinite(R))
            throw validation_error("source envelope: cutoff radius R must be positive");
    }
    if (shape == Shape::poly_cutoff && k < 1)
        throw validation_error("source envelope: poly_cutoff exponent k must be >= 1");
}

double SourceEnvelope::scale() const {
    return shape == Shape::gaussian ? sigma : R;
}

double SourceEnvelope::b(double r) const {
    switch (shape) {
    case Shape::top_hat:
        return r < R ? b0 : 0.0;
    case Shape::gaussian:
        return b0 * std::exp(-0.5 * r * r / (sigma * sigma));
    case Shape::poly_cutoff: {
        if (r >= R) return 0.0;
        const double u = 1.0 - (r / R) * (r / R);
        return b0 * std::pow(u, double(k));
    }
    }
    return 0.0;
}

double SourceEnvelope::breakpoint() const {
    return shape == Shape::gaussian ? 0.0 : R;
}

double SourceEnvelope::tail_J(double r) const {
    if (b0 == 0.0) return 0.0;
    switch (shape) {
    case Shape::top_hat:
        if (r >= R) return 0.0;
        if (r <= 0.0) return std::numeric_limits<double>::infinity();
        return b0 * std::log(R / r);
    case Shape::gaussian: {
        if (r <= 0.0) return std::numeric_limits<double>::infinity();
        const double x = 0.5 * r * r / (sigma * sigma);
        if (x > 700.0) return 0.0; // E1 underflows
        return 0.5 * b0 * (-std::expint(-x));
    }
    case Shape::poly_cutoff: {
        if (r >= R) return 0.0;
        if (r <= 0.0) return std::numeric_limits<double>::infinity();
        // J = (b0/2) \int_x^1 (1-u)^k / u du with x = (r/R)^2, expanded by
        // the binomial theorem; the j=0 term carries the log.
        const double x = (r / R) * (r / R);
        double series = 0.0;
        double sign = -1.0;
        for (int j = 1; j <= k; ++j) {
            series += sign * binom(k, j) * std::pow(x, double(j)) / double(j);
            sign = -sign;
        }
        return 0.5 * b0 * (-harmonic(k) - std::log(x) - series);
    }
    }
    return 0.0;
}

std::string SourceEnvelope::shape_name() const {
    switch (shape) {
    case Shape::top_hat: return "top_hat";
    case Shape::gaussian: return "gaussian";
    case Shape::poly_cutoff: return "poly_cutoff";
    }
    return "top_hat";
}

// ---------------------------------------------------------------------------
// StressProfile

double StressProfile::a_of_r(double r) const {
    const int n = envelope.n;
    return double(n - 1) * (envelope.b(r) - double(n) * J(r));
}

double StressProfile::J(double r) const { return envelope.tail_J(r); }

StressProfile build_stress(const SourceEnvelope& env, double flow_speed,
                           std::function<double(double)> T00_override,
                           std::function<double(double)> T33_override) {
    env.validate();
    if (flow_speed == 0.0 || !std::isfinite(flow_speed))
        throw validation_error("stress profile: flow_speed must be finite and nonzero");
    StressProfile s;
    s.envelope = env;
    s.flow_speed = flow_speed;
    if (T00_override) {
        s.T00 = std::move(T00_override);
    } else {
        // circulating flow at speed v: kinetic stress b = rho v^2
        const SourceEnvelope e = env;
        const double v2 = flow_speed * flow_speed;
        s.T00 = [e, v2](double r) { return e.b(r) / v2; };
    }
    if (T33_override) {
        s.T33 = std::move(T33_override);
    } else if (env.n == 2) {
        // axial tachyon flow: pressure along the line with the same envelope
        const SourceEnvelope e = env;
        s.T33 = [e](double r) { return e.b(r); };
    }
    return s;
}

// ---------------------------------------------------------------------------
// solve_fg

FieldProfile solve_fg(const StressProfile& stress, double G, int grid_points) {
    stress.envelope.validate();
    if (!(G > 0.0) || !std::isfinite(G))
        throw validation_error("field solve: gravitational constant must be positive");
    if (grid_points < 16)
        throw validation_error("field solve: grid_points must be at least 16");
    if (!stress.T00)
        throw validation_error("field solve: stress profile carries no energy density");

    FieldProfile p;
    p.n = stress.envelope.n;
    p.G = G;
    p.envelope = stress.envelope;
    p.flow_speed = stress.flow_speed;
    p.from_samples = false;
    p.rho_fn = stress.T00;
    p.t33_fn = stress.T33;

    const int n = p.n;
    const double scale = stress.envelope.scale();
    const double rmin = 1e-3 * scale;
    const double rmax = 1e+3 * scale;
    const double brk = stress.envelope.breakpoint();
    const int N = grid_points;

    double K = 16.0 * pi * G / double(n + 2);
#ifdef TACHYON_MUTATION_HOOKS
    if (const char* mut = std::getenv("TACHYON_GR_MUTATE_PREFACTOR"))
        K *= std::strtod(mut, nullptr);
#endif
    p.K_pref = K;
    const double Kf = 16.0 * pi * G * double(n - 1);

    std::vector<double> r(N);
    const double ratio = std::log(rmax / rmin);
    for (int i = 0; i < N; ++i)
        r[i] = rmin * std::exp(ratio * double(i) / double(N - 1));
    r[0] = rmin;
    r[N - 1] = rmax;
    p.r_grid = r;

    const SourceEnvelope env = stress.envelope;
    const auto b_fn = [&env](double s) { return env.b(s); };
    const auto rho = stress.T00;

    // cumulative kinetic moment M(r) = \int_0^r s^{n+1} b ds
    std::vector<double> Mkin(N), J(N);
    const auto mom_kin = [&](double s) { return std::pow(s, double(n + 1)) * b_fn(s); };
    Mkin[0] = small_integral(mom_kin, 0.0, rmin);
    for (int i = 1; i < N; ++i)
        Mkin[i] = Mkin[i - 1] + cell_integral(mom_kin, r[i - 1], r[i], brk);
    for (int i = 0; i < N; ++i) J[i] = env.tail_J(r[i]);
    p.Mkin_total = Mkin[N - 1];

    // f from the top down: f' = -Kf r J, f(infinity) = 0.  Beyond the grid the
    // tail contribution is zero for compact envelopes and underflows for the
    // gaussian (J ~ exp(-r^2/2 sigma^2) is already zero in double at 1e3 sigma).
    std::vector<double> f(N), g(N);
    const auto fint = [&](double s) { return s * env.tail_J(s); };
    f[N - 1] = 0.0;
    for (int i = N - 1; i >= 1; --i)
        f[i - 1] = f[i] + Kf * cell_integral(fint, r[i - 1], r[i], brk);
    for (int i = 0; i < N; ++i)
        g[i] = -K * (std::pow(r[i], double(-n)) * Mkin[i] + r[i] * r[i] * J[i]);
    p.f_end = f[N - 1];
    p.f0 = f[0] + Kf * small_integral(fint, 0.0, rmin);
    p.asymptotic_coeff = -K * p.Mkin_total;

    // static potentials
    p.log_zero_radius = scale;
    std::vector<double> lam(N), V0(N);
    if (n == 3) {
        const auto dm = [&](double s) { return 4.0 * pi * s * s * rho(s); };
        const auto douter = [&](double s) { return 4.0 * pi * s * rho(s); };
        lam[0] = small_integral(dm, 0.0, rmin);
        for (int i = 1; i < N; ++i)
            lam[i] = lam[i - 1] + cell_integral(dm, r[i - 1], r[i], brk);
        std::vector<double> outer(N, 0.0);
        for (int i = N - 1; i >= 1; --i)
            outer[i - 1] = outer[i] + cell_integral(douter, r[i - 1], r[i], brk);
        for (int i = 0; i < N; ++i)
            V0[i] = -G * (lam[i] / r[i] + outer[i]);
        p.mass_total = lam[N - 1];
    } else {
        const double R0 = p.log_zero_radius;
        const auto dl = [&](double s) { return 2.0 * pi * s * rho(s); };
        const auto douter = [&](double s) { return 2.0 * pi * s * rho(s) * std::log(s / R0); };
        lam[0] = small_integral(dl, 0.0, rmin);
        for (int i = 1; i < N; ++i)
            lam[i] = lam[i - 1] + cell_integral(dl, r[i - 1], r[i], brk);
        std::vector<double> outer(N, 0.0);
        for (int i = N - 1; i >= 1; --i)
            outer[i - 1] = outer[i] + cell_integral(douter, r[i - 1], r[i], brk);
        for (int i = 0; i < N; ++i)
            V0[i] = 2.0 * G * (lam[i] * std::log(r[i] / R0) + outer[i]);
        p.mass_total = lam[N - 1];
    }

    std::vector<double> lam3, V3;
    if (n == 2 && stress.T33) {
        const double R0 = p.log_zero_radius;
        const auto t33 = stress.T33;
        lam3.resize(N);
        V3.resize(N);
        const auto dl = [&](double s) { return 2.0 * pi * s * t33(s); };
        const auto douter = [&](double s) { return 2.0 * pi * s * t33(s) * std::log(s / R0); };
        lam3[0] = small_integral(dl, 0.0, rmin);
        for (int i = 1; i < N; ++i)
            lam3[i] = lam3[i - 1] + cell_integral(dl, r[i - 1], r[i], brk);
        std::vector<double> outer(N, 0.0);
        for (int i = N - 1; i >= 1; --i)
            outer[i - 1] = outer[i] + cell_integral(douter, r[i - 1], r[i], brk);
        for (int i = 0; i < N; ++i)
            V3[i] = 2.0 * G * (lam3[i] * std::log(r[i] / R0) + outer[i]);
        p.lambda3_total = lam3[N - 1];
    }

    p.f_samples = f;
    p.g_samples = g;
    p.V0_samples = V0;
    p.V3_samples = V3.empty() ? std::vector<double>(N, 0.0) : V3;

    p.sp_Mkin = CubicSpline(r, Mkin);
    p.sp_J = CubicSpline(r, J);
    p.sp_f = CubicSpline(r, f);
    p.sp_g = CubicSpline(r, g);
    p.sp_V0 = CubicSpline(r, V0);
    p.sp_lam = CubicSpline(r, lam);
    if (!V3.empty()) {
        p.sp_V3 = CubicSpline(r, V3);
        p.sp_lam3 = CubicSpline(r, lam3);
    }
    return p;
}

// ---------------------------------------------------------------------------
// FieldProfile accessors

namespace {

[[noreturn]] void imported_only(const char* what) {
    throw numerical_error(std::string(what) +
                          " is not available on a profile imported from samples");
}

void check_radius(double r) {
    if (!std::isfinite(r) || r < 0.0)
        throw validation_error("field profile: radius must be finite and >= 0");
}

} // namespace

double FieldProfile::J_tail(double r) const {
    if (from_samples) imported_only("tail integral J");
    return envelope.tail_J(r);
}

double FieldProfile::b_at(double r) const {
    if (from_samples) imported_only("kinetic envelope b");
    return envelope.b(r);
}

double FieldProfile::rho_at(double r) const {
    if (from_samples || !rho_fn) imported_only("energy density");
    return rho_fn(r);
}

double FieldProfile::M_kin(double r) const {
    check_radius(r);
    if (from_samples) imported_only("kinetic moment M");
    if (r <= 0.0) return 0.0;
    if (r >= r_max()) return Mkin_total;
    if (r < r_min()) {
        const SourceEnvelope e = envelope;
        const int nn = n;
        return small_integral(
            [e, nn](double s) { return std::pow(s, double(nn + 1)) * e.b(s); }, 0.0, r);
    }
    return sp_Mkin.eval(r);
}

double FieldProfile::enclosed(double r) const {
    check_radius(r);
    if (from_samples) imported_only("enclosed source strength");
    if (r <= 0.0) return 0.0;
    if (r >= r_max()) return mass_total;
    if (r < r_min()) {
        const auto rho = rho_fn;
        const double c = (n == 3) ? 4.0 * pi : 2.0 * pi;
        const int nn = n;
        return small_integral(
            [rho, c, nn](double s) { return c * std::pow(s, double(nn - 1)) * rho(s); },
            0.0, r);
    }
    return sp_lam.eval(r);
}

double FieldProfile::f(double r) const {
    check_radius(r);
    if (from_samples) return sp_f.eval(r);
    if (r >= r_max()) return f_end;
    if (r <= r_min()) {
        const double Kf = 16.0 * pi * G * double(n - 1);
        const SourceEnvelope e = envelope;
        return sp_f.values().front() +
               Kf * small_integral([e](double s) { return s * e.tail_J(s); }, r, r_min());
    }
    return sp_f.eval(r);
}

double FieldProfile::f_prime(double r) const {
    check_radius(r);
    if (from_samples) return sp_f.deriv(r);
    if (r <= 0.0) return 0.0;
    return -16.0 * pi * G * double(n - 1) * r * envelope.tail_J(r);
}

double FieldProfile::g(double r) const {
    check_radius(r);
    if (from_samples) return sp_g.eval(r);
    if (r == 0.0) return 0.0;
    if (r < 1e-9 * scale()) {
        // series around the axis: M ~ b(0) r^{n+2}/(n+2), so r^-n M ~ r^2 b(0)/(n+2)
        return -K_pref * r * r * (envelope.b(0.0) / double(n + 2) + envelope.tail_J(r));
    }
    return -K_pref * (std::pow(r, double(-n)) * M_kin(r) + r * r * envelope.tail_J(r));
}

double FieldProfile::g_prime(double r) const {
    check_radius(r);
    if (from_samples) return sp_g.deriv(r);
    if (r == 0.0) return 0.0;
    if (r < 1e-9 * scale())
        return -K_pref * 2.0 * r * (envelope.b(0.0) / double(n + 2) + envelope.tail_J(r));
    return -K_pref * (-double(n) * std::pow(r, double(-n - 1)) * M_kin(r) +
                      2.0 * r * envelope.tail_J(r));
}

double FieldProfile::g_second(double r) const {
    check_radius(r);
    if (from_samples) return sp_g.second(r);
    if (r <= 0.0)
        throw validation_error("field profile: g'' requires r > 0");
    return -K_pref * (double(n) * double(n + 1) * std::pow(r, double(-n - 2)) * M_kin(r) +
                      2.0 * envelope.tail_J(r) - double(n + 2) * envelope.b(r));
}

double FieldProfile::V0(double r) const {
    check_radius(r);
    if (from_samples) return sp_V0.eval(r);
    if (r >= r_max()) {
        if (n == 3) return -G * mass_total / r;
        return 2.0 * G * mass_total * std::log(r / log_zero_radius);
    }
    if (r < r_min()) {
        // walk down from the first grid knot: V0(r) = V0(rmin) - \int_r^rmin V0'
        const double head = sp_V0.values().front();
        const int nn = n;
        const double GG = G;
        const auto encl = [this](double s) { return enclosed(s); };
        const auto dv = [encl, nn, GG](double s) {
            return nn == 3 ? GG * encl(s) / (s * s) : 2.0 * GG * encl(s) / s;
        };
        return head - small_integral(dv, r, r_min());
    }
    return sp_V0.eval(r);
}

double FieldProfile::V0_prime(double r) const {
    check_radius(r);
    if (from_samples) return sp_V0.deriv(r);
    if (r == 0.0) return 0.0;
    return n == 3 ? G * enclosed(r) / (r * r) : 2.0 * G * enclosed(r) / r;
}

double FieldProfile::V3(double r) const {
    check_radius(r);
    if (n == 3) return 0.0;
    if (from_samples) return sp_V3.empty() ? 0.0 : sp_V3.eval(r);
    if (sp_V3.empty()) return 0.0;
    if (r >= r_max()) return 2.0 * G * lambda3_total * std::log(r / log_zero_radius);
    if (r < r_min()) {
        const double head = sp_V3.values().front();
        const double GG = G;
        const auto t33 = t33_fn;
        const auto lam3_low = [t33](double s) {
            return small_integral([t33](double u) { return 2.0 * pi * u * t33(u); }, 0.0, s);
        };
        const auto dv = [lam3_low, GG](double s) { return 2.0 * GG * lam3_low(s) / s; };
        return head - small_integral(dv, r, r_min());
    }
    return sp_V3.eval(r);
}

double FieldProfile::V3_prime(double r) const {
    check_radius(r);
    if (n == 3) return 0.0;
    if (from_samples) return sp_V3.empty() ? 0.0 : sp_V3.deriv(r);
    if (sp_V3.empty() || r == 0.0) return 0.0;
    double l3;
    if (r >= r_max()) {
        l3 = lambda3_total;
    } else if (r < r_min()) {
        const auto t33 = t33_fn;
        l3 = small_integral([t33](double u) { return 2.0 * pi * u * t33(u); }, 0.0, r);
    } else {
        l3 = sp_lam3.eval(r);
    }
    return 2.0 * G * l3 / r;
}

FieldProfile::ValueSlope FieldProfile::f_pair(double r) const {
    check_radius(r);
    if (!from_samples) {
        if (r >= r_max()) return {f_end, 0.0};
        if (r <= r_min()) return {f(r), f_prime(r)};
    }
    return {sp_f.eval(r), sp_f.deriv(r)};
}

FieldProfile::ValueSlope FieldProfile::g_pair(double r) const {
    check_radius(r);
    if (!from_samples && (r >= r_max() || r <= r_min()))
        return {g(r), g_prime(r)};
    return {sp_g.eval(r), sp_g.deriv(r)};
}

FieldProfile::ValueSlope FieldProfile::V0_pair(double r) const {
    check_radius(r);
    if (!from_samples && (r >= r_max() || r < r_min()))
        return {V0(r), V0_prime(r)};
    return {sp_V0.eval(r), sp_V0.deriv(r)};
}

FieldProfile::ValueSlope FieldProfile::V3_pair(double r) const {
    check_radius(r);
    if (n == 3 || sp_V3.empty()) return {0.0, 0.0};
    if (!from_samples && (r >= r_max() || r < r_min()))
        return {V3(r), V3_prime(r)};
    return {sp_V3.eval(r), sp_V3.deriv(r)};
}

// ---------------------------------------------------------------------------
// Potentials

Potentials newtonian_potentials(const StressProfile& stress, double G) {
    auto prof = std::make_shared<FieldProfile>(solve_fg(stress, G));
    Potentials pot;
    pot.mass_total = prof->mass_total;
    pot.lambda3_total = prof->lambda3_total;
    pot.log_zero_radius = prof->log_zero_radius;
    pot.V0 = [prof](double r) { return prof->V0(r); };
    pot.V0_prime = [prof](double r) { return prof->V0_prime(r); };
    pot.V3 = [prof](double r) { return prof->V3(r); };
    pot.V3_prime = [prof](double r) { return prof->V3_prime(r); };
    return pot;
}

// ---------------------------------------------------------------------------
// Virial moments

double VirialMoments::max_zeroth() const {
    double m = 0.0;
    for (const auto& row : zeroth)
        for (double v : row) m = std::max(m, std::abs(v));
    return m;
}

double VirialMoments::max_first() const {
    double m = 0.0;
    for (const auto& mat : first)
        for (const auto& row : mat)
            for (double v : row) m = std::max(m, std::abs(v));
    return m;
}

VirialMoments virial_moments(const StressProfile& stress, StressPart part,
                             double abs_tol) {
    stress.envelope.validate();
    const int n = stress.envelope.n;
    const double omega = (n == 2) ? 2.0 * pi : 4.0 * pi;
    const SourceEnvelope env = stress.envelope;
    const double cut = env.shape == SourceEnvelope::Shape::gaussian ? 50.0 * env.sigma
                                                                    : env.R;

    // Angular reduction over the unit sphere/circle:
    //   <x_i x_j / r^2> = delta_ij / n  =>  \int D_ij d^n x = 0 slice by slice,
    // so only the isotropic radial profile survives in the zeroth moment:
    //   conserved     : p(r) = a(r)            (integrates to zero)
    //   kinetic_only  : n T^kin = (n-1) delta_ij b + D_ij b -> p(r) = (n-1) b(r)
    // First moments carry one odd power of the direction vector and vanish by
    // parity for any radial profile.
    std::function<double(double)> p_radial;
    if (part == StressPart::conserved) {
        p_radial = [stress](double r) { return stress.a_of_r(r); };
    } else {
        p_radial = [env, n](double r) { return double(n - 1) * env.b(r); };
    }
    const int nn = n;
    const auto integrand = [p_radial, nn](double r) {
        return std::pow(r, double(nn - 1)) * p_radial(r);
    };
    const double radial =
        integrate_adaptive(integrand, 0.0, cut, abs_tol, 1e-12, 4000).value;

    VirialMoments vm;
    for (int i = 0; i < n; ++i) vm.zeroth[i][i] = omega * radial;
    return vm;
}

// ---------------------------------------------------------------------------
// Line sources

double line_source_force(double lambda_or_P, double r, LineKind kind,
                         LineContext ctx, double G, double source_speed,
                         double probe_zdot) {
    if (!(r > 0.0) || !std::isfinite(r))
        throw validation_error("line source: field-point radius must be positive");
    if (!std::isfinite(lambda_or_P))
        throw validation_error("line source: line density must be finite");
    if (ctx == LineContext::weak_field)
        return -2.0 * G * lambda_or_P / r;
    if (kind == LineKind::mass_line)
        return -4.0 * G * lambda_or_P / r;
    const double v2 = source_speed * source_speed;
    return -4.0 * G * lambda_or_P * (1.0 + v2 * probe_zdot * probe_zdot) / r;
}

double coordinate_acceleration(double force, double probe_lorentz_gamma) {
    if (probe_lorentz_gamma == 0.0 || !std::isfinite(probe_lorentz_gamma))
        throw validation_error("line source: probe gamma must be finite and nonzero");
    return force / (probe_lorentz_gamma * probe_lorentz_gamma);
}

double tachyon_line_pressure(double nm, double v) {
    if (!(std::abs(v) > 1.0))
        throw validation_error("tachyon line: speed must exceed 1");
    return nm * v * v / std::sqrt(v * v - 1.0);
}

// ---------------------------------------------------------------------------
// Serialization

void write_profile(const FieldProfile& p, const std::string& csv_path,
                   const std::string& json_path) {
    std::vector<std::vector<double>> rows;
    rows.reserve(p.r_grid.size());
    for (std::size_t i = 0; i < p.r_grid.size(); ++i)
        rows.push_back({p.r_grid[i], p.f_samples[i], p.g_samples[i],
                        p.V0_samples[i], p.V3_samples[i]});
    io::write_csv(csv_path, "r,f,g,V0,V3", rows);

    io::JsonWriter jw;
    jw.begin_object();
    jw.field("n", p.n);
    jw.field("G", p.G);
    jw.field("flow_speed", p.flow_speed);
    jw.begin_object("envelope");
    jw.field("shape", p.envelope.shape_name());
    jw.field("b0", p.envelope.b0);
    jw.field("R", p.envelope.R);
    jw.field("sigma", p.envelope.sigma);
    jw.field("k", p.envelope.k);
    jw.end_object();
    jw.field("prefactor_g", "-16*pi*G/(n+2) * (r^-n M + r^2 J)");
    jw.field("prefactor_f_prime", "-16*pi*G*(n-1) * r J");
    jw.field("asymptotic_coeff", p.asymptotic_coeff);
    jw.field("f0", p.f0);
    jw.field("log_zero_radius", p.log_zero_radius);
    jw.field("mass_total", p.mass_total);
    jw.field("lambda3_total", p.lambda3_total);
    jw.field("K_pref", p.K_pref);
    jw.field("f_end", p.f_end);
    jw.field("Mkin_total", p.Mkin_total);
    jw.end_object();
    io::write_text(json_path, jw.str());
}

FieldProfile read_profile(const std::string& csv_path, const std::string& json_path) {
    nlohmann::json meta;
    try {
        meta = nlohmann::json::parse(io::read_text(json_path));
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(std::string("profile sidecar: ") + e.what());
    }

    FieldProfile p;
    p.from_samples = true;
    try {
        p.n = meta.at("n").get<int>();
        p.G = meta.at("G").get<double>();
        p.flow_speed = meta.value("flow_speed", 1.0);
        const auto& env = meta.at("envelope");
        const std::string shape = env.at("shape").get<std::string>();
        if (shape == "top_hat") p.envelope.shape = SourceEnvelope::Shape::top_hat;
        else if (shape == "gaussian") p.envelope.shape = SourceEnvelope::Shape::gaussian;
        else if (shape == "poly_cutoff") p.envelope.shape = SourceEnvelope::Shape::poly_cutoff;
        else throw validation_error("profile sidecar: unknown envelope shape " + shape);
        p.envelope.b0 = env.at("b0").get<double>();
        p.envelope.R = env.at("R").get<double>();
        p.envelope.sigma = env.at("sigma").get<double>();
        p.envelope.k = env.at("k").get<int>();
        p.envelope.n = p.n;
        p.asymptotic_coeff = meta.at("asymptotic_coeff").get<double>();
        p.f0 = meta.at("f0").get<double>();
        p.log_zero_radius = meta.at("log_zero_radius").get<double>();
        p.mass_total = meta.at("mass_total").get<double>();
        p.lambda3_total = meta.at("lambda3_total").get<double>();
        p.K_pref = meta.value("K_pref", 0.0);
        p.f_end = meta.value("f_end", 0.0);
        p.Mkin_total = meta.value("Mkin_total", 0.0);
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(std::string("profile sidecar: ") + e.what());
    }
    if (p.n != 2 && p.n != 3)
        throw validation_error("profile sidecar: n must be 2 or 3");

    std::istringstream csv(io::read_text(csv_path));
    std::string line;
    if (!std::getline(csv, line) || line != "r,f,g,V0,V3")
        throw validation_error("profile table: expected header r,f,g,V0,V3");
    std::vector<double> r, f, g, V0, V3;
    std::size_t lineno = 1;
    while (std::getline(csv, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::array<double, 5> vals{};
        const char* s = line.c_str();
        char* end = nullptr;
        for (int c = 0; c < 5; ++c) {
            vals[std::size_t(c)] = std::strtod(s, &end);
            if (end == s)
                throw validation_error("profile table: bad number on line " +
                                       std::to_string(lineno));
            s = end;
            if (c < 4) {
                if (*s != ',')
                    throw validation_error("profile table: expected 5 columns on line " +
                                           std::to_string(lineno));
                ++s;
            }
        }
        r.push_back(vals[0]);
        f.push_back(vals[1]);
        g.push_back(vals[2]);
        V0.push_back(vals[3]);
        V3.push_back(vals[4]);
    }
    if (r.size() < 4)
        throw validation_error("profile table: too few rows");

    p.r_grid = r;
    p.f_samples = f;
    p.g_samples = g;
    p.V0_samples = V0;
    p.V3_samples = V3;
    p.sp_f = CubicSpline(r, f);
    p.sp_g = CubicSpline(r, g);
    p.sp_V0 = CubicSpline(r, V0);
    p.sp_V3 = CubicSpline(r, V3);
    return p;
}

} // namespace tgr::linfield
