// Command-line front end: parses flags/config, dispatches to the library
// modules, and emits CSV/JSON with 17-significant-digit serialization.
// Exit codes: 0 success, 2 validation error (bad flags, config keys, or
// parameter domains), 3 numerical failure.
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "tachyon/errors.hpp"
#include "tachyon/geodesic.hpp"
#include "tachyon/io.hpp"
#include "tachyon/kinematics.hpp"
#include "tachyon/linfield.hpp"
#include "tachyon/orbits.hpp"
#include "tachyon/parallel.hpp"
#include "tachyon/quadrature.hpp"
#include "tachyon/spacetime.hpp"
#include "tachyon/verify.hpp"

namespace {

using namespace tgr;
using spacetime::MetricSpec;

constexpr double pi = 3.14159265358979323846;

struct SourceOptions {
    std::string shape = "top_hat";
    double b0 = 1e-4;
    double R = 1.0;
    double sigma = 1.0;
    int k = 2;
    int n = 2;
    double flow_speed = 2.0;
    int grid_points = 4096;
};

void register_source(CLI::App* sub, SourceOptions& s) {
    sub->add_option("--shape", s.shape, "Source envelope shape")
        ->capture_default_str()
        ->check(CLI::IsMember({"top_hat", "gaussian", "poly_cutoff"}));
    sub->add_option("--b0", s.b0, "Envelope amplitude")->capture_default_str();
    sub->add_option("--R", s.R, "Envelope support radius (top_hat, poly_cutoff)")
        ->capture_default_str();
    sub->add_option("--sigma", s.sigma, "Gaussian envelope width")->capture_default_str();
    sub->add_option("--poly-k", s.k, "Polynomial cutoff power")->capture_default_str();
    sub->add_option("--n", s.n, "Spatial dimension of the reduction (2 cylindrical, 3 spherical)")
        ->capture_default_str()
        ->check(CLI::IsMember({2, 3}));
    sub->add_option("--flow-speed", s.flow_speed, "Circular flow speed of the source")
        ->capture_default_str();
    sub->add_option("--grid-points", s.grid_points, "Radial grid points of the field solve")
        ->capture_default_str()
        ->check(CLI::Range(16, 1 << 20));
}

linfield::SourceEnvelope build_envelope(const SourceOptions& s) {
    linfield::SourceEnvelope env;
    if (s.shape == "top_hat")
        env.shape = linfield::SourceEnvelope::Shape::top_hat;
    else if (s.shape == "gaussian")
        env.shape = linfield::SourceEnvelope::Shape::gaussian;
    else
        env.shape = linfield::SourceEnvelope::Shape::poly_cutoff;
    env.b0 = s.b0;
    env.R = s.R;
    env.sigma = s.sigma;
    env.k = s.k;
    env.n = s.n;
    return env;
}

linfield::ProfilePtr build_profile(const SourceOptions& s, double G) {
    const auto stress = linfield::build_stress(build_envelope(s), s.flow_speed);
    return std::make_shared<const linfield::FieldProfile>(
        linfield::solve_fg(stress, G, s.grid_points));
}

struct MetricOptions {
    std::string family = "schwarzschild";
    // expanding universe
    std::string scale_model = "power_law";
    double p = 2.0 / 3.0;
    double H = 0.1;
    double a0 = 1.0;
    int curvature = 0;
    double curvature_radius = 1.0;
    // black hole
    double rs = 1.0;
    // cylinder families
    double alpha = 1.0;
    double ca = 1.0, cb = 1.0, cc = 1.0;
    double eps_smooth = 1e-3;
};

void register_metric(CLI::App* sub, MetricOptions& m, SourceOptions& s) {
    sub->add_option("--metric", m.family, "Metric family")
        ->capture_default_str()
        ->check(CLI::IsMember({"rw", "schwarzschild", "cylinder", "smoothed", "weak"}));
    sub->add_option("--scale-model", m.scale_model, "rw: scale factor model")
        ->capture_default_str()
        ->check(CLI::IsMember({"power_law", "exponential"}));
    sub->add_option("--p", m.p, "rw: power-law exponent of a(t)")->capture_default_str();
    sub->add_option("--hubble", m.H, "rw: exponential-model Hubble rate")->capture_default_str();
    sub->add_option("--a0", m.a0, "rw: scale factor normalization")->capture_default_str();
    sub->add_option("--curvature", m.curvature, "rw: spatial curvature sign")
        ->capture_default_str()
        ->check(CLI::IsMember({-1, 0, 1}));
    sub->add_option("--curvature-radius", m.curvature_radius, "rw: curvature radius R")
        ->capture_default_str();
    sub->add_option("--rs", m.rs, "schwarzschild: horizon radius")->capture_default_str();
    sub->add_option("--alpha", m.alpha, "cylinder families: exponent parameter")
        ->capture_default_str();
    sub->add_option("--metric-a", m.ca, "cylinder: g00 coefficient a")->capture_default_str();
    sub->add_option("--metric-b", m.cb, "cylinder: g11 coefficient b")->capture_default_str();
    sub->add_option("--metric-c", m.cc, "cylinder: g33 coefficient c")->capture_default_str();
    sub->add_option("--eps-smooth", m.eps_smooth, "smoothed cylinder: axis scale epsilon")
        ->capture_default_str();
    register_source(sub, s); // weak-field metrics are built from a source
}

MetricSpec build_metric(const MetricOptions& m, const SourceOptions& s, double G) {
    if (m.family == "rw") {
        spacetime::RobertsonWalker rw;
        rw.scale_model = m.scale_model == "power_law"
                             ? spacetime::RobertsonWalker::ScaleModel::power_law
                             : spacetime::RobertsonWalker::ScaleModel::exponential;
        rw.p = m.p;
        rw.H = m.H;
        rw.a0 = m.a0;
        rw.curvature = m.curvature;
        rw.curvature_radius = m.curvature_radius;
        return MetricSpec{rw};
    }
    if (m.family == "schwarzschild") {
        spacetime::Schwarzschild sch;
        sch.r_s = m.rs;
        return MetricSpec{sch};
    }
    if (m.family == "cylinder") {
        spacetime::CylindricalPowerLaw cyl;
        cyl.a = m.ca;
        cyl.b = m.cb;
        cyl.c = m.cc;
        cyl.alpha = m.alpha;
        return MetricSpec{cyl};
    }
    if (m.family == "smoothed") {
        spacetime::SmoothedCylinder sm;
        sm.a = m.ca;
        sm.b = m.cb;
        sm.c = m.cc;
        sm.alpha = m.alpha;
        sm.eps_smooth = m.eps_smooth;
        return MetricSpec{sm};
    }
    return MetricSpec{spacetime::LinearizedStatic{build_profile(s, G), s.n}};
}

const char* stop_name(geodesic::StopReason r) {
    switch (r) {
        case geodesic::StopReason::span_end: return "span_end";
        case geodesic::StopReason::domain_exit: return "domain_exit";
        case geodesic::StopReason::step_underflow: return "step_underflow";
        default: return "step_limit";
    }
}

// ---------------------------------------------------------------------------

struct GeodesicCmd {
    MetricOptions metric;
    SourceOptions source;
    std::vector<double> x{0.0, 6.0, pi / 2.0, 0.0};
    std::vector<double> v{1.0, 1.6, 0.0, 0.1};
    double tau0 = 0.0, tau1 = 10.0, tol = 1e-10;
    std::string out = "-";
};

int run_geodesic(const GeodesicCmd& c, double G) {
    const MetricSpec spec = build_metric(c.metric, c.source, G);
    const Vec4 x{c.x[0], c.x[1], c.x[2], c.x[3]};
    const Vec4 v{c.v[0], c.v[1], c.v[2], c.v[3]};
    const auto s0 = geodesic::make_state(spec, x, v);
    const auto traj = geodesic::integrate(spec, s0, c.tau0, c.tau1, c.tol);
    geodesic::trajectory_csv(traj, spec, c.out);
    std::fprintf(stderr,
                 "geodesic: Q=%+d steps=%zu stop=%s max_q_drift=%.3e "
                 "max_charge_drift=%.3e%s%s\n",
                 s0.q_class, traj.states.size(), stop_name(traj.stop),
                 traj.max_q_drift, traj.max_charge_drift,
                 traj.stop_detail.empty() ? "" : " detail: ",
                 traj.stop_detail.c_str());
    if (traj.stop == geodesic::StopReason::step_underflow ||
        traj.stop == geodesic::StopReason::step_limit)
        throw numerical_error("integration halted before the span end (" +
                              traj.stop_detail + ")");
    return 0;
}

struct DeflectCmd {
    double rs = 1.0, v = 2.0;
    int Q = -1;
    std::vector<double> b{10.0};
    std::string out = "-";
};

int run_deflect(const DeflectCmd& c) {
    std::vector<orbits::ScatteringSetup> setups;
    for (double b : c.b) {
        orbits::ScatteringSetup s;
        s.r_s = c.rs;
        s.v = c.v;
        s.b_impact = b;
        s.Q = c.Q;
        setups.push_back(s);
    }
    const auto rows = orbits::deflection_scan(setups);
    orbits::deflect_csv(rows, c.out);
    return 0;
}

struct FieldCmd {
    SourceOptions source;
    std::string out_base = "profile";
};

int run_field(const FieldCmd& c, double G) {
    const auto prof = build_profile(c.source, G);
    linfield::write_profile(*prof, c.out_base + ".csv", c.out_base + ".json");
    io::JsonWriter w;
    w.begin_object();
    w.field("n", prof->n);
    w.field("G", prof->G);
    w.field("shape", prof->envelope.shape_name());
    w.field("f0", prof->f0);
    w.field("mass_total", prof->mass_total);
    w.field("lambda3_total", prof->lambda3_total);
    w.field("asymptotic_coeff", prof->asymptotic_coeff);
    w.field("log_zero_radius", prof->log_zero_radius);
    w.field("csv", c.out_base + ".csv");
    w.field("json", c.out_base + ".json");
    w.end_object();
    std::cout << w.str() << "\n";
    return 0;
}

struct OrbitCmd {
    SourceOptions source;
    std::string analysis = "search";
    double oscillations = 12.0;
    double tol = 1e-10;
    double gamma = 1.0, L = 1.0;
    std::string out = "-";
};

int run_orbit(const OrbitCmd& c, double G) {
    const auto prof = build_profile(c.source, G);
    io::JsonWriter w;
    if (c.analysis == "spherical") {
        geodesic::ConservedCharges ch;
        ch.Q = -1;
        ch.charge_gamma = c.gamma;
        ch.L = c.L;
        ch.script_E = 0.5 * (c.gamma * c.gamma + 1.0);
        const auto verdict = orbits::spherical_bound_analysis(*prof, ch);
        w.begin_object();
        w.field("analysis", "spherical");
        w.field("no_bound_possible", verdict.no_bound_possible);
        w.field("reason", verdict.reason);
        w.field("gamma", c.gamma);
        w.field("L", c.L);
        w.field("script_E", verdict.curve.script_E);
        w.end_object();
    } else {
        const auto orbit = orbits::bound_orbit_search(prof);
        w.begin_object();
        w.field("analysis", "search");
        w.field("found", orbit.found);
        if (orbit.found) {
            const MetricSpec spec{spacetime::LinearizedStatic{prof, c.source.n}};
            const auto lin = std::get<spacetime::LinearizedStatic>(spec);
            const auto rdot2 = [&](double r) {
                const auto fl = lin.fields(r);
                return (orbit.gamma * orbit.gamma / (1.0 + fl.At) -
                        orbit.kappa * orbit.kappa / (1.0 - fl.Dz) -
                        orbit.L * orbit.L / ((1.0 - fl.Ct) * r * r) + 1.0) /
                       (1.0 - fl.Br);
            };
            const double inset = 1e-9 * (orbit.r_apo - orbit.r_peri);
            const double t_half = tanh_sinh(
                [&](double r) { return 1.0 / std::sqrt(std::max(rdot2(r), 1e-300)); },
                orbit.r_peri + inset, orbit.r_apo - inset, 1e-8);
            const double span = 2.0 * t_half * (c.oscillations + 0.6);
            const auto s0 = orbits::bound_orbit_state(spec, orbit, orbit.r_star);
            const auto traj = geodesic::integrate(spec, s0, 0.0, span, c.tol);
            int crossings = 0;
            double prev = traj.states.front().velocity[1];
            double rmin = traj.states.front().point.r(), rmax = rmin;
            for (const auto& st : traj.states) {
                const double rd = st.velocity[1];
                if (rd != 0.0 && prev != 0.0 && (rd > 0) != (prev > 0)) ++crossings;
                if (rd != 0.0) prev = rd;
                rmin = std::min(rmin, st.point.r());
                rmax = std::max(rmax, st.point.r());
            }
            w.field("gamma", orbit.gamma);
            w.field("kappa", orbit.kappa);
            w.field("L", orbit.L);
            w.field("script_E", orbit.script_E);
            w.field("r_peri", orbit.r_peri);
            w.field("r_apo", orbit.r_apo);
            w.field("r_star", orbit.r_star);
            w.field("margin", orbit.margin);
            w.field("radial_half_period", t_half);
            w.field("oscillations", crossings / 2);
            w.field("r_min_seen", rmin);
            w.field("r_max_seen", rmax);
            w.field("max_q_drift", traj.max_q_drift);
            w.field("max_charge_drift", traj.max_charge_drift);
            w.field("stop", stop_name(traj.stop));
        }
        w.end_object();
    }
    if (c.out == "-")
        std::cout << w.str() << "\n";
    else
        io::write_text(c.out, w.str() + "\n");
    return 0;
}

struct SpectrumCmd {
    double E0 = 1.0, m = 0.0;
    int samples = 400;
    std::string out = "-";
};

struct CosmoCmd {
    double T1 = 1e-2, m = 1.0, a1 = 1.0, a_end = 1.3;
    int samples = 200;
    std::string statistics = "fermi";
    std::string out = "-";
};

int run_cosmo(const CosmoCmd& c) {
    kinematics::GasState init;
    init.T = c.T1;
    init.m = c.m;
    init.a_scale = c.a1;
    init.statistics = c.statistics == "fermi" ? kinematics::Statistics::fermi
                                              : kinematics::Statistics::bose;
    const auto full =
        kinematics::gas_evolution(init, c.a_end, kinematics::GasMode::full_ode, c.samples);
    const auto closed = kinematics::gas_evolution(
        init, c.a_end, kinematics::GasMode::low_T_closed_form, c.samples);
    kinematics::cosmo_csv(full, closed, c.out);
    std::fprintf(stderr,
                 "cosmo: closed-form zero at a/a1=%.17g; full ODE %s%s\n",
                 closed.domain_end / c.a1,
                 full.quenched ? "quenched at a=" : "not quenched",
                 full.quenched ? io::g17(full.a_quench).c_str() : "");
    return 0;
}

struct CausalityCmd {
    double x0 = 1.0, v = 0.5, V = 2.0;
};

int run_causality(const CausalityCmd& c) {
    kinematics::ExchangeScenario sc{c.x0, c.v, c.V};
    const auto t = kinematics::exchange_times(sc);
    io::JsonWriter w;
    w.begin_object();
    w.field("dt_earth", t.dt_earth);
    w.field("dt_ship", t.dt_ship);
    w.field("reversed", t.reversed);
    w.end_object();
    std::cout << w.str() << "\n";
    return 0;
}

struct VerifyCmd {
    std::string only;
    std::uint64_t seed = 20260814ull;
    std::string json_path;
    bool list = false;
};

int run_verify(const VerifyCmd& c) {
    if (c.list) {
        for (int i = 1; i <= verify::criterion_count(); ++i)
            std::printf("%2d  %-32s %s\n", i, verify::criterion_name(i).c_str(),
                        verify::criterion_anchor(i).c_str());
        return 0;
    }
    std::vector<int> ids;
    if (!c.only.empty()) {
        ids = verify::match_criteria(c.only);
        if (ids.empty())
            throw validation_error("verify: no criterion matches '" + c.only + "'");
    }
    const auto results = verify::run_suite(ids, c.seed);
    std::cout << verify::render_table(results);
    if (!c.json_path.empty())
        io::write_text(c.json_path, verify::render_json(results, c.seed) + "\n");
    for (const auto& r : results)
        if (!r.pass) return 1;
    return 0;
}

void print_defaults(const CLI::App& app) {
    std::printf("%-10s %-22s %-14s %s\n", "command", "option", "default", "meaning");
    const auto dump = [](const CLI::App* cmd, const std::string& label) {
        for (const CLI::Option* opt : cmd->get_options()) {
            if (opt->get_name() == "--help" || opt->get_name() == "--print-defaults")
                continue;
            std::printf("%-10s %-22s %-14s %s\n", label.c_str(),
                        opt->get_name().c_str(), opt->get_default_str().c_str(),
                        opt->get_description().c_str());
        }
    };
    dump(&app, "(global)");
    for (const CLI::App* sub : app.get_subcommands({}))
        dump(sub, sub->get_name());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Tachyon kinematics and weak-field general relativity workbench.\n"
        "Env: TACHYON_GR_THREADS caps the worker pool of parallel sweeps."};
    app.fallthrough();
    app.require_subcommand(0, 1);
    app.set_config("--config", "",
                   "Read options from a key-value file with [subcommand] sections; "
                   "command-line flags override file values");
    app.allow_config_extras(false);

    double G = 1.0;
    bool defaults = false;
    app.add_option("--grav-constant", G, "Newton constant G used by field solves")
        ->capture_default_str();
    app.add_flag("--print-defaults", defaults, "Dump the defaults table and exit");

    GeodesicCmd geo;
    auto* sub_geo = app.add_subcommand("geodesic", "Integrate one geodesic and export the trajectory CSV");
    register_metric(sub_geo, geo.metric, geo.source);
    sub_geo->add_option("--x", geo.x, "Start coordinates t,r,theta,w")
        ->expected(4)->delimiter(',');
    sub_geo->add_option("--v", geo.v, "Start velocity dt,dr,dtheta,dw")
        ->expected(4)->delimiter(',');
    sub_geo->add_option("--tau0", geo.tau0, "Affine parameter start")->capture_default_str();
    sub_geo->add_option("--tau1", geo.tau1, "Affine parameter end")->capture_default_str();
    sub_geo->add_option("--tol", geo.tol, "Integrator tolerance")->capture_default_str();
    sub_geo->add_option("--out", geo.out, "CSV path or - for stdout")->capture_default_str();

    DeflectCmd defl;
    auto* sub_defl = app.add_subcommand("deflect", "Schwarzschild deflection for any causal class");
    sub_defl->add_option("--rs", defl.rs, "Horizon radius")->capture_default_str();
    sub_defl->add_option("--v", defl.v, "Asymptotic speed (v>1 for Q=-1, v<1 for Q=+1, v=1 null)")
        ->capture_default_str();
    sub_defl->add_option("--Q", defl.Q, "Causal class")->capture_default_str()
        ->check(CLI::IsMember({-1, 0, 1}));
    sub_defl->add_option("--b", defl.b, "Impact parameter(s), comma separated")
        ->delimiter(',');
    sub_defl->add_option("--out", defl.out, "CSV path or - for stdout")->capture_default_str();

    FieldCmd fld;
    auto* sub_fld = app.add_subcommand("field", "Solve the weak-field profile and export CSV+JSON");
    register_source(sub_fld, fld.source);
    sub_fld->add_option("--out-base", fld.out_base, "Output base path (writes .csv and .json)")
        ->capture_default_str();

    OrbitCmd orb;
    auto* sub_orb = app.add_subcommand("orbit", "Bound-orbit search (n=2) or spherical no-bound verdict (n=3)");
    register_source(sub_orb, orb.source);
    sub_orb->add_option("--analysis", orb.analysis, "Analysis kind")
        ->capture_default_str()->check(CLI::IsMember({"search", "spherical"}));
    sub_orb->add_option("--oscillations", orb.oscillations, "Radial oscillations to integrate")
        ->capture_default_str()->check(CLI::PositiveNumber);
    sub_orb->add_option("--tol", orb.tol, "Integrator tolerance")->capture_default_str();
    sub_orb->add_option("--gamma", orb.gamma, "spherical: time-translation charge")
        ->capture_default_str();
    sub_orb->add_option("--L", orb.L, "spherical: angular momentum")->capture_default_str();
    sub_orb->add_option("--out", orb.out, "JSON path or - for stdout")->capture_default_str();

    SpectrumCmd spe;
    auto* sub_spe = app.add_subcommand("spectrum", "Beta endpoint spectra for the three neutrino hypotheses");
    sub_spe->add_option("--E0", spe.E0, "Endpoint energy")->capture_default_str();
    sub_spe->add_option("--m", spe.m, "Neutrino mass scale")->capture_default_str();
    sub_spe->add_option("--samples", spe.samples, "Rows in the CSV")->capture_default_str()
        ->check(CLI::Range(2, 1 << 22));
    sub_spe->add_option("--out", spe.out, "CSV path or - for stdout")->capture_default_str();

    CosmoCmd cos;
    auto* sub_cos = app.add_subcommand("cosmo", "Tachyon-gas temperature evolution under expansion");
    sub_cos->add_option("--T1", cos.T1, "Initial temperature")->capture_default_str();
    sub_cos->add_option("--m", cos.m, "Tachyon mass scale")->capture_default_str();
    sub_cos->add_option("--a1", cos.a1, "Initial scale factor")->capture_default_str();
    sub_cos->add_option("--a-end", cos.a_end, "Final scale factor")->capture_default_str();
    sub_cos->add_option("--samples", cos.samples, "Rows in the CSV")->capture_default_str()
        ->check(CLI::Range(2, 1 << 22));
    sub_cos->add_option("--statistics", cos.statistics, "Occupancy statistics")
        ->capture_default_str()->check(CLI::IsMember({"fermi", "bose"}));
    sub_cos->add_option("--out", cos.out, "CSV path or - for stdout")->capture_default_str();

    CausalityCmd cau;
    auto* sub_cau = app.add_subcommand("causality", "Tachyon-exchange timing between moving frames");
    sub_cau->add_option("--x0", cau.x0, "Separation at emission")->capture_default_str();
    sub_cau->add_option("--v", cau.v, "Relative frame speed (|v|<1)")->capture_default_str();
    sub_cau->add_option("--V", cau.V, "Signal speed (>1)")->capture_default_str();

    VerifyCmd ver;
    auto* sub_ver = app.add_subcommand("verify", "Run the acceptance suite (PASS/FAIL per criterion)");
    sub_ver->add_option("--only", ver.only, "Run only criteria whose number or name matches");
    sub_ver->add_option("--seed", ver.seed, "Seed for the randomized draws")->capture_default_str();
    sub_ver->add_option("--json", ver.json_path, "Also write a JSON report to this path");
    sub_ver->add_flag("--list", ver.list, "List criteria and exit");

    try {
        app.parse(argc, argv);
        if (defaults) {
            print_defaults(app);
            return 0;
        }
        if (sub_geo->parsed()) return run_geodesic(geo, G);
        if (sub_defl->parsed()) return run_deflect(defl);
        if (sub_fld->parsed()) return run_field(fld, G);
        if (sub_orb->parsed()) return run_orbit(orb, G);
        if (sub_spe->parsed()) {
            kinematics::spectrum_csv(spe.E0, spe.m, spe.samples, spe.out);
            return 0;
        }
        if (sub_cos->parsed()) return run_cosmo(cos);
        if (sub_cau->parsed()) return run_causality(cau);
        if (sub_ver->parsed()) return run_verify(ver);
        std::cerr << app.help();
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const tgr::validation_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const tgr::numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    }
}
