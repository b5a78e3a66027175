// Benchmark of the batch kernels: OpenMP path against the serial reference.
// Per-item work is independent, so both paths must produce bitwise-identical
// results; the table reports timing and that identity check.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "tachyon/geodesic.hpp"
#include "tachyon/orbits.hpp"
#include "tachyon/parallel.hpp"
#include "tachyon/spacetime.hpp"

namespace {

using namespace tgr;
using spacetime::MetricSpec;

constexpr double pi = 3.14159265358979323846;

double now_s() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

double uniform(std::mt19937_64& eng, double lo, double hi) {
    return lo + (hi - lo) * double(eng() >> 11) * 0x1.0p-53;
}

bool same_traj(const geodesic::Trajectory& a, const geodesic::Trajectory& b) {
    if (a.tau != b.tau || a.stop != b.stop) return false;
    if (a.max_q_drift != b.max_q_drift) return false;
    for (std::size_t i = 0; i < a.states.size(); ++i)
        if (a.states[i].point.x != b.states[i].point.x ||
            a.states[i].velocity != b.states[i].velocity)
            return false;
    return true;
}

void report(const char* name, std::size_t items, double ts, double tp, bool same) {
    std::printf("%-22s %6zu items  serial %8.3fs  parallel %8.3fs  speedup %5.2fx  identical %s\n",
                name, items, ts, tp, ts / tp, same ? "yes" : "NO");
}

} // namespace

int main() {
    std::printf("worker pool: %d thread(s)\n", worker_count());

    // geodesic batch: tachyons around a black hole
    spacetime::Schwarzschild sch;
    sch.r_s = 1.0;
    const MetricSpec spec{sch};
    std::mt19937_64 eng(41);
    std::vector<geodesic::GeodesicState> starts;
    while (starts.size() < 96) {
        const Vec4 x{0.0, uniform(eng, 6.0, 12.0), pi / 2.0, uniform(eng, 0.0, 2.0 * pi)};
        const Mat4 g = spacetime::metric_components(spec, x);
        const double s = uniform(eng, 1.3, 2.0);
        const double dr = uniform(eng, -0.4, 0.4);
        const double dphi = std::sqrt(s * s - dr * dr);
        Vec4 v{0.0, dr / std::sqrt(-g[1][1]), 0.0, dphi / std::sqrt(-g[3][3])};
        v[0] = std::sqrt((s * s - 1.0) / g[0][0]);
        starts.push_back(geodesic::make_state(spec, x, v));
    }
    double t0 = now_s();
    const auto ser = geodesic::integrate_batch(spec, starts, 0.0, 40.0, 1e-11, Exec::serial);
    const double t_ser = now_s() - t0;
    t0 = now_s();
    const auto par = geodesic::integrate_batch(spec, starts, 0.0, 40.0, 1e-11, Exec::parallel);
    const double t_par = now_s() - t0;
    bool same = ser.size() == par.size();
    for (std::size_t i = 0; same && i < ser.size(); ++i) same = same_traj(ser[i], par[i]);
    report("integrate_batch", starts.size(), t_ser, t_par, same);

    // deflection sweep across impact parameters and causal classes
    std::vector<orbits::ScatteringSetup> setups;
    for (int q : {-1, 0, 1})
        for (int i = 0; i < 64; ++i) {
            orbits::ScatteringSetup s;
            s.Q = q;
            s.v = q == 0 ? 1.0 : (q == -1 ? 1.5 + 0.05 * i : 0.3 + 0.005 * i);
            s.b_impact = 50.0 + 10.0 * i;
            setups.push_back(s);
        }
    t0 = now_s();
    const auto rows_s = orbits::deflection_scan(setups, Exec::serial);
    const double d_ser = now_s() - t0;
    t0 = now_s();
    const auto rows_p = orbits::deflection_scan(setups, Exec::parallel);
    const double d_par = now_s() - t0;
    bool dsame = rows_s.size() == rows_p.size();
    for (std::size_t i = 0; dsame && i < rows_s.size(); ++i)
        dsame = rows_s[i].delta_phi_numeric == rows_p[i].delta_phi_numeric &&
                rows_s[i].abs_err == rows_p[i].abs_err;
    report("deflection_scan", setups.size(), d_ser, d_par, dsame);

    return same && dsame ? 0 : 1;
}
