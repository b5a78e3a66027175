// Compiled together with the field solver sources and the fault-injection
// hook enabled (TACHYON_MUTATION_HOOKS).  Verifies that the identity checks
// the test suite leans on would actually catch a planted defect: scaling the
// g-equation prefactor by 1% must blow the f/g gauge identity past its
// acceptance bound, while the unmutated solve stays at rounding level.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "tachyon/linfield.hpp"

using namespace tgr::linfield;

namespace {

double gauge_residual(const FieldProfile& p) {
    double worst = 0.0, norm = 1e-300;
    const double lo = 0.05 * p.scale(), hi = 50.0 * p.scale();
    for (int i = 0; i < 160; ++i) {
        const double r = lo * std::pow(hi / lo, double(i) / 159.0);
        const double rn = std::pow(r, p.n);
        const double lhs = rn * p.f_prime(r);
        const double rhs =
            (p.n - 1) * (p.n * std::pow(r, p.n - 1) * p.g(r) + rn * p.g_prime(r));
        worst = std::max(worst, std::abs(lhs - rhs));
        norm = std::max({norm, std::abs(lhs), std::abs(rhs)});
    }
    return worst / norm;
}

FieldProfile solve_reference() {
    SourceEnvelope env;
    env.shape = SourceEnvelope::Shape::gaussian;
    env.n = 3;
    env.b0 = 1.0;
    return solve_fg(build_stress(env, 2.0), 1.0, 1024);
}

} // namespace

int main() {
    unsetenv("TACHYON_GR_MUTATE_PREFACTOR");
    const double clean = gauge_residual(solve_reference());

    setenv("TACHYON_GR_MUTATE_PREFACTOR", "1.01", 1);
    const double mutated = gauge_residual(solve_reference());
    unsetenv("TACHYON_GR_MUTATE_PREFACTOR");

    const bool clean_ok = clean < 1e-10;
    const bool caught = mutated > 1e-4;
    std::printf("gauge residual unmutated: %.3e (must be < 1e-10)\n", clean);
    std::printf("gauge residual with 1%% prefactor defect: %.3e (must exceed 1e-4)\n",
                mutated);
    std::printf("%s\n", clean_ok && caught ? "mutation detected" : "MUTATION MISSED");
    return clean_ok && caught ? 0 : 1;
}
