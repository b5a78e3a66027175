#pragma once

// Shared builders for the metric catalog used across the test files.

#include <memory>

#include "tachyon/linfield.hpp"
#include "tachyon/spacetime.hpp"

namespace fixtures {

using namespace tgr;

inline linfield::ProfilePtr solved_profile(linfield::SourceEnvelope::Shape shape,
                                           int n, double b0, double flow_speed,
                                           int grid_points, double G = 1.0) {
    linfield::SourceEnvelope env;
    env.shape = shape;
    env.n = n;
    env.b0 = b0;
    env.R = 1.0;
    env.sigma = 1.0;
    const auto stress = linfield::build_stress(env, flow_speed);
    return std::make_shared<const linfield::FieldProfile>(
        linfield::solve_fg(stress, G, grid_points));
}

inline spacetime::MetricSpec weak_spherical(double b0 = 1e-4, int grid = 1024) {
    return spacetime::LinearizedStatic{
        solved_profile(linfield::SourceEnvelope::Shape::gaussian, 3, b0, 2.0, grid), 3};
}

inline spacetime::MetricSpec weak_cylindrical(double b0 = 1e-4, int grid = 1024) {
    return spacetime::LinearizedStatic{
        solved_profile(linfield::SourceEnvelope::Shape::top_hat, 2, b0, 2.0, grid), 2};
}

} // namespace fixtures
