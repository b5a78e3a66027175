#pragma once

#include <stdexcept>
#include <string>

namespace tgr {

// Bad input: wrong domain, malformed spec, out-of-range coordinate.
// CLI maps this to exit code 2.
struct validation_error : std::invalid_argument {
    explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

// The input was well formed but a numerical procedure failed to deliver:
// non-convergent quadrature, step underflow, divergent integral.
// CLI maps this to exit code 3.
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace tgr
