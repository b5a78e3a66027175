#pragma once

#include <cstddef>
#include <functional>

namespace tgr {

// Batch kernels come in two flavors: an OpenMP-parallel path used by default
// and a serial reference path kept for testing.  Per-item work never shares
// state, so the two paths produce bitwise-identical results; the test suite
// and the benchmark tool rely on that.
enum class Exec { serial, parallel };

// Worker cap: min(hardware, TACHYON_GR_THREADS if set).
int worker_count();

// Run fn(i) for i in [0, n).  Exec::parallel uses OpenMP when compiled in,
// otherwise falls back to the serial loop.
void parallel_for(std::size_t n, Exec mode, const std::function<void(std::size_t)>& fn);

} // namespace tgr
