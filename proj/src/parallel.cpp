#include "tachyon/parallel.hpp"

#include <cstdlib>

#ifdef TACHYON_HAS_OPENMP
#include <omp.h>
#endif

namespace tgr {

int worker_count() {
#ifdef TACHYON_HAS_OPENMP
    int n = omp_get_max_threads();
#else
    int n = 1;
#endif
    if (const char* env = std::getenv("TACHYON_GR_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0 && cap < n) n = cap;
    }
    return n;
}

void parallel_for(std::size_t n, Exec mode, const std::function<void(std::size_t)>& fn) {
#ifdef TACHYON_HAS_OPENMP
    if (mode == Exec::parallel && n > 1) {
        const int workers = worker_count();
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
        for (long long i = 0; i < (long long)n; ++i) fn((std::size_t)i);
        return;
    }
#else
    (void)mode;
#endif
    for (std::size_t i = 0; i < n; ++i) fn(i);
}

} // namespace tgr
