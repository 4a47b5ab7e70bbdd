#include "evident/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace evident::par {

int thread_count() {
    const char* env = std::getenv("EVIDENT_THREADS");
    if (env != nullptr) {
        try {
            const int n = std::stoi(env);
            if (n > 0) return n;
        } catch (const std::exception&) {
            // fall through to auto
        }
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

Mode default_mode() {
#ifdef _OPENMP
    return Mode::openmp;
#else
    return Mode::serial;
#endif
}

void for_each_index(std::size_t n, Mode mode, const std::function<void(std::size_t)>& body) {
#ifdef _OPENMP
    if (mode == Mode::openmp) {
        const int threads = thread_count();
        const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 64) num_threads(threads)
        for (long long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
        return;
    }
#else
    (void)mode;
#endif
    for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace evident::par
