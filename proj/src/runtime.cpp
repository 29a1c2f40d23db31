#include "interlock/runtime.hpp"

#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace interlock::runtime {

namespace {
int g_max_threads = 0;  // 0 = hardware default
bool g_progress = false;
}  // namespace

int max_threads() {
    if (g_max_threads > 0) return g_max_threads;
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_max_threads(int n) { g_max_threads = n < 0 ? 0 : n; }

bool progress_enabled() { return g_progress; }

void set_progress_enabled(bool on) { g_progress = on; }

void progress(const std::string& line) {
    if (!g_progress) return;
    std::fprintf(stderr, "%s\n", line.c_str());
    std::fflush(stderr);
}

}  // namespace interlock::runtime
