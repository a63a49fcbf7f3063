#include "catsim/threads.hpp"

#include <Eigen/Core>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace catsim {

int apply_thread_cap() {
    const char* env = std::getenv("CATSIM_THREADS");
    if (!env || *env == '\0') return 0;
    int n = 0;
    try {
        n = std::stoi(env);
    } catch (...) {
        return 0;
    }
    if (n <= 0) return 0;
#ifdef _OPENMP
    omp_set_num_threads(n);
#endif
    Eigen::setNbThreads(n);
    return n;
}

}  // namespace catsim
