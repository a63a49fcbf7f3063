#pragma once

namespace catsim {

// Applies the CATSIM_THREADS cap (0 or unset = automatic) to OpenMP and
// Eigen. Returns the cap, or 0 when automatic.
int apply_thread_cap();

}  // namespace catsim
