#include "qsnr/linalg.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qsnr::linalg {

int worker_threads() {
#ifdef _OPENMP
  if (const char* env = std::getenv("QSNR_THREADS")) {
    try {
      int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (...) {
      // fall through to the OpenMP default on an unparsable value
    }
  }
  return omp_get_max_threads();
#else
  return 1;
#endif
}

int apply_thread_env() {
  int n = worker_threads();
#ifdef _OPENMP
  omp_set_num_threads(n);
#endif
  return n;
}

}  // namespace qsnr::linalg
