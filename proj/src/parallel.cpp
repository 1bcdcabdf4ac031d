#include "lieapp/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lieapp {

namespace {
bool g_parallel =
#ifdef _OPENMP
    true;
#else
    false;
#endif
}  // namespace

void configure_threads_from_env() {
#ifdef _OPENMP
  if (const char* env = std::getenv("LIEAPP_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) omp_set_num_threads(n);
    if (n == 1) g_parallel = false;
  }
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

bool parallel_enabled() { return g_parallel; }
void set_parallel_enabled(bool on) {
#ifdef _OPENMP
  g_parallel = on;
#else
  (void)on;
#endif
}

namespace par {

void for_each(int n, const std::function<void(int)>& body) {
  if (!parallel_enabled()) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) body(i);
#else
  for (int i = 0; i < n; ++i) body(i);
#endif
}

}  // namespace par

}  // namespace lieapp
