#include "menger/parallel.hpp"

#include <algorithm>

#ifdef MENGER_HAVE_OPENMP
#include <omp.h>
#endif

namespace menger {

namespace {
int g_threads = 0;
}

void set_num_threads(int n) {
  g_threads = std::max(0, n);
#ifdef MENGER_HAVE_OPENMP
  if (g_threads > 0) omp_set_num_threads(g_threads);
#endif
}

int num_threads() {
#ifdef MENGER_HAVE_OPENMP
  return g_threads > 0 ? g_threads : omp_get_max_threads();
#else
  return 1;
#endif
}

int default_blocks(long n) { return static_cast<int>(std::clamp<long>(n / 4, 1, 64)); }

void for_blocks(long n, int blocks, const std::function<void(int, long, long)>& body) {
  blocks = std::max(1, blocks);
#ifdef MENGER_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
  for (int b = 0; b < blocks; ++b) {
    const long begin = n * b / blocks;
    const long end = n * (b + 1) / blocks;
    body(b, begin, end);
  }
}

}  // namespace menger
