// Benchmark: the fibered (OpenMP-parallel) fundamental-domain enumerator
// against the serial box-walking reference, plus end-to-end class-count
// timings.  An optional integer argument scales the class-count heights.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qc/counting.hpp"

using namespace qc;

namespace {

template <typename Fn>
double time_ms(Fn&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  long scale = argc > 1 ? std::atol(argv[1]) : 1;
  if (scale < 1) scale = 1;
#ifdef _OPENMP
  std::printf("threads: %d\n\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (serial build)\n\n");
#endif

  // Parallel enumerator against the serial reference walker (which is
  // deliberately naive, so the comparison heights stay modest).
  std::printf("%-12s %6s %10s %12s %12s %8s %s\n", "f", "X", "members",
              "parallel ms", "serial ms", "speedup", "agree");
  const struct {
    QuadForm f;
    long X;
  } pairs[] = {{{1, 0, 1}, 200}, {{1, 1, 0}, 80}, {{1, 1, -1}, 100}};
  for (const auto& p : pairs) {
    std::vector<QuarticForm> fast, slow;
    double t_fast = time_ms([&] { fast = enumerate_S(p.f, p.X); });
    double t_slow = time_ms([&] { slow = enumerate_S_reference(p.f, p.X); });
    std::printf("%-12s %6ld %10zu %12.1f %12.1f %8.2f %s\n",
                to_string(p.f).c_str(), p.X, fast.size(), t_fast, t_slow,
                t_fast > 0 ? t_slow / t_fast : 0.0,
                fast == slow ? "yes" : "NO");
  }

  // End-to-end class counting at larger heights (parallel path only).
  std::printf("\n%s\n", csv_header().c_str());
  const struct {
    QuadForm f;
    long X;
  } counts[] = {{{1, 0, 1}, 2000}, {{1, 1, 0}, 1000}, {{1, 1, -1}, 4000}};
  for (const auto& c : counts) {
    ClassCountReport rep = count_classes(c.f, Int(c.X * scale));
    std::printf("%s\n", csv_row(rep).c_str());
  }
  return 0;
}
