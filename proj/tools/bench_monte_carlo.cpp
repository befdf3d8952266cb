// Compares the serial Monte Carlo reference against the OpenMP batch runner
// and checks they agree bit for bit.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "vgame/monte_carlo.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

template <typename Fn>
double seconds_of(const Fn& fn, vgame::SweepResult& out) {
  const auto start = std::chrono::steady_clock::now();
  out = fn();
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;
  return elapsed.count();
}

}  // namespace

int main(int argc, char** argv) {
  long long iterations = 20000;
  if (argc > 1) iterations = std::atoll(argv[1]);

  vgame::VotingGameConfig config;
  config.target_is_malicious = true;
  config.q_attack = 0.7;

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif
  std::printf("iterations per batch: %lld\n", iterations);
  std::printf("%-8s %10s %10s %9s\n", "b", "serial[s]", "openmp[s]", "speedup");

  for (double benefit : {1.1, 1.5, 3.0, 8.0}) {
    config.params.b = benefit;
    vgame::SweepResult serial_result, parallel_result;
    const double t_serial = seconds_of(
        [&] { return vgame::monte_carlo_serial(config, iterations); }, serial_result);
    const double t_parallel = seconds_of(
        [&] { return vgame::monte_carlo(config, iterations); }, parallel_result);
    if (!(serial_result == parallel_result)) {
      std::fprintf(stderr, "mismatch between serial and parallel results at b=%g\n",
                   benefit);
      return 1;
    }
    std::printf("%-8g %10.3f %10.3f %8.2fx\n", benefit, t_serial, t_parallel,
                t_serial / t_parallel);
  }
  std::puts("serial and parallel results identical");
  return 0;
}
