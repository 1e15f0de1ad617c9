// Benchmark comparing the OpenMP sweep kernels against their serial
// reference implementations. Verdicts are asserted equal; timings are
// wall-clock medians over --reps runs.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "posetflow/builders.hpp"
#include "posetflow/flow.hpp"
#include "posetflow/theorems.hpp"

using namespace posetflow;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
  std::vector<double> samples;
  for (int r = 0; r < reps; ++r) {
    auto start = std::chrono::steady_clock::now();
    fn();
    auto stop = std::chrono::steady_clock::now();
    samples.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
  }
  std::sort(samples.begin(), samples.end());
  return samples[samples.size() / 2];
}

struct Case {
  std::string name;
  std::function<bool(Parallelism)> run;  // returns the verdict
};

}  // namespace

int main(int argc, char** argv) {
  int reps = 3;
  for (int a = 1; a < argc; ++a) {
    if (std::strcmp(argv[a], "--reps") == 0 && a + 1 < argc) reps = std::atoi(argv[++a]);
  }

  SizeCaps caps;
  auto cube = boolean_lattice(8, caps);
  auto ball = hamming_ball({5, 5, 6}, caps);

  std::vector<Case> cases;
  cases.push_back({"lym_certify boolean_lattice(8)",
                   [&](Parallelism mode) { return lym_certify(cube, mode).lym; }});
  cases.push_back({"lym_certify hamming_ball(5,5,6)",
                   [&](Parallelism mode) { return lym_certify(ball, mode).lym; }});
  cases.push_back({"capacity sweep p,q<=6 rho<=6", [&](Parallelism mode) {
                     bool all = true;
                     for (int p = 1; p <= 6; ++p) {
                       for (int q = 1; q <= 6; ++q) {
                         for (int rho = 1; rho <= 6; ++rho) {
                           all = all && hamming_capacity_inequality({p, q, rho}, mode).holds;
                         }
                       }
                     }
                     return all;
                   }});
  cases.push_back({"harper_random_sweep(300)", [&](Parallelism mode) {
                     auto s = harper_random_sweep(300, 0, mode);
                     return s.capacity_violations == 0 && s.logconcavity_violations == 0;
                   }});

  std::printf("threads: %d, reps: %d\n", omp_get_max_threads(), reps);
  std::printf("%-36s %12s %12s %9s %7s\n", "case", "serial ms", "parallel ms", "speedup",
              "match");
  int mismatches = 0;
  for (auto& c : cases) {
    bool serial_verdict = true, parallel_verdict = true;
    double serial_ms =
        time_ms([&] { serial_verdict = c.run(Parallelism::serial); }, reps);
    double parallel_ms =
        time_ms([&] { parallel_verdict = c.run(Parallelism::parallel); }, reps);
    bool match = serial_verdict == parallel_verdict;
    mismatches += match ? 0 : 1;
    std::printf("%-36s %12.2f %12.2f %8.2fx %7s\n", c.name.c_str(), serial_ms, parallel_ms,
                serial_ms / (parallel_ms > 0 ? parallel_ms : 1), match ? "yes" : "NO");
  }
  return mismatches == 0 ? 0 : 1;
}
