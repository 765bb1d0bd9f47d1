// Serial reference kernels vs their OpenMP versions.
//
//   bench_kernels [--members M] [--dim N] [--t T] [--reps R] [--samples S]

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <omp.h>

#include "qdesign/kernels.hpp"
#include "qdesign/mc_oracle.hpp"
#include "qdesign/moments.hpp"

namespace {

using Clock = std::chrono::steady_clock;

template <class F>
double best_of(int reps, F&& f, double& result) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    result = f();
    best = std::min(best, std::chrono::duration<double>(Clock::now() - t0).count());
  }
  return best;
}

void report(const char* name, double serial_s, double parallel_s, double a, double b) {
  std::printf("%-28s serial %9.4f s   parallel %9.4f s   speedup %6.2fx   |diff| %.2e\n", name,
              serial_s, parallel_s, serial_s / parallel_s, std::abs(a - b));
}

}  // namespace

int main(int argc, char** argv) {
  int members = 1500, dim = 4, t = 3, reps = 3;
  std::size_t samples = 200000;
  CLI::App app{"Serial vs OpenMP kernel timings"};
  app.add_option("--members", members, "Ensemble size");
  app.add_option("--dim", dim, "Dimension");
  app.add_option("--t", t, "Order");
  app.add_option("--reps", reps, "Repetitions (best time reported)");
  app.add_option("--samples", samples, "Monte-Carlo sample count");
  CLI11_PARSE(app, argc, argv);

  using namespace qdesign;
  std::printf("threads: %d, members: %d, dim: %d, t: %d\n", omp_get_max_threads(), members, dim, t);

  const mc::SamplerConfig cfg{dim, static_cast<std::size_t>(members), 7};
  std::vector<Matrix> rhos;
  for (const auto& r : mc::sample_hs(cfg)) rhos.push_back(r.matrix());
  std::vector<Vector> psis;
  for (const auto& p : mc::sample_fs(cfg)) psis.push_back(p.amplitudes());
  const auto us = mc::sample_haar(cfg);
  const std::vector<double> w(static_cast<std::size_t>(members), 1.0 / members);

  double a = 0, b = 0;
  double ts = best_of(reps, [&] { return kernels::trace_overlap_power_sum_serial(rhos, w, t); }, a);
  double tp = best_of(reps, [&] { return kernels::trace_overlap_power_sum_parallel(rhos, w, t); }, b);
  report("trace_overlap_power_sum", ts, tp, a, b);

  ts = best_of(reps, [&] { return kernels::state_overlap_power_sum_serial(psis, w, t); }, a);
  tp = best_of(reps, [&] { return kernels::state_overlap_power_sum_parallel(psis, w, t); }, b);
  report("state_overlap_power_sum", ts, tp, a, b);

  ts = best_of(reps, [&] { return kernels::unitary_trace_power_sum_serial(us, w, t); }, a);
  tp = best_of(reps, [&] { return kernels::unitary_trace_power_sum_parallel(us, w, t); }, b);
  report("unitary_trace_power_sum", ts, tp, a, b);

  const auto ens = Ensemble::from_mixed(mc::sample_hs(cfg));
  ts = best_of(reps, [&] { return delta_mixed(ens, t, {tol::kDesign, Execution::serial}).delta; }, a);
  tp = best_of(reps, [&] { return delta_mixed(ens, t, {tol::kDesign, Execution::parallel}).delta; }, b);
  report("delta_mixed", ts, tp, a, b);

  const mc::SamplerConfig big{2, samples, 11};
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  ts = best_of(1, [&] { return mc::hs_power_traces(big, 3)[1].mean; }, a);
  omp_set_num_threads(saved);
  tp = best_of(1, [&] { return mc::hs_power_traces(big, 3)[1].mean; }, b);
  report("hs_power_traces (1 vs N thr)", ts, tp, a, b);
  return 0;
}
