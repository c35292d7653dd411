// Times the batch kernels against their serial reference: rollout pain
// estimation and multi-seed scenario sweeps. Also checks that both policies
// produce identical numbers while it is at it.
#include <chrono>
#include <cstdio>
#include <string>

#include "cetana/batch.hpp"
#include "cetana/metrics.hpp"
#include "cetana/runner.hpp"
#include "cetana/scenario.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace cetana;

namespace {

Scenario bench_scenario() {
  Scenario s;
  s.id = "bench";
  s.seed = 7;
  s.steps = 200;
  s.world.kind = "rewardBandit";
  s.world.actions = {"calm", "lash"};
  s.world.rewards["lash"] = {{FeelingTone::VeryUnpleasant, 0.8}, {FeelingTone::Pleasant, 0.2}};
  s.world.rewards["calm"] = {{FeelingTone::Neutral, 0.6}, {FeelingTone::Pleasant, 0.4}};
  s.agent.policy = "angerBias:lash";
  s.agent.anger_gain = 0.35;
  return s;
}

template <class Fn>
double time_ms(Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

}  // namespace

int main() {
  const Scenario s = bench_scenario();
  const BuiltScenario built = build_scenario(s);

  const int n_rollouts = 4000;
  const int horizon = 20;
  const std::size_t n_seeds = 400;

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (compiled without OpenMP)\n");
#endif

  double serial_score = 0.0;
  double parallel_score = 0.0;
  const double t_roll_serial = time_ms([&] {
    serial_score = wholesome_classify("lash", built.c0, built.w0, built.agent, built.world,
                                      horizon, n_rollouts, 99, 0.05, ExecPolicy::Serial)
                       .score;
  });
  const double t_roll_parallel = time_ms([&] {
    parallel_score = wholesome_classify("lash", built.c0, built.w0, built.agent, built.world,
                                        horizon, n_rollouts, 99, 0.05, ExecPolicy::Parallel)
                         .score;
  });
  std::printf("rollout kernel   (%d x H=%d): serial %8.1f ms   openmp %8.1f ms   speedup %.2fx   %s\n",
              n_rollouts, horizon, t_roll_serial, t_roll_parallel,
              t_roll_serial / t_roll_parallel,
              serial_score == parallel_score ? "results identical" : "RESULTS DIFFER");

  auto sweep = [&](ExecPolicy policy) {
    return map_indexed<double>(n_seeds, policy, [&](std::size_t i) {
      Trace tr = run(built.agent, built.world, built.c0, built.w0, 1000 + i, s.steps);
      return pain_metric(tr, full_window(tr));
    });
  };
  std::vector<double> pains_serial;
  std::vector<double> pains_parallel;
  const double t_sweep_serial = time_ms([&] { pains_serial = sweep(ExecPolicy::Serial); });
  const double t_sweep_parallel = time_ms([&] { pains_parallel = sweep(ExecPolicy::Parallel); });
  std::printf("seed sweep       (%zu x %lld ticks): serial %8.1f ms   openmp %8.1f ms   speedup %.2fx   %s\n",
              n_seeds, static_cast<long long>(s.steps), t_sweep_serial, t_sweep_parallel,
              t_sweep_serial / t_sweep_parallel,
              pains_serial == pains_parallel ? "results identical" : "RESULTS DIFFER");
  return 0;
}
