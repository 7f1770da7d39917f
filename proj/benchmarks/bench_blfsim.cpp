#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "blfsim/blfsim.hpp"

namespace {

blfsim::RunConfig relaxed() {
  return blfsim::load_config(std::string(BLFSIM_CONFIG_DIR) + "/relaxed_envelope.json");
}

void BM_Basis(benchmark::State& state) {
  const auto cfg = blfsim::RbfConfig::lattice(2, static_cast<int>(state.range(0)), -2.0, 2.0, 2.0);
  const std::vector<double> z{0.3, -0.7};
  std::vector<double> out(static_cast<std::size_t>(cfg.nodes()));
  for (auto _ : state) {
    blfsim::basis(cfg, z, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_Basis)->Arg(12)->Arg(100);

void BM_Cascade(benchmark::State& state) {
  const auto cfg = relaxed();
  const auto s = blfsim::initial_state(cfg);
  blfsim::StepRecord record;
  for (auto _ : state) {
    blfsim::compute_cascade(cfg.controller, 0.3, s.x(), s.dhat(), s.zeta(), s.theta(), record);
    benchmark::DoNotOptimize(record.u);
  }
}
BENCHMARK(BM_Cascade);

void BM_Rk4Step(benchmark::State& state) {
  const auto cfg = relaxed();
  const auto s = blfsim::initial_state(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(blfsim::rk4_step(cfg, 0.0, s, cfg.step));
}
BENCHMARK(BM_Rk4Step);

void BM_Run(benchmark::State& state) {
  auto cfg = relaxed();
  cfg.horizon = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(blfsim::run(cfg));
}
BENCHMARK(BM_Run)->Arg(1)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
