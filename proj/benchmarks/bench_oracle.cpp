#include <benchmark/benchmark.h>

#include "mubra/oracle.hpp"
#include "mubra/random_gen.hpp"

using namespace mubra;

namespace {

void BM_lfp_window(benchmark::State& state) {
  gen::Rng rng(11);
  gen::Config cfg;
  EquationSystem s = gen::gen_system_normal(rng, cfg);
  LassoWord w = gen::gen_lasso(rng, cfg, static_cast<int>(s.atoms.size()));
  oracle::Params params;
  params.window = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(oracle::lfp_window(s, w, params));
}
BENCHMARK(BM_lfp_window)->Arg(4)->Arg(8)->Arg(12);

void BM_satisfies_default_window(benchmark::State& state) {
  gen::Rng rng(static_cast<std::uint64_t>(state.range(0)));
  gen::Config cfg;
  std::vector<std::pair<EquationSystem, LassoWord>> cases;
  for (int n = 0; n < 16; ++n) {
    EquationSystem s = gen::gen_system_normal(rng, cfg);
    LassoWord w = gen::gen_lasso(rng, cfg, static_cast<int>(s.atoms.size()));
    cases.emplace_back(std::move(s), std::move(w));
  }
  std::size_t idx = 0;
  for (auto _ : state) {
    const auto& [s, w] = cases[idx++ % cases.size()];
    benchmark::DoNotOptimize(oracle::satisfies(s, w));
  }
}
BENCHMARK(BM_satisfies_default_window)->Arg(1)->Arg(2);

}  // namespace
