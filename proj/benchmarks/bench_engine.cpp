#include <benchmark/benchmark.h>

#include "mubra/engine.hpp"
#include "mubra/random_gen.hpp"

using namespace mubra;

namespace {

// Membership over growing automata; the folded graph is the dominating cost.
void BM_accepts(benchmark::State& state) {
  gen::Rng rng(42);
  gen::Config cfg;
  cfg.max_states = static_cast<int>(state.range(0));
  cfg.max_prefix = 4;
  cfg.max_period = 3;
  std::vector<std::pair<BuchiRa, LassoWord>> cases;
  for (int n = 0; n < 32; ++n) {
    BuchiRa a = gen::gen_bra(rng, cfg, false);
    LassoWord w = gen::gen_lasso(rng, cfg, static_cast<int>(a.atoms.size()));
    cases.emplace_back(std::move(a), std::move(w));
  }
  std::size_t idx = 0;
  for (auto _ : state) {
    const auto& [a, w] = cases[idx++ % cases.size()];
    benchmark::DoNotOptimize(engine::accepts(a, w));
  }
}
BENCHMARK(BM_accepts)->Arg(4)->Arg(8)->Arg(16);

void BM_reach(benchmark::State& state) {
  gen::Rng rng(7);
  gen::Config cfg;
  cfg.max_states = 6;
  BuchiRa a = gen::gen_bra(rng, cfg, false);
  LassoWord w = gen::gen_lasso(rng, cfg, static_cast<int>(a.atoms.size()));
  const InstantaneousDescription init{
      a.initial, Assignment::bottoms(a.register_count), 1};
  const Position horizon = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(engine::reach(a, w, init, horizon));
}
BENCHMARK(BM_reach)->Arg(16)->Arg(64)->Arg(256);

}  // namespace
