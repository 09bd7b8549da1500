#include <benchmark/benchmark.h>

#include "mubra/bra2mu.hpp"
#include "mubra/mu2bra.hpp"
#include "mubra/random_gen.hpp"

using namespace mubra;

namespace {

void BM_roundtrip_translation(benchmark::State& state) {
  gen::Rng rng(23);
  gen::Config cfg;
  cfg.max_states = static_cast<int>(state.range(0));
  std::vector<BuchiRa> automata;
  for (int n = 0; n < 32; ++n)
    automata.push_back(gen::gen_bra(rng, cfg, false));
  std::size_t idx = 0;
  for (auto _ : state) {
    const BuchiRa& a = automata[idx++ % automata.size()];
    benchmark::DoNotOptimize(to_bra(from_bra(a).system));
  }
}
BENCHMARK(BM_roundtrip_translation)->Arg(4)->Arg(8)->Arg(16);

void BM_epsilon_elimination(benchmark::State& state) {
  gen::Rng rng(29);
  gen::Config cfg;
  cfg.max_states = static_cast<int>(state.range(0));
  std::vector<BuchiRa> automata;
  for (int n = 0; n < 32; ++n)
    automata.push_back(gen::gen_bra(rng, cfg, true));
  std::size_t idx = 0;
  for (auto _ : state) {
    const BuchiRa& a = automata[idx++ % automata.size()];
    benchmark::DoNotOptimize(eliminate_epsilon(a));
  }
}
BENCHMARK(BM_epsilon_elimination)->Arg(4)->Arg(8)->Arg(16);

}  // namespace
