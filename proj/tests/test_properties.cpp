#include <doctest.h>

#include <sstream>

#include "mubra/campaign.hpp"
#include "test_util.hpp"

using namespace mubra;

namespace {

campaign::Options small_options(std::uint64_t seed, int cases) {
  campaign::Options opt;
  opt.seed = seed;
  opt.cases = cases;
  return opt;
}

}  // namespace

TEST_CASE("small differential smoke campaign") {
  const campaign::Options opt = small_options(20250808, 12);
  CHECK(campaign::tuple_reachability_agreement(opt).failures == 0);
  CHECK(campaign::language_agreement(opt).failures == 0);
  CHECK(campaign::roundtrip_bra(opt, 2).failures == 0);
  CHECK(campaign::epsilon_elimination_preservation(opt).failures == 0);
  CHECK(campaign::totalize_preservation(opt).failures == 0);
  CHECK(campaign::normal_form_shapes(opt).failures == 0);
}

TEST_CASE("oracle algebra smoke campaign") {
  const campaign::Options opt = small_options(77, 40);
  CHECK(campaign::oracle_monotonicity(opt).failures == 0);
  CHECK(campaign::oracle_locality(opt).failures == 0);
  CHECK(campaign::oracle_periodicity(opt).failures == 0);
}

TEST_CASE("campaigns are deterministic in the seed") {
  const campaign::Options opt = small_options(99, 6);
  const auto a = campaign::language_agreement(opt);
  const auto b = campaign::language_agreement(opt);
  CHECK(a.cases == b.cases);
  CHECK(a.failures == b.failures);
  CHECK(a.inconclusive == b.inconclusive);
}

TEST_CASE("shrinking keeps the failing property failing") {
  gen::Rng rng(31337);
  gen::Config cfg;
  cfg.max_states = 4;
  // Artificial property: "the automaton has at most one accepting state";
  // shrink a violating automaton and confirm the reduced one still violates.
  for (int n = 0; n < 50; ++n) {
    const BuchiRa a = gen::gen_bra(rng, cfg, false);
    if (a.accepting.size() <= 1) continue;
    auto failing = [](const BuchiRa& cand) { return cand.accepting.size() > 1; };
    const BuchiRa small = gen::shrink_bra(a, failing);
    CHECK(failing(small));
    CHECK(small.rules.size() <= a.rules.size());
    CHECK(small.states.size() <= a.states.size());
  }

  // Same for words: "the period is longer than one letter".
  for (int n = 0; n < 50; ++n) {
    const LassoWord w = gen::gen_lasso(rng, cfg, 1);
    if (w.period.size() <= 1) continue;
    auto failing = [](const LassoWord& cand) { return cand.period.size() > 1; };
    const LassoWord small = gen::shrink_lasso(w, failing);
    CHECK(failing(small));
    CHECK(small.prefix.empty());
  }
}

TEST_CASE("run_all reports every property") {
  campaign::Options opt = small_options(5, 4);
  std::ostringstream log;
  const auto results = campaign::run_all(opt, log);
  CHECK(results.size() == 9);
  for (const auto& r : results) {
    CAPTURE(r.name);
    CHECK(r.cases > 0);
    CHECK(r.failures == 0);
  }
  CHECK(log.str().find("tuple-reachability-agreement") != std::string::npos);
}
