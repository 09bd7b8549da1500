#include <doctest.h>

#include <random>

#include "mubra/bra2mu.hpp"
#include "mubra/engine.hpp"
#include "mubra/mu2bra.hpp"
#include "mubra/normalize.hpp"
#include "mubra/oracle.hpp"
#include "mubra/random_gen.hpp"
#include "test_util.hpp"

using namespace mubra;
using testutil::dv;

TEST_CASE("zero-register systems work end to end") {
  // Pure temporal property, no registers: p1 holds at every position.
  const EquationSystem s = ensure_wellformed(desugar(parse_system(
      "atoms p1\nregisters 0\nomega Vg Vtt\nmain Vg\n"
      "Vtt = tt\nVg = X Vg & p1\n")));
  const EquationSystem nf = normal_form(s);
  const BuchiRa a = to_bra(nf);

  LassoWord all_p1;
  all_p1.period = {Letter{0b1, dv(0)}};
  LassoWord eventually_not;
  eventually_not.prefix = {Letter{0b1, dv(0)}, Letter{0b0, dv(1)}};
  eventually_not.period = {Letter{0b1, dv(0)}};

  CHECK(engine::accepts(a, all_p1));
  CHECK_FALSE(engine::accepts(a, eventually_not));
  CHECK(oracle::satisfies(s, all_p1).verdict == oracle::Verdict::Satisfied);
  CHECK(oracle::satisfies(s, eventually_not).verdict ==
        oracle::Verdict::NotSatisfied);

  // Round trip through the reverse translation too.
  const BuchiRa back = to_bra(from_bra(totalize(eliminate_epsilon(a))).system);
  CHECK(engine::accepts(back, all_p1));
  CHECK_FALSE(engine::accepts(back, eventually_not));
}

TEST_CASE("bottom can occur as a word datum and matches bottom registers") {
  // up 1 at the first position compares the initial register value with the
  // letter datum, so a bottom datum matches right away.
  const EquationSystem s = ensure_wellformed(desugar(parse_system(
      "atoms\nregisters 1\nomega Vtt\nmain V1\nVtt = tt\nV1 = up 1\n")));
  const BuchiRa a = to_bra(normal_form(s));

  LassoWord starts_bottom;
  starts_bottom.period = {Letter{0, DataValue::bottom()}};
  LassoWord starts_int;
  starts_int.prefix = {Letter{0, dv(3)}};
  starts_int.period = {Letter{0, dv(4)}};

  CHECK(engine::accepts(a, starts_bottom));
  CHECK_FALSE(engine::accepts(a, starts_int));
  CHECK(oracle::satisfies(s, starts_bottom).verdict ==
        oracle::Verdict::Satisfied);
  CHECK(oracle::satisfies(s, starts_int).verdict ==
        oracle::Verdict::NotSatisfied);
}

TEST_CASE("bottom-heavy words keep oracle and engine in agreement") {
  gen::Rng rng(24601);
  gen::Config cfg;
  cfg.bottom_datum_prob = 0.6;
  for (int n = 0; n < 40; ++n) {
    const EquationSystem s = gen::gen_system_normal(rng, cfg);
    const LassoWord w = gen::gen_lasso(rng, cfg, static_cast<int>(s.atoms.size()));
    const auto verdict = oracle::satisfies(s, w);
    REQUIRE(verdict.verdict != oracle::Verdict::Inconclusive);
    CHECK((verdict.verdict == oracle::Verdict::Satisfied) ==
          engine::accepts(to_bra(s), w));
  }
}

TEST_CASE("parsers reject corrupted input without crashing") {
  const std::string seeds[] = {
      testutil::slurp("until.mu"),
      "atoms p1\nregisters 1\nstates q0\ninitial q0\naccepting q0\n"
      "q0 --(p1 & up 1, {1})--> q0\n",
      "prefix ({p1},1) ; period ({},_)\n",
  };
  std::mt19937_64 rng(8);
  const std::string junk = "(){}|&!;,=\"'#->X \n\tabz019_";
  for (const auto& seed : seeds) {
    for (int n = 0; n < 400; ++n) {
      std::string text = seed;
      const int edits = 1 + static_cast<int>(rng() % 4);
      for (int e = 0; e < edits; ++e) {
        const std::size_t pos = rng() % (text.size() + 1);
        switch (rng() % 3) {
          case 0:
            text.insert(pos, 1, junk[rng() % junk.size()]);
            break;
          case 1:
            if (!text.empty()) text.erase(std::min(pos, text.size() - 1), 1);
            break;
          default:
            if (!text.empty())
              text[std::min(pos, text.size() - 1)] = junk[rng() % junk.size()];
            break;
        }
      }
      try {
        (void)parse_system(text);
      } catch (const Error&) {
      }
      try {
        (void)parse_bra(text);
      } catch (const Error&) {
      }
      try {
        (void)parse_lasso(text, {"p1"});
      } catch (const Error&) {
      }
    }
  }
  CHECK(true);  // reaching here means no crash and only structured errors
}

TEST_CASE("every guard-true one-state automaton with empty alphabet") {
  // Smallest meaningful input: no atoms, no registers.
  const BuchiRa a = parse_bra(
      "atoms\nregisters 0\nstates q\ninitial q\naccepting q\n"
      "q --(tt, {})--> q\n");
  const FromBraResult fb = from_bra(a);
  CHECK(fb.system.register_count == 0);
  LassoWord w;
  w.period = {Letter{0, DataValue::bottom()}};
  CHECK(engine::accepts(a, w));
  CHECK(engine::accepts(to_bra(fb.system), w));
  CHECK(oracle::satisfies(fb.system, w).verdict ==
        oracle::Verdict::Satisfied);
}
