#include <doctest.h>

#include <algorithm>

#include "mubra/engine.hpp"
#include "mubra/mu2bra.hpp"
#include "mubra/normalize.hpp"
#include "mubra/oracle.hpp"
#include "mubra/random_gen.hpp"
#include "test_util.hpp"

using namespace mubra;
using testutil::asg;
using testutil::dv;

namespace {

const std::vector<std::string> kAtoms{"p1", "p2"};

EquationSystem until_system() {
  return ensure_wellformed(desugar(testutil::load_system("until.mu")));
}
EquationSystem weak_until_system() {
  return ensure_wellformed(desugar(testutil::load_system("weak_until.mu")));
}

oracle::Environment round(const EquationSystem& s, const LassoWord& w,
                          Position window, int rounds) {
  oracle::Environment u(s.vars, window, oracle::oracle_domain(w));
  for (int n = 0; n < rounds; ++n) u = oracle::apply_F(s, w, u);
  return u;
}

const DataValue kBot = DataValue::bottom();

}  // namespace

TEST_CASE("augmented tt clause") {
  const EquationSystem s = until_system();
  const LassoWord w = testutil::load_word("repeat.lasso", kAtoms);
  oracle::Environment empty(s.vars, 9, oracle::oracle_domain(w));
  CHECK(oracle::eval_augmented(s, w, empty, 2, asg({dv(5)}), 4, asg({dv(5)}),
                               "Vtt", Formula::tt()));
  // x must be the tt variable and the assignments must match.
  CHECK_FALSE(oracle::eval_augmented(s, w, empty, 2, asg({dv(5)}), 4,
                                     asg({dv(5)}), "V1", Formula::tt()));
  CHECK_FALSE(oracle::eval_augmented(s, w, empty, 2, asg({dv(5)}), 4,
                                     asg({dv(4)}), "Vtt", Formula::tt()));
}

TEST_CASE("augmented evaluation of sigma(V2) across rounds") {
  const EquationSystem s = until_system();
  const LassoWord w = testutil::load_word("repeat.lasso", kAtoms);
  const oracle::Environment u1 = round(s, w, 9, 1);
  const oracle::Environment u3 = round(s, w, 9, 3);
  // (2,[5];5,[5],Vtt) enters u(V2) at round 4 = F(u3).
  CHECK_FALSE(oracle::eval_augmented(s, w, u1, 2, asg({dv(5)}), 5, asg({dv(5)}),
                                     "Vtt", s.rhs("V2")));
  CHECK(oracle::eval_augmented(s, w, u3, 2, asg({dv(5)}), 5, asg({dv(5)}),
                               "Vtt", s.rhs("V2")));
}

TEST_CASE("apply_F reproduces the early rounds of the running example") {
  const EquationSystem s = until_system();
  const LassoWord w = testutil::load_word("repeat.lasso", kAtoms);
  const Position n = 9;
  const oracle::Environment u1 = round(s, w, n, 1);
  const oracle::Environment u2 = round(s, w, n, 2);

  CHECK(u1.tuples("V2").empty());
  CHECK(u1.tuples("V3").empty());
  CHECK(u2.tuples("V2") == u1.tuples("V1"));

  // u1(Vtt) = {(i,theta; j,theta,Vtt) | i <= j}.
  for (const auto& t : u1.tuples("Vtt")) {
    CHECK(t.theta == t.theta_j);
    CHECK(t.x == "Vtt");
    CHECK(t.i <= t.j);
  }
  // u1(V1) = {(i,theta; j,theta,Vtt) | i < j, theta(1) = snd(w_i)}.
  for (const auto& t : u1.tuples("V1")) {
    CHECK(t.i < t.j);
    CHECK(t.theta == t.theta_j);
    CHECK(t.theta.value(1) == letter_at(w, t.i).datum);
    CHECK(t.x == "Vtt");
  }
  CHECK(u1.contains("V1", {1, asg({dv(5)}), 2, asg({dv(5)}), "Vtt"}));
  CHECK(u1.contains("V1", {4, asg({dv(5)}), 9, asg({dv(5)}), "Vtt"}));
  CHECK_FALSE(u1.contains("V1", {1, asg({dv(4)}), 2, asg({dv(4)}), "Vtt"}));
}

TEST_CASE("round three adds the position-3 tuples of V2") {
  const EquationSystem s = until_system();
  const LassoWord w = testutil::load_word("repeat.lasso", kAtoms);
  const oracle::Environment u2 = round(s, w, 9, 2);
  const oracle::Environment u3 = round(s, w, 9, 3);
  for (Position j = 5; j <= 9; ++j) {
    const oracle::Tuple t{3, asg({dv(5)}), j, asg({dv(5)}), "Vtt"};
    CHECK_FALSE(u2.contains("V2", t));
    CHECK(u3.contains("V2", t));
  }
  // u3(V3): (2,[d]; j,[4],Vtt) for j >= 4, and (i,[d]; j,[5],Vtt) for
  // 4 <= i, i+2 <= j.
  for (const auto& d : oracle::oracle_domain(w)) {
    for (Position j = 4; j <= 9; ++j)
      CHECK(u3.contains("V3", {2, asg({d}), j, asg({dv(4)}), "Vtt"}));
    CHECK(u3.contains("V3", {4, asg({d}), 6, asg({dv(5)}), "Vtt"}));
    CHECK_FALSE(u3.contains("V3", {4, asg({d}), 5, asg({dv(5)}), "Vtt"}));
    CHECK_FALSE(u3.contains("V3", {1, asg({d}), 5, asg({dv(5)}), "Vtt"}));
  }
}

TEST_CASE("the fixed point stabilizes at round five") {
  const EquationSystem s = until_system();
  const LassoWord w = testutil::load_word("repeat.lasso", kAtoms);
  const oracle::Environment u4 = round(s, w, 9, 4);
  const oracle::Environment u5 = round(s, w, 9, 5);
  const oracle::Environment u6 = round(s, w, 9, 6);
  CHECK_FALSE(u5 == u4);
  CHECK(u6 == u5);

  // u5(V3) gains (1,[d]; j,[5],Vtt) for every j >= 5.
  for (const auto& d : oracle::oracle_domain(w))
    for (Position j = 5; j <= 9; ++j) {
      CHECK_FALSE(u4.contains("V3", {1, asg({d}), j, asg({dv(5)}), "Vtt"}));
      CHECK(u5.contains("V3", {1, asg({d}), j, asg({dv(5)}), "Vtt"}));
    }

  int rounds = 0;
  oracle::Params params;
  params.window = 9;
  const oracle::Environment lfp = oracle::lfp_window(s, w, params, &rounds);
  CHECK(rounds == 6);  // five growth rounds plus the confirming round
  CHECK(lfp == u5);
  CHECK(lfp.contains("V3", {1, asg({kBot}), 5, asg({dv(5)}), "Vtt"}));
}

TEST_CASE("seed tuples appear for omega-variables") {
  const EquationSystem s2 = weak_until_system();
  const LassoWord wp = testutil::load_word("norepeat.lasso", kAtoms);
  const oracle::Environment u1 = round(s2, wp, 7, 1);
  for (const auto& d : oracle::oracle_domain(wp)) {
    for (Position i = 1; i <= 7; ++i)
      CHECK(u1.contains("V2", {i, asg({d}), i, asg({d}), "V2"}));
  }
  // weak variant on norepeat: (i,[3]; i+1,[3],V2) from round 2 onward, for i >= 2.
  const oracle::Environment u2 = round(s2, wp, 7, 2);
  for (Position i = 2; i <= 6; ++i)
    CHECK(u2.contains("V2", {i, asg({dv(3)}), i + 1, asg({dv(3)}), "V2"}));
  for (const auto& d : oracle::oracle_domain(wp))
    CHECK(u2.contains("V3", {1, asg({d}), 2, asg({dv(3)}), "V2"}));
}

TEST_CASE("the until system never satisfies V3 at position one of norepeat") {
  const EquationSystem s = until_system();
  const LassoWord wp = testutil::load_word("norepeat.lasso", kAtoms);
  oracle::Params params;
  params.window = 9;
  const oracle::Environment lfp = oracle::lfp_window(s, wp, params);
  for (const auto& t : lfp.tuples("V3")) CHECK(t.i != 1);
}

TEST_CASE("satisfaction of the running examples") {
  const LassoWord w = testutil::load_word("repeat.lasso", kAtoms);
  const LassoWord wp = testutil::load_word("norepeat.lasso", kAtoms);
  CHECK(oracle::satisfies(until_system(), w).verdict == oracle::Verdict::Satisfied);
  CHECK(oracle::satisfies(until_system(), wp).verdict ==
        oracle::Verdict::NotSatisfied);
  CHECK(oracle::satisfies(weak_until_system(), wp).verdict == oracle::Verdict::Satisfied);
  CHECK(oracle::satisfies(weak_until_system(), w).verdict == oracle::Verdict::Satisfied);
}

TEST_CASE("satisfies_variable at an interior position") {
  const LassoWord w = testutil::load_word("repeat.lasso", kAtoms);
  // w,5,[5] |= Vtt.
  CHECK(oracle::satisfies_variable(until_system(), w, 5, asg({dv(5)}), "Vtt")
            .verdict == oracle::Verdict::Satisfied);
  CHECK(oracle::satisfies_variable(until_system(), w, 1, asg({kBot}), "V3").verdict ==
        oracle::Verdict::Satisfied);
  CHECK(oracle::satisfies_variable(until_system(), w, 2, asg({dv(5)}), "V1")
            .verdict == oracle::Verdict::NotSatisfied);
}

TEST_CASE("single-equation fixed point over a tiny window") {
  EquationSystem s;
  s.register_count = 1;
  s.vars = {"Vtt"};
  s.omega_vars = {"Vtt"};
  s.main_var = "Vtt";
  s.sigma.emplace("Vtt", Formula::tt());
  LassoWord w;
  w.period = {Letter{0, dv(1)}};
  oracle::Params params;
  params.window = 3;
  const oracle::Environment lfp = oracle::lfp_window(s, w, params);
  // lfp(Vtt) = {(i,theta; j,theta,Vtt) | i <= j <= 3}.
  std::size_t expected = 0;
  for (const auto& d : oracle::oracle_domain(w)) {
    for (Position i = 1; i <= 3; ++i)
      for (Position j = i; j <= 3; ++j) {
        CHECK(lfp.contains("Vtt", {i, asg({d}), j, asg({d}), "Vtt"}));
        ++expected;
      }
  }
  CHECK(lfp.tuples("Vtt").size() == expected);
}

TEST_CASE("universal system is satisfied by every word") {
  EquationSystem s;
  s.register_count = 0;
  s.vars = {"Vtt"};
  s.omega_vars = {"Vtt"};
  s.main_var = "Vtt";
  s.sigma.emplace("Vtt", Formula::tt());
  gen::Rng rng(5);
  gen::Config cfg;
  for (int n = 0; n < 5; ++n) {
    const LassoWord w = gen::gen_lasso(rng, cfg, 0);
    CHECK(oracle::satisfies(s, w).verdict == oracle::Verdict::Satisfied);
  }
}

TEST_CASE("per-target membership agrees with the naive fixed point") {
  gen::Rng rng(424242);
  gen::Config cfg;
  for (int n = 0; n < 12; ++n) {
    const EquationSystem s = gen::gen_system_normal(rng, cfg);
    const LassoWord w = gen::gen_lasso(rng, cfg, static_cast<int>(s.atoms.size()));
    const Position window = w.prefix_length() + w.period_length() + 2;
    oracle::Params params;
    params.window = window;
    const oracle::Environment lfp = oracle::lfp_window(s, w, params);
    const auto domain = oracle::oracle_domain(w);
    std::vector<Assignment> assignments;
    assignments.push_back(Assignment(std::vector<DataValue>{}));
    for (int r = 0; r < s.register_count; ++r) {
      std::vector<Assignment> next;
      for (const auto& partial : assignments)
        for (const auto& d : domain) {
          auto values = partial.values();
          values.push_back(d);
          next.push_back(Assignment(values));
        }
      assignments = std::move(next);
    }
    for (const auto& v : s.vars)
      for (const auto& x : s.omega_vars)
        for (Position j = 1; j <= window; ++j)
          for (const auto& tj : assignments)
            for (Position i = 1; i <= j; ++i)
              for (const auto& ti : assignments) {
                const oracle::Tuple t{i, ti, j, tj, x};
                CHECK(oracle::lfp_contains(s, w, window, v, t) ==
                      lfp.contains(v, t));
              }
  }
}

TEST_CASE("satisfies reports the window it used") {
  const LassoWord w = testutil::load_word("repeat.lasso", kAtoms);
  const auto r = oracle::satisfies(until_system(), w);
  CHECK(r.window_used == oracle::default_window(until_system(), w));
}

TEST_CASE("windows below the exhaustive bound never give a wrong negative") {
  const LassoWord w = testutil::load_word("repeat.lasso", kAtoms);
  // The first chain edge needs position 5; a window of 3 sees nothing.
  const auto r = oracle::satisfies(until_system(), w, 3);
  CHECK(r.verdict == oracle::Verdict::Inconclusive);
  CHECK(r.suggested_window >= oracle::default_window(until_system(), w));
  // A cycle found early is a sound positive even in a small window.
  CHECK(oracle::satisfies(until_system(), w, 9).verdict ==
        oracle::Verdict::Satisfied);
}

TEST_CASE("default-window verdicts are stable under enlargement") {
  gen::Rng rng(909);
  gen::Config cfg;
  for (int n = 0; n < 30; ++n) {
    const EquationSystem s = gen::gen_system_normal(rng, cfg);
    const LassoWord w = gen::gen_lasso(rng, cfg, static_cast<int>(s.atoms.size()));
    const auto base = oracle::satisfies(s, w);
    const auto wider = oracle::satisfies(
        s, w, base.window_used + 2 * w.period_length());
    CHECK(base.verdict != oracle::Verdict::Inconclusive);
    CHECK(wider.verdict == base.verdict);
  }
}
