#include <doctest.h>

#include <algorithm>

#include "mubra/engine.hpp"
#include "mubra/mu2bra.hpp"
#include "mubra/normalize.hpp"
#include "mubra/random_gen.hpp"
#include "test_util.hpp"

using namespace mubra;
using testutil::asg;
using testutil::dv;

namespace {

const std::vector<std::string> kAtoms{"p1", "p2"};

BuchiRa automaton_of(const std::string& system_file) {
  return to_bra(normal_form(
      ensure_wellformed(desugar(testutil::load_system(system_file)))));
}

BuchiRa universal_bra() {
  BuchiRa a;
  a.register_count = 0;
  a.states = {"q0"};
  a.initial = "q0";
  a.accepting = {"q0"};
  a.rules = {TransitionRule{"q0", Basic::tt(), 0, "q0"}};
  return a;
}

LassoWord unrolled(const LassoWord& w) {
  LassoWord out = w;
  out.prefix.insert(out.prefix.end(), w.period.begin(), w.period.end());
  return out;
}

}  // namespace

TEST_CASE("step applies guarded rules and epsilon rules") {
  // 2-register automaton with rule (q, p1 & !p3 & up 1, {2}) -> q'.
  BuchiRa a;
  a.atoms = {"p1", "p2", "p3"};
  a.register_count = 2;
  a.states = {"q", "q'"};
  a.initial = "q";
  a.rules = {TransitionRule{
      "q",
      Basic::conj(Basic::conj(Basic::atom(0), Basic::neg_atom(2)),
                  Basic::up(1)),
      reg_set_add(0, 2), "q'"}};
  LassoWord w;
  w.prefix = {Letter{0b001, dv(5)}, Letter{0b101, dv(5)}};
  w.period = {Letter{0b001, dv(4)}};

  const Assignment theta = asg({dv(5), DataValue::bottom()});
  const auto succ1 = engine::step(a, w, {"q", theta, 1});
  REQUIRE(succ1.size() == 1);
  CHECK(succ1[0] == InstantaneousDescription{"q'", asg({dv(5), dv(5)}), 2});

  CHECK(engine::step(a, w, {"q", theta, 2}).empty());
  CHECK(engine::step(a, w, {"q", theta, 3}).empty());

  a.rules.push_back(TransitionRule{"q", std::nullopt, 0, "q'"});
  const auto succ2 = engine::step(a, w, {"q", theta, 3});
  REQUIRE(succ2.size() == 1);
  CHECK(succ2[0] == InstantaneousDescription{"q'", theta, 3});
}

TEST_CASE("reach explores the bounded configuration space") {
  const BuchiRa a = automaton_of("until.mu");
  const LassoWord w = testutil::load_word("repeat.lasso", kAtoms);
  const InstantaneousDescription init{a.initial,
                                      Assignment::bottoms(1), 1};
  const auto ids = engine::reach(a, w, init, 6);
  const InstantaneousDescription target{"tt", asg({dv(5)}), 5};
  CHECK(std::find(ids.begin(), ids.end(), target) != ids.end());
  CHECK(std::find(ids.begin(), ids.end(), init) != ids.end());  // reflexive
}

TEST_CASE("reach from a stuck ID returns only itself") {
  BuchiRa a;
  a.register_count = 0;
  a.states = {"q0"};
  a.initial = "q0";
  LassoWord w;
  w.period = {Letter{0, dv(1)}};
  const InstantaneousDescription stuck{"q0", Assignment::bottoms(0), 3};
  const auto ids = engine::reach(a, w, stuck, 9);
  REQUIRE(ids.size() == 1);
  CHECK(ids[0] == stuck);
}

TEST_CASE("reach on the universal automaton walks every position") {
  const BuchiRa a = universal_bra();
  LassoWord w;
  w.period = {Letter{0, dv(1)}};
  const auto ids = engine::reach(a, w, {"q0", Assignment::bottoms(0), 1}, 3);
  REQUIRE(ids.size() == 3);
  for (Position i = 1; i <= 3; ++i)
    CHECK(ids[static_cast<std::size_t>(i - 1)].position == i);
}

TEST_CASE("membership of the running examples") {
  const BuchiRa a1 = automaton_of("until.mu");
  const BuchiRa a2 = automaton_of("weak_until.mu");
  const LassoWord w = testutil::load_word("repeat.lasso", kAtoms);
  const LassoWord wp = testutil::load_word("norepeat.lasso", kAtoms);
  CHECK(engine::accepts(a1, w));
  CHECK_FALSE(engine::accepts(a1, wp));
  CHECK(engine::accepts(a2, wp));
  CHECK(engine::accepts(a2, w));
}

TEST_CASE("accepting run witness starts at the initial ID") {
  const BuchiRa a = automaton_of("until.mu");
  const LassoWord w = testutil::load_word("repeat.lasso", kAtoms);
  const auto witness = engine::accepting_run(a, w);
  REQUIRE(witness.has_value());
  REQUIRE_FALSE(witness->stem.empty());
  CHECK(witness->stem.front() ==
        InstantaneousDescription{a.initial, Assignment::bottoms(1), 1});
  REQUIRE_FALSE(witness->cycle.empty());
  // The cycle revisits an accepting state and consumes input.
  bool has_accepting = false;
  for (const auto& id : witness->cycle)
    if (a.is_accepting(id.state)) has_accepting = true;
  CHECK(has_accepting);
  CHECK(witness->cycle.back().position > witness->cycle.front().position);
}

TEST_CASE("pure epsilon cycles accept nothing") {
  BuchiRa a;
  a.register_count = 0;
  a.states = {"q0", "q1"};
  a.initial = "q0";
  a.accepting = {"q1"};
  a.rules = {TransitionRule{"q0", std::nullopt, 0, "q1"},
             TransitionRule{"q1", std::nullopt, 0, "q0"}};
  LassoWord w;
  w.period = {Letter{0, dv(1)}};
  CHECK_FALSE(engine::accepts(a, w));
}

TEST_CASE("acceptance is invariant under unrolling the lasso") {
  gen::Rng rng(7031);
  gen::Config cfg;
  for (int n = 0; n < 80; ++n) {
    const BuchiRa a = gen::gen_bra(rng, cfg, n % 3 == 0);
    const LassoWord w = gen::gen_lasso(rng, cfg, static_cast<int>(a.atoms.size()));
    CHECK(engine::accepts(a, w) == engine::accepts(a, unrolled(w)));
  }
}

TEST_CASE("reachable assignments stay in the word domain") {
  gen::Rng rng(99);
  gen::Config cfg;
  for (int n = 0; n < 40; ++n) {
    const BuchiRa a = gen::gen_bra(rng, cfg, false);
    const LassoWord w = gen::gen_lasso(rng, cfg, static_cast<int>(a.atoms.size()));
    const auto domain = word_domain(w);
    const auto ids = engine::reach(
        a, w, {a.initial, Assignment::bottoms(a.register_count), 1}, 6);
    for (const auto& id : ids)
      for (const auto& d : id.assignment.values())
        CHECK(std::find(domain.begin(), domain.end(), d) != domain.end());
  }
}

TEST_CASE("step is periodic beyond the prefix") {
  gen::Rng rng(606);
  gen::Config cfg;
  for (int n = 0; n < 40; ++n) {
    const BuchiRa a = gen::gen_bra(rng, cfg, n % 2 == 0);
    const LassoWord w = gen::gen_lasso(rng, cfg, static_cast<int>(a.atoms.size()));
    const Position l = w.prefix_length();
    const Position p = w.period_length();
    for (const auto& q : a.states) {
      for (const auto& d : word_domain(w)) {
        const Assignment theta(
            std::vector<DataValue>(static_cast<std::size_t>(a.register_count), d));
        for (Position i = l + 1; i <= l + p; ++i) {
          auto now = engine::step(a, w, {q, theta, i});
          auto later = engine::step(a, w, {q, theta, i + p});
          REQUIRE(now.size() == later.size());
          for (std::size_t m = 0; m < now.size(); ++m) {
            CHECK(later[m].state == now[m].state);
            CHECK(later[m].assignment == now[m].assignment);
            CHECK(later[m].position == now[m].position + p);
          }
        }
      }
    }
  }
}

TEST_CASE("configuration limit aborts oversized explorations") {
  const BuchiRa a = automaton_of("until.mu");
  const LassoWord w = testutil::load_word("repeat.lasso", kAtoms);
  engine::Limits limits;
  limits.max_configurations = 2;
  CHECK_THROWS_AS(engine::accepts(a, w, limits), ResourceLimitError);
}
