#include <doctest.h>

#include "mubra/mu2bra.hpp"
#include "mubra/normalize.hpp"
#include "test_util.hpp"

using namespace mubra;

namespace {

BuchiRa until_bra() {
  return to_bra(
      normal_form(ensure_wellformed(desugar(testutil::load_system("until.mu")))));
}

}  // namespace

TEST_CASE("the until system produces the five-state automaton") {
  const BuchiRa a = until_bra();
  CHECK(a.states == std::vector<std::string>{
                        "tt", "X tt & up 1", "V1 | V2'", "X V2 & !up 1 & p1",
                        "down {1} X V2 & tt"});
  CHECK(a.initial == "down {1} X V2 & tt");
  CHECK(a.accepting == std::vector<std::string>{"tt"});
  REQUIRE(a.rules.size() == 6);

  const std::vector<TransitionRule> expected = {
      {"tt", Basic::tt(), 0, "tt"},
      {"X tt & up 1", Basic::up(1), 0, "tt"},
      {"V1 | V2'", std::nullopt, 0, "X tt & up 1"},
      {"V1 | V2'", std::nullopt, 0, "X V2 & !up 1 & p1"},
      {"X V2 & !up 1 & p1", Basic::conj(Basic::neg_up(1), Basic::atom(0)), 0,
       "V1 | V2'"},
      {"down {1} X V2 & tt", Basic::tt(), reg_set_add(0, 1), "V1 | V2'"},
  };
  CHECK(a.rules == expected);
}

TEST_CASE("the weak variant additionally accepts at the disjunction state") {
  const BuchiRa a = to_bra(
      normal_form(ensure_wellformed(desugar(testutil::load_system("weak_until.mu")))));
  CHECK(a.accepting == std::vector<std::string>{"tt", "V1 | V2'"});
  CHECK(a.states == until_bra().states);
  CHECK(a.rules == until_bra().rules);
}

TEST_CASE("universal system gives the one-state automaton") {
  EquationSystem s;
  s.register_count = 0;
  s.vars = {"Vtt"};
  s.omega_vars = {"Vtt"};
  s.main_var = "Vtt";
  s.sigma.emplace("Vtt", Formula::tt());
  const BuchiRa a = to_bra(s);
  CHECK(a.states == std::vector<std::string>{"tt"});
  CHECK(a.initial == "tt");
  CHECK(a.accepting == std::vector<std::string>{"tt"});
  REQUIRE(a.rules.size() == 1);
  CHECK(a.rules[0] == TransitionRule{"tt", Basic::tt(), 0, "tt"});
}

TEST_CASE("structurally equal right-hand sides share one state") {
  EquationSystem s;
  s.register_count = 1;
  s.vars = {"Vtt", "A", "B", "V"};
  s.omega_vars = {"Vtt"};
  s.main_var = "V";
  s.sigma.emplace("Vtt", Formula::tt());
  s.sigma.emplace("A", Formula::freeze_next(0, Formula::tt(), Basic::up(1)));
  s.sigma.emplace("B", Formula::freeze_next(0, Formula::tt(), Basic::up(1)));
  s.sigma.emplace("V", Formula::disj({Formula::var("A"), Formula::var("B")}));
  const BuchiRa a = to_bra(s);
  // A and B collapse; the disjunction state has one epsilon rule.
  CHECK(a.states.size() == 3);
  int eps = 0;
  for (const auto& r : a.rules) eps += r.is_epsilon() ? 1 : 0;
  CHECK(eps == 1);
}

TEST_CASE("to_bra rejects systems that are not in normal form") {
  EquationSystem s = ensure_wellformed(desugar(testutil::load_system("until.mu")));
  CHECK_THROWS_WITH_AS(to_bra(s), doctest::Contains("normal form"), Error);
}

TEST_CASE("to_bra rejects omega collisions") {
  EquationSystem s;
  s.register_count = 0;
  s.vars = {"Vtt", "V"};
  s.omega_vars = {"Vtt"};
  s.main_var = "V";
  s.sigma.emplace("Vtt", Formula::tt());
  s.sigma.emplace("V", Formula::tt());
  CHECK_THROWS_WITH_AS(to_bra(s), doctest::Contains("well-formed"), Error);
}

TEST_CASE("n-ary disjunctions get one epsilon rule per disjunct") {
  EquationSystem s;
  s.atoms = {"p1"};
  s.register_count = 1;
  s.vars = {"Vtt", "A", "B", "C", "V"};
  s.omega_vars = {"Vtt"};
  s.main_var = "V";
  s.sigma.emplace("Vtt", Formula::tt());
  s.sigma.emplace("A", Formula::freeze_next(0, Formula::tt(), Basic::up(1)));
  s.sigma.emplace("B", Formula::freeze_next(0, Formula::tt(), Basic::neg_up(1)));
  s.sigma.emplace("C", Formula::freeze_next(0, Formula::tt(), Basic::atom(0)));
  s.sigma.emplace("V", Formula::disj({Formula::var("A"), Formula::var("B"),
                                      Formula::var("C")}));
  const BuchiRa a = to_bra(s);
  int eps = 0;
  for (const auto& r : a.rules)
    if (r.is_epsilon()) {
      CHECK(r.source == "A | B | C");
      ++eps;
    }
  CHECK(eps == 3);
}
