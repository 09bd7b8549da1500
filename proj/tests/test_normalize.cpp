#include <doctest.h>

#include "mubra/normalize.hpp"
#include "test_util.hpp"

using namespace mubra;

TEST_CASE("desugar bare basics and next") {
  // V1 = up 1 becomes X tt & up 1.
  CHECK(desugar_formula(Formula::basic(Basic::up(1))) ==
        Formula::freeze_next(0, Formula::tt(), Basic::up(1)));
  // X V2 becomes down {} X V2 & tt.
  CHECK(desugar_formula(Formula::next(Formula::var("V2"))) ==
        Formula::freeze_next(0, Formula::var("V2"), Basic::tt()));
}

TEST_CASE("desugar pushes basic conjuncts into the freeze guard") {
  const Formula f = Formula::conj(Formula::next(Formula::var("V2")),
                                  Formula::basic(Basic::conj(
                                      Basic::neg_up(1), Basic::atom(0))));
  CHECK(desugar_formula(f) ==
        Formula::freeze_next(0, Formula::var("V2"),
                             Basic::conj(Basic::neg_up(1), Basic::atom(0))));
  // Order of the sides does not matter.
  const Formula g = Formula::conj(Formula::basic(Basic::atom(0)),
                                  Formula::next(Formula::tt()));
  CHECK(desugar_formula(g) ==
        Formula::freeze_next(0, Formula::tt(), Basic::atom(0)));
}

TEST_CASE("desugar rejects invalid conjunctions") {
  const Formula both_nonbasic = Formula::conj(
      Formula::disj({Formula::var("V1"), Formula::var("V2")}),
      Formula::disj({Formula::var("V1"), Formula::var("V2")}));
  CHECK_THROWS_WITH_AS(desugar_formula(both_nonbasic),
                       doctest::Contains("two non-basic"), Error);
  const Formula var_side = Formula::conj(Formula::var("V1"),
                                         Formula::basic(Basic::atom(0)));
  CHECK_THROWS_WITH_AS(desugar_formula(var_side),
                       doctest::Contains("freeze/next"), Error);
}

TEST_CASE("desugared until system matches the expected right-hand sides") {
  const EquationSystem s = desugar(testutil::load_system("until.mu"));
  CHECK(s.is_desugared());
  CHECK(s.rhs("Vtt") == Formula::tt());
  CHECK(s.rhs("V1") == Formula::freeze_next(0, Formula::tt(), Basic::up(1)));
  CHECK(s.rhs("V2") ==
        Formula::disj({Formula::var("V1"),
                       Formula::freeze_next(
                           0, Formula::var("V2"),
                           Basic::conj(Basic::neg_up(1), Basic::atom(0)))}));
  CHECK(s.rhs("V3") == Formula::freeze_next(reg_set_add(0, 1),
                                            Formula::var("V2"), Basic::tt()));
}

TEST_CASE("ensure_wellformed adds a tt omega-variable when missing") {
  EquationSystem s;
  s.register_count = 1;
  s.vars = {"V1"};
  s.main_var = "V1";
  s.sigma.emplace("V1", Formula::freeze_next(0, Formula::var("V1"),
                                             Basic::up(1)));
  const EquationSystem wf = ensure_wellformed(s);
  CHECK(wf.is_wellformed());
  CHECK(wf.vars == std::vector<std::string>{"V1", "Vtt"});
  CHECK(wf.is_omega("Vtt"));
  CHECK(wf.rhs("Vtt") == Formula::tt());
}

TEST_CASE("ensure_wellformed repairs duplicates of omega right-hand sides") {
  EquationSystem s;
  s.register_count = 1;
  s.vars = {"Va", "Vb"};
  s.omega_vars = {"Va"};
  s.main_var = "Vb";
  s.sigma.emplace("Va", Formula::tt());
  s.sigma.emplace("Vb", Formula::tt());
  const EquationSystem wf = ensure_wellformed(s);
  CHECK(wf.is_wellformed());
  CHECK(wf.rhs("Va") == Formula::tt());
  // Vb = tt | (X tt & ff).
  CHECK(wf.rhs("Vb") ==
        Formula::disj({Formula::tt(),
                       Formula::freeze_next(0, Formula::tt(), Basic::ff())}));
}

TEST_CASE("ensure_wellformed keeps a well-formed system unchanged") {
  const EquationSystem s = desugar(testutil::load_system("until.mu"));
  const EquationSystem wf = ensure_wellformed(s);
  CHECK(wf.vars == s.vars);
  for (const auto& v : s.vars) CHECK(wf.rhs(v) == s.rhs(v));
}

TEST_CASE("two omega-variables with the same rhs cannot be repaired") {
  EquationSystem s;
  s.register_count = 1;
  s.vars = {"Va", "Vb"};
  s.omega_vars = {"Va", "Vb"};
  s.main_var = "Va";
  s.sigma.emplace("Va", Formula::tt());
  s.sigma.emplace("Vb", Formula::tt());
  CHECK_THROWS_WITH_AS(ensure_wellformed(s), doctest::Contains("unrepairable"),
                       Error);
}

TEST_CASE("normal form of the until system introduces V2'") {
  const EquationSystem nf =
      normal_form(ensure_wellformed(desugar(testutil::load_system("until.mu"))));
  CHECK(nf.vars == std::vector<std::string>{"Vtt", "V1", "V2", "V2'", "V3"});
  CHECK(nf.rhs("V2") == Formula::disj({Formula::var("V1"), Formula::var("V2'")}));
  CHECK(nf.rhs("V2'") ==
        Formula::freeze_next(0, Formula::var("V2"),
                             Basic::conj(Basic::neg_up(1), Basic::atom(0))));
  CHECK(nf.rhs("V1") == Formula::freeze_next(0, Formula::tt(), Basic::up(1)));
  CHECK(nf.is_normal_form(true));
  CHECK_FALSE(nf.is_omega("V2'"));
  CHECK(nf.omega_vars == std::vector<std::string>{"Vtt"});
  CHECK(nf.main_var == "V3");
}

TEST_CASE("normal form leaves tt equations alone") {
  EquationSystem s;
  s.register_count = 0;
  s.vars = {"Vtt"};
  s.omega_vars = {"Vtt"};
  s.main_var = "Vtt";
  s.sigma.emplace("Vtt", Formula::tt());
  const EquationSystem nf = normal_form(s);
  CHECK(nf.vars == s.vars);
  CHECK(nf.rhs("Vtt") == Formula::tt());
}

TEST_CASE("nested disjunction normalizes with two fresh variables") {
  // V = (A | B) | (X A & tt): the parenthesized inner disjunction and the
  // non-variable right disjunct both get hoisted.
  EquationSystem s;
  s.register_count = 1;
  s.vars = {"Vtt", "A", "B", "V"};
  s.omega_vars = {"Vtt"};
  s.main_var = "V";
  s.sigma.emplace("Vtt", Formula::tt());
  s.sigma.emplace("A", Formula::freeze_next(0, Formula::tt(), Basic::up(1)));
  s.sigma.emplace("B", Formula::freeze_next(0, Formula::tt(), Basic::neg_up(1)));
  s.sigma.emplace(
      "V", Formula::disj({Formula::disj({Formula::var("A"), Formula::var("B")}),
                          Formula::freeze_next(0, Formula::var("A"),
                                               Basic::tt())}));
  const EquationSystem nf = normal_form(s);
  CHECK(nf.is_normal_form(true));
  CHECK(nf.rhs("V") == Formula::disj({Formula::var("V'"), Formula::var("V''")}));
  CHECK(nf.rhs("V'") == Formula::disj({Formula::var("A"), Formula::var("B")}));
  CHECK(nf.rhs("V''") ==
        Formula::freeze_next(0, Formula::var("A"), Basic::tt()));
  CHECK(nf.vars ==
        std::vector<std::string>{"Vtt", "A", "B", "V", "V'", "V''"});
}

TEST_CASE("bare variable equations become binary disjunctions") {
  EquationSystem s;
  s.register_count = 0;
  s.vars = {"Vtt", "V"};
  s.omega_vars = {"Vtt"};
  s.main_var = "V";
  s.sigma.emplace("Vtt", Formula::tt());
  s.sigma.emplace("V", Formula::var("Vtt"));
  const EquationSystem nf = normal_form(s);
  CHECK(nf.rhs("V") == Formula::disj({Formula::var("Vtt"), Formula::var("Vtt")}));
  CHECK(nf.is_normal_form(true));
}

TEST_CASE("n-ary disjunctions binarize through fresh variables") {
  EquationSystem s;
  s.register_count = 0;
  s.vars = {"Vtt", "A", "B", "C", "V"};
  s.omega_vars = {"Vtt"};
  s.main_var = "V";
  s.sigma.emplace("Vtt", Formula::tt());
  s.sigma.emplace("A", Formula::var("Vtt"));
  s.sigma.emplace("B", Formula::var("Vtt"));
  s.sigma.emplace("C", Formula::var("Vtt"));
  s.sigma.emplace("V", Formula::disj({Formula::var("A"), Formula::var("B"),
                                      Formula::var("C")}));
  const EquationSystem nf = normal_form(s);
  CHECK(nf.is_normal_form(true));
  CHECK(nf.rhs("V") == Formula::disj({Formula::var("A"), Formula::var("V'")}));
  CHECK(nf.rhs("V'") == Formula::disj({Formula::var("B"), Formula::var("C")}));
}

TEST_CASE("normal form is idempotent") {
  const EquationSystem nf =
      normal_form(ensure_wellformed(desugar(testutil::load_system("until.mu"))));
  const EquationSystem again = normal_form(nf);
  CHECK(again.vars == nf.vars);
  for (const auto& v : nf.vars) CHECK(again.rhs(v) == nf.rhs(v));
}
