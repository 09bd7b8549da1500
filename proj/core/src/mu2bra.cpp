#include "mubra/mu2bra.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace mubra {

BuchiRa to_bra(const EquationSystem& s) {
  s.validate();
  if (!s.is_desugared()) throw Error("to_bra expects a desugared system");
  if (!s.is_wellformed())
    throw Error(
        "to_bra expects a well-formed system (run ensure_wellformed first)");
  if (!s.is_normal_form(/*binary_disjunctions=*/false))
    throw Error("to_bra expects a system in normal form");

  BuchiRa a;
  a.atoms = s.atoms;
  a.register_count = s.register_count;

  // States are the distinct right-hand sides, in equation order.
  auto label = [&](const Formula& f) { return to_text(f, s.atoms); };
  std::unordered_set<std::string> seen;
  std::vector<std::pair<std::string, Formula>> state_formulas;
  for (const auto& v : s.vars) {
    std::string l = label(s.rhs(v));
    if (seen.insert(l).second) state_formulas.emplace_back(l, s.rhs(v));
  }
  for (const auto& [l, f] : state_formulas) {
    a.states.push_back(l);
    (void)f;
  }
  a.initial = label(s.rhs(s.main_var));

  auto target_of_body = [&](const Formula& body) -> std::string {
    if (body.kind() == Formula::Kind::TT) return "tt";
    return label(s.rhs(body.var_name()));
  };

  auto add_rule = [&](TransitionRule rule) {
    if (std::find(a.rules.begin(), a.rules.end(), rule) == a.rules.end())
      a.rules.push_back(std::move(rule));
  };

  for (const auto& [state, f] : state_formulas) {
    switch (f.kind()) {
      case Formula::Kind::TT:
        add_rule(TransitionRule{state, Basic::tt(), 0, state});
        break;
      case Formula::Kind::Var:
        add_rule(TransitionRule{state, std::nullopt, 0,
                                label(s.rhs(f.var_name()))});
        break;
      case Formula::Kind::Or:
        for (const auto& c : f.children())
          add_rule(TransitionRule{state, std::nullopt, 0,
                                  label(s.rhs(c.var_name()))});
        break;
      case Formula::Kind::FreezeNext:
        add_rule(TransitionRule{state, f.guard(), f.update_set(),
                                target_of_body(f.body())});
        break;
      default:
        throw Error("to_bra expects a system in normal form");
    }
  }

  for (const auto& v : s.omega_vars) {
    std::string l = label(s.rhs(v));
    if (std::find(a.accepting.begin(), a.accepting.end(), l) ==
        a.accepting.end())
      a.accepting.push_back(std::move(l));
  }

  a.validate();
  return a;
}

}  // namespace mubra
