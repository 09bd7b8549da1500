#pragma once

#include <map>

#include "mubra/bra.hpp"
#include "mubra/system.hpp"

namespace mubra {

/// Remove epsilon rules, preserving the accepted language. For each state q
/// and consuming rule (src, phi, R) -> tgt with src epsilon-reachable from q,
/// the output has (q, phi, R) -> tgt. When some accepting state can occur
/// strictly inside an epsilon passage (invisible to a state-based acceptance
/// condition), states are duplicated into plain and accepting-marked copies
/// and such rules target the marked copy; otherwise states are untouched.
BuchiRa eliminate_epsilon(const BuchiRa& a);

/// Give every rule-less state the never-firing self rule (q, ff, {}) -> q.
/// Input must be epsilon-free; the language is unchanged.
BuchiRa totalize(const BuchiRa& a);

struct FromBraResult {
  EquationSystem system;
  /// Automaton state -> variable standing for it (V_q in the construction).
  std::map<std::string, std::string> state_var;
  /// Rule index -> variable standing for it (V_r in the construction).
  std::vector<std::string> rule_vars;
};

/// Construct the system equivalent to an epsilon-free automaton in which
/// every state has an outgoing rule: one variable per state (the disjunction
/// of its rule variables, in declaration order), one variable per rule (the
/// freeze step it performs), plus a tt variable; omega-variables are the
/// accepting-state variables and the tt variable; main is the initial
/// state's variable.
FromBraResult from_bra(const BuchiRa& a);

}  // namespace mubra
