#include "mubra/bra.hpp"

#include <algorithm>
#include <unordered_set>

namespace mubra {

namespace {

void check_guard_indices(const Basic& phi, std::size_t atom_count, int k) {
  switch (phi.kind()) {
    case Basic::Kind::True:
    case Basic::Kind::False:
      return;
    case Basic::Kind::Atom:
    case Basic::Kind::NegAtom:
      if (phi.symbol() < 0 || static_cast<std::size_t>(phi.symbol()) >= atom_count)
        throw Error("guard mentions an atom outside the declared alphabet");
      return;
    case Basic::Kind::Up:
    case Basic::Kind::NegUp:
      if (phi.symbol() < 1 || phi.symbol() > k)
        throw Error("guard mentions register " + std::to_string(phi.symbol()) +
                    " outside [1," + std::to_string(k) + "]");
      return;
    case Basic::Kind::And:
      check_guard_indices(phi.lhs(), atom_count, k);
      check_guard_indices(phi.rhs(), atom_count, k);
      return;
  }
}

}  // namespace

bool BuchiRa::has_state(const std::string& q) const {
  return std::find(states.begin(), states.end(), q) != states.end();
}

bool BuchiRa::is_accepting(const std::string& q) const {
  return std::find(accepting.begin(), accepting.end(), q) != accepting.end();
}

bool BuchiRa::has_epsilon_rules() const {
  return std::any_of(rules.begin(), rules.end(),
                     [](const TransitionRule& r) { return r.is_epsilon(); });
}

bool BuchiRa::is_total() const {
  std::unordered_set<std::string> with_rule;
  for (const auto& r : rules) with_rule.insert(r.source);
  return std::all_of(states.begin(), states.end(), [&](const std::string& q) {
    return with_rule.count(q) != 0;
  });
}

void BuchiRa::validate() const {
  if (register_count < 0 || register_count > kMaxRegisters)
    throw Error("register count out of range [0," +
                std::to_string(kMaxRegisters) + "]");
  if (states.empty()) throw Error("automaton declares no states");
  std::unordered_set<std::string> seen;
  for (const auto& q : states)
    if (!seen.insert(q).second)
      throw Error("duplicate state '" + q + "'");
  if (!has_state(initial))
    throw Error("unknown initial state '" + initial + "'");
  for (const auto& q : accepting)
    if (!has_state(q)) throw Error("unknown accepting state '" + q + "'");
  for (const auto& r : rules) {
    if (!has_state(r.source))
      throw Error("rule from unknown state '" + r.source + "'");
    if (!has_state(r.target))
      throw Error("rule to unknown state '" + r.target + "'");
    if (r.is_epsilon()) {
      if (r.update != 0)
        throw Error("epsilon rules must have an empty update set");
    } else {
      check_guard_indices(*r.guard, atoms.size(), register_count);
    }
    if (register_count < kMaxRegisters && (r.update >> register_count) != 0)
      throw Error("update set mentions a register beyond k=" +
                  std::to_string(register_count));
  }
}

std::string to_string(const InstantaneousDescription& id) {
  return "(" + id.state + "," + to_string(id.assignment) + "," +
         std::to_string(id.position) + ")";
}

}  // namespace mubra
