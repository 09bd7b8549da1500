#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mubra/formula.hpp"

namespace mubra {

/// Transition rule (q, guard, R) -> q'. A missing guard is an epsilon rule,
/// which consumes no input and must not update registers.
struct TransitionRule {
  std::string source;
  std::optional<Basic> guard;  // nullopt = epsilon
  RegSet update = 0;
  std::string target;

  bool is_epsilon() const { return !guard.has_value(); }
  bool operator==(const TransitionRule& other) const {
    return source == other.source && update == other.update &&
           target == other.target &&
           guard.has_value() == other.guard.has_value() &&
           (!guard || *guard == *other.guard);
  }
};

/// Buechi register automaton with k registers over sets of atoms and an
/// infinite data domain.
struct BuchiRa {
  std::vector<std::string> atoms;
  int register_count = 0;
  std::vector<std::string> states;     // declaration order
  std::string initial;
  std::vector<TransitionRule> rules;   // declaration order
  std::vector<std::string> accepting;  // subset of states

  bool has_state(const std::string& q) const;
  bool is_accepting(const std::string& q) const;
  bool has_epsilon_rules() const;

  /// True when every state has at least one outgoing rule.
  bool is_total() const;

  /// Structural checks: endpoints declared, epsilon rules have empty update
  /// sets, indices in range, no duplicate state names. Throws on violation.
  void validate() const;
};

/// Automaton configuration: state, register assignment, and the 1-based
/// position of the remaining input suffix.
struct InstantaneousDescription {
  std::string state;
  Assignment assignment;
  Position position = 1;

  friend auto operator<=>(const InstantaneousDescription&,
                          const InstantaneousDescription&) = default;
};

std::string to_string(const InstantaneousDescription& id);

}  // namespace mubra
