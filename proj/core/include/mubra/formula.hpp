#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mubra/data.hpp"

namespace mubra {

/// Basic formula (guard level): atoms, register look-ups, negation on atoms
/// and look-ups only, conjunction, tt, ff. Immutable tree.
class Basic {
 public:
  enum class Kind : std::uint8_t { True, False, Atom, NegAtom, Up, NegUp, And };

  static Basic tt();
  static Basic ff();
  static Basic atom(int atom_index);
  static Basic neg_atom(int atom_index);
  static Basic up(int reg);
  static Basic neg_up(int reg);
  static Basic conj(Basic lhs, Basic rhs);

  Kind kind() const { return node_->kind; }
  int symbol() const { return node_->sym; }  // atom index or register
  const Basic& lhs() const;
  const Basic& rhs() const;

  bool operator==(const Basic& other) const;

 private:
  struct Node;
  explicit Basic(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  struct Node {
    Kind kind;
    int sym = 0;
    std::shared_ptr<const Basic> l, r;
  };
  std::shared_ptr<const Node> node_;
};

/// Truth of a basic formula at one letter under an assignment.
bool eval_basic(const Letter& letter, const Assignment& theta, const Basic& phi);

/// Truth of a basic formula at position i of w under theta.
bool eval_basic(const LassoWord& w, Position i, const Assignment& theta,
                const Basic& phi);

/// Formula over variables: V | disjunction | freeze-next-with-guard | tt.
/// Next, bare-basic and conjunction nodes are sugar that survives parsing
/// and disappears after desugaring.
class Formula {
 public:
  enum class Kind : std::uint8_t { TT, Var, Or, FreezeNext, Next, BasicF, And };

  static Formula tt();
  static Formula var(std::string name);
  static Formula disj(std::vector<Formula> children);  // n >= 2
  static Formula freeze_next(RegSet regs, Formula body, Basic guard);
  static Formula next(Formula body);         // sugar
  static Formula basic(Basic phi);           // sugar
  static Formula conj(Formula l, Formula r); // sugar

  Kind kind() const { return node_->kind; }
  const std::string& var_name() const;
  const std::vector<Formula>& children() const;  // Or
  RegSet update_set() const;                     // FreezeNext
  const Formula& body() const;                   // FreezeNext / Next
  const Basic& guard() const;                    // FreezeNext
  const Basic& basic_formula() const;            // BasicF
  const Formula& lhs() const;                    // And
  const Formula& rhs() const;                    // And

  bool operator==(const Formula& other) const;

  /// True when no sugar node (Next, BasicF, And) occurs anywhere.
  bool is_desugared() const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  struct Node {
    Kind kind;
    std::string name;             // Var
    std::vector<Formula> kids;    // Or / And(2) / Next(1) / FreezeNext body(1)
    RegSet regs = 0;              // FreezeNext
    std::optional<Basic> guard;   // FreezeNext / BasicF
  };
  std::shared_ptr<const Node> node_;
};

/// Interpret a (possibly sugared) formula as a basic formula when possible:
/// tt, bare basics, and conjunctions of such.
std::optional<Basic> try_basic(const Formula& f);

/// Canonical text rendering; injective on desugared formulas, and
/// parse(to_text(f)) reconstructs f node for node.
std::string to_text(const Basic& phi, const std::vector<std::string>& atoms);
std::string to_text(const Formula& f, const std::vector<std::string>& atoms);

}  // namespace mubra
