#include "mubra/formula.hpp"

#include <sstream>

namespace mubra {

namespace {

std::shared_ptr<const Basic> box(Basic b) {
  return std::make_shared<const Basic>(std::move(b));
}

}  // namespace

Basic Basic::tt() {
  return Basic(std::make_shared<const Node>(Node{Kind::True, 0, nullptr, nullptr}));
}

Basic Basic::ff() {
  return Basic(std::make_shared<const Node>(Node{Kind::False, 0, nullptr, nullptr}));
}

Basic Basic::atom(int atom_index) {
  return Basic(std::make_shared<const Node>(Node{Kind::Atom, atom_index, nullptr, nullptr}));
}

Basic Basic::neg_atom(int atom_index) {
  return Basic(std::make_shared<const Node>(Node{Kind::NegAtom, atom_index, nullptr, nullptr}));
}

Basic Basic::up(int reg) {
  return Basic(std::make_shared<const Node>(Node{Kind::Up, reg, nullptr, nullptr}));
}

Basic Basic::neg_up(int reg) {
  return Basic(std::make_shared<const Node>(Node{Kind::NegUp, reg, nullptr, nullptr}));
}

Basic Basic::conj(Basic lhs, Basic rhs) {
  return Basic(std::make_shared<const Node>(
      Node{Kind::And, 0, box(std::move(lhs)), box(std::move(rhs))}));
}

const Basic& Basic::lhs() const {
  if (kind() != Kind::And) throw Error("basic formula has no left conjunct");
  return *node_->l;
}

const Basic& Basic::rhs() const {
  if (kind() != Kind::And) throw Error("basic formula has no right conjunct");
  return *node_->r;
}

bool Basic::operator==(const Basic& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::True:
    case Kind::False:
      return true;
    case Kind::Atom:
    case Kind::NegAtom:
    case Kind::Up:
    case Kind::NegUp:
      return symbol() == other.symbol();
    case Kind::And:
      return lhs() == other.lhs() && rhs() == other.rhs();
  }
  return false;
}

bool eval_basic(const Letter& letter, const Assignment& theta, const Basic& phi) {
  switch (phi.kind()) {
    case Basic::Kind::True:
      return true;
    case Basic::Kind::False:
      return false;
    case Basic::Kind::Atom:
      return letter.has_atom(phi.symbol());
    case Basic::Kind::NegAtom:
      return !letter.has_atom(phi.symbol());
    case Basic::Kind::Up:
      return theta.value(phi.symbol()) == letter.datum;
    case Basic::Kind::NegUp:
      return theta.value(phi.symbol()) != letter.datum;
    case Basic::Kind::And:
      return eval_basic(letter, theta, phi.lhs()) &&
             eval_basic(letter, theta, phi.rhs());
  }
  return false;
}

bool eval_basic(const LassoWord& w, Position i, const Assignment& theta,
                const Basic& phi) {
  return eval_basic(letter_at(w, i), theta, phi);
}

Formula Formula::tt() {
  return Formula(std::make_shared<const Node>(Node{Kind::TT, {}, {}, 0, {}}));
}

Formula Formula::var(std::string name) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::Var, std::move(name), {}, 0, {}}));
}

Formula Formula::disj(std::vector<Formula> children) {
  if (children.size() < 2)
    throw Error("a disjunction needs at least two disjuncts");
  return Formula(std::make_shared<const Node>(
      Node{Kind::Or, {}, std::move(children), 0, {}}));
}

Formula Formula::freeze_next(RegSet regs, Formula body, Basic guard) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::FreezeNext, {}, {std::move(body)}, regs, std::move(guard)}));
}

Formula Formula::next(Formula body) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::Next, {}, {std::move(body)}, 0, {}}));
}

Formula Formula::basic(Basic phi) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::BasicF, {}, {}, 0, std::move(phi)}));
}

Formula Formula::conj(Formula l, Formula r) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::And, {}, {std::move(l), std::move(r)}, 0, {}}));
}

const std::string& Formula::var_name() const {
  if (kind() != Kind::Var) throw Error("formula is not a variable");
  return node_->name;
}

const std::vector<Formula>& Formula::children() const {
  if (kind() != Kind::Or) throw Error("formula is not a disjunction");
  return node_->kids;
}

RegSet Formula::update_set() const {
  if (kind() != Kind::FreezeNext) throw Error("formula is not a freeze-next");
  return node_->regs;
}

const Formula& Formula::body() const {
  if (kind() != Kind::FreezeNext && kind() != Kind::Next)
    throw Error("formula has no temporal body");
  return node_->kids[0];
}

const Basic& Formula::guard() const {
  if (kind() != Kind::FreezeNext) throw Error("formula has no guard");
  return *node_->guard;
}

const Basic& Formula::basic_formula() const {
  if (kind() != Kind::BasicF) throw Error("formula is not a bare basic");
  return *node_->guard;
}

const Formula& Formula::lhs() const {
  if (kind() != Kind::And) throw Error("formula is not a conjunction");
  return node_->kids[0];
}

const Formula& Formula::rhs() const {
  if (kind() != Kind::And) throw Error("formula is not a conjunction");
  return node_->kids[1];
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::TT:
      return true;
    case Kind::Var:
      return node_->name == other.node_->name;
    case Kind::Or:
    case Kind::And:
    case Kind::Next: {
      if (node_->kids.size() != other.node_->kids.size()) return false;
      for (std::size_t n = 0; n < node_->kids.size(); ++n)
        if (!(node_->kids[n] == other.node_->kids[n])) return false;
      return true;
    }
    case Kind::FreezeNext:
      return node_->regs == other.node_->regs &&
             node_->kids[0] == other.node_->kids[0] &&
             *node_->guard == *other.node_->guard;
    case Kind::BasicF:
      return *node_->guard == *other.node_->guard;
  }
  return false;
}

bool Formula::is_desugared() const {
  switch (kind()) {
    case Kind::Next:
    case Kind::BasicF:
    case Kind::And:
      return false;
    case Kind::TT:
    case Kind::Var:
      return true;
    case Kind::Or: {
      for (const auto& c : children())
        if (!c.is_desugared()) return false;
      return true;
    }
    case Kind::FreezeNext:
      return body().is_desugared();
  }
  return false;
}

std::optional<Basic> try_basic(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::TT:
      return Basic::tt();
    case Formula::Kind::BasicF:
      return f.basic_formula();
    case Formula::Kind::And: {
      auto l = try_basic(f.lhs());
      if (!l) return std::nullopt;
      auto r = try_basic(f.rhs());
      if (!r) return std::nullopt;
      return Basic::conj(*l, *r);
    }
    default:
      return std::nullopt;
  }
}

namespace {

const std::string& atom_name(const std::vector<std::string>& atoms, int index) {
  if (index < 0 || static_cast<std::size_t>(index) >= atoms.size())
    throw Error("atom index out of range of the declared alphabet");
  return atoms[static_cast<std::size_t>(index)];
}

// Conjunction chains print flat when left-nested; a right-nested conjunct is
// parenthesized so the rendering stays injective.
void print_basic(std::ostringstream& os, const Basic& phi,
                 const std::vector<std::string>& atoms, bool parenthesize) {
  if (phi.kind() == Basic::Kind::And) {
    if (parenthesize) os << '(';
    print_basic(os, phi.lhs(), atoms, false);
    os << " & ";
    print_basic(os, phi.rhs(), atoms, phi.rhs().kind() == Basic::Kind::And);
    if (parenthesize) os << ')';
    return;
  }
  switch (phi.kind()) {
    case Basic::Kind::True: os << "tt"; break;
    case Basic::Kind::False: os << "ff"; break;
    case Basic::Kind::Atom: os << atom_name(atoms, phi.symbol()); break;
    case Basic::Kind::NegAtom: os << '!' << atom_name(atoms, phi.symbol()); break;
    case Basic::Kind::Up: os << "up " << phi.symbol(); break;
    case Basic::Kind::NegUp: os << "!up " << phi.symbol(); break;
    case Basic::Kind::And: break;  // handled above
  }
}

void print_reg_set(std::ostringstream& os, RegSet regs) {
  os << '{';
  bool first = true;
  for (int r = 1; r <= kMaxRegisters; ++r) {
    if (!reg_set_contains(regs, r)) continue;
    if (!first) os << ',';
    os << r;
    first = false;
  }
  os << '}';
}

void print_formula(std::ostringstream& os, const Formula& f,
                   const std::vector<std::string>& atoms);

// Argument of a prefix X: bare only for variables and tt.
void print_unary_arg(std::ostringstream& os, const Formula& f,
                     const std::vector<std::string>& atoms) {
  if (f.kind() == Formula::Kind::Var || f.kind() == Formula::Kind::TT) {
    print_formula(os, f, atoms);
  } else {
    os << '(';
    print_formula(os, f, atoms);
    os << ')';
  }
}

void print_conjunct(std::ostringstream& os, const Formula& f,
                    const std::vector<std::string>& atoms) {
  const bool parens =
      f.kind() == Formula::Kind::Or || f.kind() == Formula::Kind::And ||
      f.kind() == Formula::Kind::FreezeNext ||
      (f.kind() == Formula::Kind::BasicF &&
       f.basic_formula().kind() == Basic::Kind::And);
  if (parens) os << '(';
  print_formula(os, f, atoms);
  if (parens) os << ')';
}

void print_formula(std::ostringstream& os, const Formula& f,
                   const std::vector<std::string>& atoms) {
  switch (f.kind()) {
    case Formula::Kind::TT:
      os << "tt";
      return;
    case Formula::Kind::Var:
      os << f.var_name();
      return;
    case Formula::Kind::BasicF:
      print_basic(os, f.basic_formula(), atoms, false);
      return;
    case Formula::Kind::Or: {
      bool first = true;
      for (const auto& c : f.children()) {
        if (!first) os << " | ";
        if (c.kind() == Formula::Kind::Or) {
          os << '(';
          print_formula(os, c, atoms);
          os << ')';
        } else {
          print_formula(os, c, atoms);
        }
        first = false;
      }
      return;
    }
    case Formula::Kind::And:
      print_conjunct(os, f.lhs(), atoms);
      os << " & ";
      print_conjunct(os, f.rhs(), atoms);
      return;
    case Formula::Kind::Next:
      os << "X ";
      print_unary_arg(os, f.body(), atoms);
      return;
    case Formula::Kind::FreezeNext: {
      if (f.update_set() != 0) {
        os << "down ";
        print_reg_set(os, f.update_set());
        os << ' ';
      }
      os << "X ";
      print_unary_arg(os, f.body(), atoms);
      os << " & ";
      print_basic(os, f.guard(), atoms, false);
      return;
    }
  }
}

}  // namespace

std::string to_text(const Basic& phi, const std::vector<std::string>& atoms) {
  std::ostringstream os;
  print_basic(os, phi, atoms, false);
  return os.str();
}

std::string to_text(const Formula& f, const std::vector<std::string>& atoms) {
  std::ostringstream os;
  print_formula(os, f, atoms);
  return os.str();
}

}  // namespace mubra
