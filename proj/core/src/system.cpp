#include "mubra/system.hpp"

#include <algorithm>

namespace mubra {

namespace {

void check_basic_indices(const Basic& phi, std::size_t atom_count, int k) {
  switch (phi.kind()) {
    case Basic::Kind::True:
    case Basic::Kind::False:
      return;
    case Basic::Kind::Atom:
    case Basic::Kind::NegAtom:
      if (phi.symbol() < 0 || static_cast<std::size_t>(phi.symbol()) >= atom_count)
        throw Error("atom index out of range of the declared alphabet");
      return;
    case Basic::Kind::Up:
    case Basic::Kind::NegUp:
      if (phi.symbol() < 1 || phi.symbol() > k)
        throw Error("register index " + std::to_string(phi.symbol()) +
                    " out of range [1," + std::to_string(k) + "]");
      return;
    case Basic::Kind::And:
      check_basic_indices(phi.lhs(), atom_count, k);
      check_basic_indices(phi.rhs(), atom_count, k);
      return;
  }
}

void check_formula(const Formula& f, const EquationSystem& s) {
  switch (f.kind()) {
    case Formula::Kind::TT:
      return;
    case Formula::Kind::Var:
      if (!s.has_var(f.var_name()))
        throw Error("unknown variable '" + f.var_name() + "'");
      return;
    case Formula::Kind::Or:
      for (const auto& c : f.children()) check_formula(c, s);
      return;
    case Formula::Kind::FreezeNext:
      if (s.register_count < kMaxRegisters &&
          (f.update_set() >> s.register_count) != 0)
        throw Error("freeze set mentions a register beyond k=" +
                    std::to_string(s.register_count));
      check_basic_indices(f.guard(), s.atoms.size(), s.register_count);
      check_formula(f.body(), s);
      return;
    case Formula::Kind::Next:
      check_formula(f.body(), s);
      return;
    case Formula::Kind::BasicF:
      check_basic_indices(f.basic_formula(), s.atoms.size(), s.register_count);
      return;
    case Formula::Kind::And:
      check_formula(f.lhs(), s);
      check_formula(f.rhs(), s);
      return;
  }
}

}  // namespace

const Formula& EquationSystem::rhs(const std::string& v) const {
  auto it = sigma.find(v);
  if (it == sigma.end()) throw Error("unknown variable '" + v + "'");
  return it->second;
}

bool EquationSystem::is_omega(const std::string& v) const {
  return std::find(omega_vars.begin(), omega_vars.end(), v) != omega_vars.end();
}

std::optional<std::string> EquationSystem::find_vtt() const {
  for (const auto& v : omega_vars)
    if (rhs(v).kind() == Formula::Kind::TT) return v;
  return std::nullopt;
}

void EquationSystem::validate() const {
  if (register_count < 0 || register_count > kMaxRegisters)
    throw Error("register count out of range [0," +
                std::to_string(kMaxRegisters) + "]");
  if (atoms.size() > static_cast<std::size_t>(kMaxAtoms))
    throw Error("too many atomic propositions");
  if (vars.empty()) throw Error("system declares no equations");
  if (vars.size() != sigma.size())
    throw Error("variable list and equation map disagree");
  for (const auto& v : vars)
    if (!has_var(v)) throw Error("variable '" + v + "' has no equation");
  if (!has_var(main_var))
    throw Error("unknown variable '" + main_var + "' designated as main");
  for (const auto& v : omega_vars)
    if (!has_var(v))
      throw Error("unknown variable '" + v + "' declared as omega");
  for (const auto& v : vars) check_formula(rhs(v), *this);
}

bool EquationSystem::is_desugared() const {
  for (const auto& v : vars)
    if (!rhs(v).is_desugared()) return false;
  return true;
}

bool EquationSystem::is_wellformed() const {
  if (!find_vtt()) return false;
  for (const auto& w : omega_vars)
    for (const auto& v : vars)
      if (w != v && rhs(w) == rhs(v)) return false;
  return true;
}

EquationSystem::RhsShape EquationSystem::shape_of(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::TT:
      return RhsShape::TrueConst;
    case Formula::Kind::Var:
      return RhsShape::VarDisjunction;
    case Formula::Kind::Or: {
      for (const auto& c : f.children())
        if (c.kind() != Formula::Kind::Var) return RhsShape::Other;
      return RhsShape::VarDisjunction;
    }
    case Formula::Kind::FreezeNext: {
      const auto bk = f.body().kind();
      if (bk == Formula::Kind::Var || bk == Formula::Kind::TT)
        return RhsShape::FreezeStep;
      return RhsShape::Other;
    }
    default:
      return RhsShape::Other;
  }
}

bool EquationSystem::is_normal_form(bool binary_disjunctions) const {
  for (const auto& v : vars) {
    const Formula& f = rhs(v);
    switch (shape_of(f)) {
      case RhsShape::Other:
        return false;
      case RhsShape::VarDisjunction:
        if (binary_disjunctions &&
            (f.kind() != Formula::Kind::Or || f.children().size() != 2))
          return false;
        break;
      default:
        break;
    }
  }
  return true;
}

}  // namespace mubra
