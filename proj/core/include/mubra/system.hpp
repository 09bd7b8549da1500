#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mubra/formula.hpp"

namespace mubra {

/// System of equations V = sigma(V) with a main variable, a set of
/// omega-variables, and a declared alphabet / register count.
struct EquationSystem {
  std::vector<std::string> atoms;        // declared alphabet, index order
  int register_count = 0;                // k
  std::vector<std::string> vars;         // equation order
  std::vector<std::string> omega_vars;   // subset of vars, declaration order
  std::string main_var;
  std::unordered_map<std::string, Formula> sigma;

  const Formula& rhs(const std::string& v) const;
  bool has_var(const std::string& v) const { return sigma.count(v) != 0; }
  bool is_omega(const std::string& v) const;

  /// First omega-variable whose right-hand side is tt, if any.
  std::optional<std::string> find_vtt() const;

  /// Structural checks: main and omega declared, rhs variables declared,
  /// atom/register indices in range. Throws on violation.
  void validate() const;

  bool is_desugared() const;

  /// Well-formed: some omega-variable has rhs tt, and no omega-variable
  /// shares its right-hand side with any other variable.
  bool is_wellformed() const;

  enum class RhsShape { TrueConst, VarDisjunction, FreezeStep, Other };

  /// Normal-form shape classifier. VarDisjunction covers a bare variable and
  /// n-ary disjunctions of variables; FreezeStep requires the body to be a
  /// variable or tt.
  static RhsShape shape_of(const Formula& f);

  /// All equations in normal form. With binary_disjunctions, disjunctions
  /// must have exactly two disjuncts (and a bare variable is not allowed).
  bool is_normal_form(bool binary_disjunctions) const;
};

}  // namespace mubra
