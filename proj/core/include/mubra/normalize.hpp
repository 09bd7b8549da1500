#pragma once

#include "mubra/system.hpp"

namespace mubra {

/// A system whose omega right-hand-side collisions cannot be removed while
/// keeping names, the omega set, and the normal shapes intact.
class UnrepairableError : public Error {
 public:
  using Error::Error;
};

/// Remove sugar: X psi becomes a freeze-next with empty register set and tt
/// guard; a bare basic phi becomes `X tt & phi`; a conjunction pushes its
/// basic side into the other side's freeze-next guard. Rejects conjunctions
/// with two non-basic sides and conjunctions whose non-basic side is not a
/// freeze/next formula.
Formula desugar_formula(const Formula& f);

/// desugar_formula applied to every equation.
EquationSystem desugar(const EquationSystem& s);

/// Establish the system requirements: add a fresh omega-variable with rhs tt
/// if none exists, and rewrite non-omega duplicates of omega right-hand
/// sides to `rhs | (X tt & ff)`. Two distinct omega-variables with the same
/// right-hand side cannot be repaired and raise an error. Input must be
/// desugared.
EquationSystem ensure_wellformed(const EquationSystem& s);

/// Transform into normal form: every equation is V = V' | V'', a freeze step
/// with a variable (or tt) body, or tt. Fresh variables are never
/// omega-variables; original names, omega set and main variable are kept.
/// Input must be desugared and well-formed.
EquationSystem normal_form(const EquationSystem& s);

}  // namespace mubra
