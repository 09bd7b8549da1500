#pragma once

#include "mubra/bra.hpp"
#include "mubra/system.hpp"

namespace mubra {

/// Construct the automaton equivalent to a normal-form system. States are the
/// right-hand sides themselves, canonically serialized and deduplicated;
/// the initial state is sigma(main); a disjunction state gets one epsilon
/// rule per disjunct; a freeze step `down R X V & phi` gets the rule
/// (phi, R) -> sigma(V); the tt state loops under guard tt; accepting states
/// are the right-hand sides of the omega-variables.
///
/// The system must be desugared, well-formed, and in normal form (n-ary
/// disjunctions of variables are allowed, as is a bare variable).
BuchiRa to_bra(const EquationSystem& s);

}  // namespace mubra
