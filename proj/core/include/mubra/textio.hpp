#pragma once

#include <string>
#include <string_view>

#include "mubra/bra.hpp"
#include "mubra/system.hpp"

namespace mubra {

/// Parse the line-oriented system format. The result round-trips:
/// parse_system(serialize_system(s)) is structurally equal to s.
EquationSystem parse_system(std::string_view text);

/// Parse the automaton format. Epsilon rules with nonempty update sets are
/// rejected.
BuchiRa parse_bra(std::string_view text);

/// Parse a lasso word against a declared alphabet. The period must be
/// nonempty.
LassoWord parse_lasso(std::string_view text,
                      const std::vector<std::string>& atoms);

std::string serialize_system(const EquationSystem& s);
std::string serialize_bra(const BuchiRa& a);
std::string serialize_lasso(const LassoWord& w,
                            const std::vector<std::string>& atoms);

/// Graphviz rendering of an automaton (plain text export).
std::string bra_to_dot(const BuchiRa& a);

}  // namespace mubra
