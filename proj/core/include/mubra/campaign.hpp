#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mubra/random_gen.hpp"

namespace mubra {
namespace campaign {

struct Options {
  std::uint64_t seed = 1;
  int cases = 200;
  gen::Config gen;
  std::string counterexample_dir;  // empty: do not write counterexamples
};

struct Result {
  std::string name;
  int cases = 0;
  int failures = 0;
  int inconclusive = 0;
  std::string note;  // first counterexample description, when failing
};

/// Windowed tuple membership in the oracle's least fixed point agrees with
/// engine reachability on the constructed automaton (both directions), for
/// every tuple of the window universe.
Result tuple_reachability_agreement(const Options& opt);

/// Oracle satisfaction of a system equals engine membership of the
/// constructed automaton, at the oracle's default window.
Result language_agreement(const Options& opt);

/// Membership is preserved by the round trip automaton -> system ->
/// automaton, on words_per_case random words per automaton.
Result roundtrip_bra(const Options& opt, int words_per_case);

/// eliminate_epsilon preserves membership (inputs carry epsilon rules,
/// including epsilon cycles through accepting states).
Result epsilon_elimination_preservation(const Options& opt);

/// totalize preserves membership on epsilon-free automata.
Result totalize_preservation(const Options& opt);

/// normal_form output has the three normal shapes, introduces no
/// omega-variables, and preserves satisfaction (oracle before vs oracle and
/// engine after).
Result normal_form_shapes(const Options& opt);

/// apply_F is monotone: u1 within u2 implies F(u1) within F(u2).
Result oracle_monotonicity(const Options& opt);

/// Tuple membership depends only on the letters between its two positions.
Result oracle_locality(const Options& opt);

/// Periodic shift invariance of the fixed point beyond the prefix.
Result oracle_periodicity(const Options& opt);

/// The standard difftest battery, logging one line per property.
std::vector<Result> run_all(const Options& opt, std::ostream& log);

}  // namespace campaign
}  // namespace mubra
