#pragma once

#include <functional>
#include <random>

#include "mubra/bra.hpp"
#include "mubra/system.hpp"

namespace mubra {
namespace gen {

using Rng = std::mt19937_64;

struct Config {
  int max_states = 4;   // automaton states / system variables besides Vtt
  int max_regs = 2;
  int max_atoms = 2;
  int max_prefix = 3;
  int max_period = 2;
  int datum_pool = 2;   // word datums drawn from [0, datum_pool)
  double bottom_datum_prob = 0.08;
};

LassoWord gen_lasso(Rng& rng, const Config& cfg, int atom_count);

Basic gen_guard(Rng& rng, int atom_count, int k);

/// Random automaton. Without epsilon rules the result is total by
/// construction; with them, epsilon rules are sprinkled in and an epsilon
/// cycle through an accepting state is added half of the time.
BuchiRa gen_bra(Rng& rng, const Config& cfg, bool with_epsilon);

/// Random system already desugared, well-formed and in normal form
/// (small enough for the oracle's default window).
EquationSystem gen_system_normal(Rng& rng, const Config& cfg);

/// Random system with arbitrary grammar-valid right-hand sides (sugar
/// included); well-formedness is not guaranteed.
EquationSystem gen_system_raw(Rng& rng, const Config& cfg);

/// Greedy shrinking: repeatedly apply the smallest reduction that keeps
/// still_failing true. Deterministic.
LassoWord shrink_lasso(const LassoWord& w,
                       const std::function<bool(const LassoWord&)>& still_failing);
BuchiRa shrink_bra(const BuchiRa& a,
                   const std::function<bool(const BuchiRa&)>& still_failing);
EquationSystem shrink_system(
    const EquationSystem& s,
    const std::function<bool(const EquationSystem&)>& still_failing);

}  // namespace gen
}  // namespace mubra
