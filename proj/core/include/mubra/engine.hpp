#pragma once

#include <optional>

#include "mubra/bra.hpp"

namespace mubra {
namespace engine {

struct Limits {
  /// Cap on |Q| * |D_w|^k * (prefix + period); exploration refuses to start
  /// above it.
  std::size_t max_configurations = 10'000'000;
};

/// Upper bound on the folded configuration count for accepts().
double configuration_bound(const BuchiRa& a, const LassoWord& w);

/// One application of the transition relation: all IDs derivable from id by
/// a single rule. Consuming rules advance the position and update registers
/// with the current datum; epsilon rules keep both.
std::vector<InstantaneousDescription> step(const BuchiRa& a,
                                           const LassoWord& w,
                                           const InstantaneousDescription& id);

/// All IDs with position <= horizon reachable from `from` via any number of
/// steps (including `from` itself). Deterministically ordered.
std::vector<InstantaneousDescription> reach(const BuchiRa& a,
                                            const LassoWord& w,
                                            const InstantaneousDescription& from,
                                            Position horizon,
                                            const Limits& limits = {});

/// Buechi membership of an ultimately periodic word: some accepting state is
/// visited at infinitely many strictly increasing positions. Decided by SCC
/// search over the folded configuration graph; an SCC qualifies when it
/// contains an accepting-state configuration and an internal consuming edge.
bool accepts(const BuchiRa& a, const LassoWord& w, const Limits& limits = {});

struct RunWitness {
  std::vector<InstantaneousDescription> stem;   // initial ID to cycle entry
  std::vector<InstantaneousDescription> cycle;  // first traversal, back to entry
};

/// Like accepts, but also produces a stem:cycle witness when accepting.
std::optional<RunWitness> accepting_run(const BuchiRa& a, const LassoWord& w,
                                        const Limits& limits = {});

}  // namespace engine
}  // namespace mubra
