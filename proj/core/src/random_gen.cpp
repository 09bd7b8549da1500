#include "mubra/random_gen.hpp"

#include <algorithm>
#include <cmath>

#include "mubra/normalize.hpp"
#include "mubra/oracle.hpp"

namespace mubra {
namespace gen {

namespace {

int pick(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool chance(Rng& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

Letter gen_letter(Rng& rng, const Config& cfg, int atom_count) {
  Letter letter;
  for (int n = 0; n < atom_count; ++n)
    if (chance(rng, 0.5)) letter.atoms |= AtomSet{1} << n;
  if (chance(rng, cfg.bottom_datum_prob))
    letter.datum = DataValue::bottom();
  else
    letter.datum = DataValue::integer(pick(rng, 0, cfg.datum_pool - 1));
  return letter;
}

std::vector<std::string> atom_names(int count) {
  std::vector<std::string> out;
  for (int n = 1; n <= count; ++n) out.push_back("p" + std::to_string(n));
  return out;
}

// Registers are biased toward one so oracle windows stay small.
int gen_reg_count(Rng& rng, const Config& cfg) {
  if (cfg.max_regs <= 1) return std::max(1, cfg.max_regs);
  return chance(rng, 0.35) ? pick(rng, 2, cfg.max_regs) : 1;
}

RegSet gen_reg_set(Rng& rng, int k) {
  RegSet regs = 0;
  for (int r = 1; r <= k; ++r)
    if (chance(rng, 0.35)) regs = reg_set_add(regs, r);
  return regs;
}

}  // namespace

LassoWord gen_lasso(Rng& rng, const Config& cfg, int atom_count) {
  LassoWord w;
  const int prefix = pick(rng, 0, cfg.max_prefix);
  const int period = pick(rng, 1, std::max(1, cfg.max_period));
  for (int n = 0; n < prefix; ++n)
    w.prefix.push_back(gen_letter(rng, cfg, atom_count));
  for (int n = 0; n < period; ++n)
    w.period.push_back(gen_letter(rng, cfg, atom_count));
  return w;
}

Basic gen_guard(Rng& rng, int atom_count, int k) {
  // Leaves inside conjunctions avoid tt/ff so the canonical rendering of the
  // guard reparses to the identical tree.
  auto leaf = [&]() -> Basic {
    const int roll = pick(rng, 0, 1 + (atom_count > 0 ? 2 : 0));
    switch (roll) {
      case 0: return k > 0 ? Basic::up(pick(rng, 1, k)) : Basic::tt();
      case 1: return k > 0 ? Basic::neg_up(pick(rng, 1, k)) : Basic::tt();
      case 2: return Basic::atom(pick(rng, 0, atom_count - 1));
      default: return Basic::neg_atom(pick(rng, 0, atom_count - 1));
    }
  };
  if (chance(rng, 0.25)) return Basic::tt();
  if (chance(rng, 0.05)) return Basic::ff();
  Basic guard = leaf();
  const int extra = pick(rng, 0, 2);
  for (int n = 0; n < extra; ++n) guard = Basic::conj(guard, leaf());
  return guard;
}

BuchiRa gen_bra(Rng& rng, const Config& cfg, bool with_epsilon) {
  BuchiRa a;
  const int atom_count = pick(rng, 0, cfg.max_atoms);
  a.atoms = atom_names(atom_count);
  a.register_count = gen_reg_count(rng, cfg);
  const int state_count = pick(rng, 1, cfg.max_states);
  for (int n = 0; n < state_count; ++n)
    a.states.push_back("q" + std::to_string(n));
  a.initial = a.states[0];
  for (const auto& q : a.states)
    if (chance(rng, 0.4)) a.accepting.push_back(q);

  for (const auto& q : a.states) {
    const int rule_count = pick(rng, 1, 3);
    for (int n = 0; n < rule_count; ++n) {
      TransitionRule rule;
      rule.source = q;
      rule.guard = gen_guard(rng, atom_count, a.register_count);
      rule.update = gen_reg_set(rng, a.register_count);
      rule.target = a.states[static_cast<std::size_t>(pick(rng, 0, state_count - 1))];
      a.rules.push_back(std::move(rule));
    }
  }

  if (with_epsilon) {
    const int eps_count = pick(rng, 1, state_count + 1);
    for (int n = 0; n < eps_count; ++n) {
      TransitionRule rule;
      rule.source = a.states[static_cast<std::size_t>(pick(rng, 0, state_count - 1))];
      rule.guard = std::nullopt;
      rule.target = a.states[static_cast<std::size_t>(pick(rng, 0, state_count - 1))];
      a.rules.push_back(std::move(rule));
    }
    if (chance(rng, 0.5)) {
      // An epsilon cycle through an accepting state.
      const std::string& q =
          a.states[static_cast<std::size_t>(pick(rng, 0, state_count - 1))];
      const std::string& f =
          a.states[static_cast<std::size_t>(pick(rng, 0, state_count - 1))];
      if (!a.is_accepting(f)) a.accepting.push_back(f);
      a.rules.push_back(TransitionRule{q, std::nullopt, 0, f});
      a.rules.push_back(TransitionRule{f, std::nullopt, 0, q});
    }
  }

  a.validate();
  return a;
}

EquationSystem gen_system_normal(Rng& rng, const Config& cfg) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    EquationSystem s;
    const int atom_count = pick(rng, 0, cfg.max_atoms);
    s.atoms = atom_names(atom_count);
    s.register_count = gen_reg_count(rng, cfg);
    const int var_count = pick(rng, 1, cfg.max_states);
    std::vector<std::string> names;
    for (int n = 1; n <= var_count; ++n)
      names.push_back("V" + std::to_string(n));
    s.vars = names;
    s.vars.push_back("Vtt");
    s.sigma.emplace("Vtt", Formula::tt());

    auto any_var = [&]() -> Formula {
      const int roll = pick(rng, 0, static_cast<int>(s.vars.size()) - 1);
      return Formula::var(s.vars[static_cast<std::size_t>(roll)]);
    };
    for (const auto& v : names) {
      if (chance(rng, 0.4)) {
        s.sigma.emplace(v, Formula::disj({any_var(), any_var()}));
      } else {
        Formula body = chance(rng, 0.15) ? Formula::tt() : any_var();
        s.sigma.emplace(
            v, Formula::freeze_next(gen_reg_set(rng, s.register_count),
                                    std::move(body),
                                    gen_guard(rng, atom_count,
                                              s.register_count)));
      }
    }
    for (const auto& v : names)
      if (chance(rng, 0.3)) s.omega_vars.push_back(v);
    s.omega_vars.push_back("Vtt");
    s.main_var = names[static_cast<std::size_t>(pick(rng, 0, var_count - 1))];

    s.validate();
    if (!s.is_wellformed()) continue;
    if (!s.is_normal_form(false)) continue;
    // Keep the oracle's default window affordable.
    const double dk = std::pow(3.0 + 1.0, static_cast<double>(s.register_count));
    const double window =
        cfg.max_prefix +
        cfg.max_period * (static_cast<double>(s.vars.size()) * dk + 2.0);
    const double cells = window * dk * static_cast<double>(s.vars.size()) *
                         static_cast<double>(s.vars.size()) * window * dk;
    if (cells > 2.5e8) continue;
    return s;
  }
  throw Error("failed to generate a well-formed normal system");
}

EquationSystem gen_system_raw(Rng& rng, const Config& cfg) {
  EquationSystem s;
  const int atom_count = pick(rng, 0, cfg.max_atoms);
  s.atoms = atom_names(atom_count);
  s.register_count = gen_reg_count(rng, cfg);
  const int var_count = pick(rng, 1, cfg.max_states);
  std::vector<std::string> names;
  for (int n = 1; n <= var_count; ++n)
    names.push_back("V" + std::to_string(n));
  s.vars = names;

  auto any_var = [&]() -> Formula {
    return Formula::var(
        names[static_cast<std::size_t>(pick(rng, 0, var_count - 1))]);
  };
  // A bare basic tt is textually indistinguishable from the tt formula, so
  // the generator never emits it.
  auto basic_or_tt = [](Basic g) -> Formula {
    if (g.kind() == Basic::Kind::True) return Formula::tt();
    return Formula::basic(std::move(g));
  };
  std::function<Formula(int)> gen_formula = [&](int depth) -> Formula {
    const int roll = pick(rng, 0, depth <= 0 ? 2 : 6);
    switch (roll) {
      case 0: return any_var();
      case 1: return Formula::tt();
      case 2:
        return basic_or_tt(gen_guard(rng, atom_count, s.register_count));
      case 3: return Formula::next(gen_formula(depth - 1));
      case 4: {
        const RegSet regs = gen_reg_set(rng, s.register_count);
        Formula body = gen_formula(depth - 1);
        if (regs == 0) return Formula::next(std::move(body));
        return Formula::freeze_next(regs, std::move(body), Basic::tt());
      }
      case 5:
        return Formula::disj({gen_formula(depth - 1), gen_formula(depth - 1)});
      default: {
        // Grammar-valid conjunction: a next/freeze side and a basic side.
        // The parser folds a basic conjunct into a freeze-next guard, so for
        // a nonempty freeze set the folded node is the canonical form.
        const RegSet regs = gen_reg_set(rng, s.register_count);
        Formula body = gen_formula(depth - 1);
        Basic guard = gen_guard(rng, atom_count, s.register_count);
        if (regs != 0)
          return Formula::freeze_next(regs, std::move(body), std::move(guard));
        Formula side = Formula::next(std::move(body));
        Formula basic = basic_or_tt(std::move(guard));
        return chance(rng, 0.5) ? Formula::conj(side, basic)
                                : Formula::conj(basic, side);
      }
    }
  };
  for (const auto& v : names) s.sigma.emplace(v, gen_formula(pick(rng, 1, 3)));
  for (const auto& v : names)
    if (chance(rng, 0.3)) s.omega_vars.push_back(v);
  s.main_var = names[static_cast<std::size_t>(pick(rng, 0, var_count - 1))];
  s.validate();
  return s;
}

// ---------------------------------------------------------------------------
// Shrinking.

LassoWord shrink_lasso(const LassoWord& w,
                       const std::function<bool(const LassoWord&)>& still_failing) {
  LassoWord best = w;
  bool improved = true;
  int budget = 400;
  while (improved && budget-- > 0) {
    improved = false;
    for (std::size_t n = 0; n < best.prefix.size(); ++n) {
      LassoWord cand = best;
      cand.prefix.erase(cand.prefix.begin() + static_cast<long>(n));
      if (still_failing(cand)) { best = std::move(cand); improved = true; break; }
    }
    if (improved) continue;
    if (best.period.size() > 1) {
      for (std::size_t n = 0; n < best.period.size(); ++n) {
        LassoWord cand = best;
        cand.period.erase(cand.period.begin() + static_cast<long>(n));
        if (still_failing(cand)) { best = std::move(cand); improved = true; break; }
      }
    }
    if (improved) continue;
    for (auto letters : {&LassoWord::prefix, &LassoWord::period}) {
      for (std::size_t n = 0; n < (best.*letters).size(); ++n) {
        Letter& original = (best.*letters)[n];
        if (original.atoms != 0) {
          LassoWord cand = best;
          (cand.*letters)[n].atoms = 0;
          if (still_failing(cand)) { best = std::move(cand); improved = true; break; }
        }
        if (!(original.datum == DataValue::integer(0))) {
          LassoWord cand = best;
          (cand.*letters)[n].datum = DataValue::integer(0);
          if (still_failing(cand)) { best = std::move(cand); improved = true; break; }
        }
      }
      if (improved) break;
    }
  }
  return best;
}

BuchiRa shrink_bra(const BuchiRa& a,
                   const std::function<bool(const BuchiRa&)>& still_failing) {
  BuchiRa best = a;
  bool improved = true;
  int budget = 400;
  while (improved && budget-- > 0) {
    improved = false;
    for (std::size_t n = 0; n < best.rules.size(); ++n) {
      BuchiRa cand = best;
      cand.rules.erase(cand.rules.begin() + static_cast<long>(n));
      if (still_failing(cand)) { best = std::move(cand); improved = true; break; }
    }
    if (improved) continue;
    for (std::size_t n = 0; n < best.states.size(); ++n) {
      const std::string q = best.states[n];
      if (q == best.initial) continue;
      BuchiRa cand = best;
      cand.states.erase(cand.states.begin() + static_cast<long>(n));
      cand.rules.erase(std::remove_if(cand.rules.begin(), cand.rules.end(),
                                      [&](const TransitionRule& r) {
                                        return r.source == q || r.target == q;
                                      }),
                       cand.rules.end());
      cand.accepting.erase(
          std::remove(cand.accepting.begin(), cand.accepting.end(), q),
          cand.accepting.end());
      if (still_failing(cand)) { best = std::move(cand); improved = true; break; }
    }
    if (improved) continue;
    for (std::size_t n = 0; n < best.rules.size(); ++n) {
      if (best.rules[n].is_epsilon()) continue;
      if (!(*best.rules[n].guard == Basic::tt())) {
        BuchiRa cand = best;
        cand.rules[n].guard = Basic::tt();
        if (still_failing(cand)) { best = std::move(cand); improved = true; break; }
      }
      if (best.rules[n].update != 0) {
        BuchiRa cand = best;
        cand.rules[n].update = 0;
        if (still_failing(cand)) { best = std::move(cand); improved = true; break; }
      }
    }
  }
  return best;
}

EquationSystem shrink_system(
    const EquationSystem& s,
    const std::function<bool(const EquationSystem&)>& still_failing) {
  auto referenced = [](const EquationSystem& sys, const std::string& name) {
    std::function<bool(const Formula&)> occurs = [&](const Formula& f) {
      switch (f.kind()) {
        case Formula::Kind::Var: return f.var_name() == name;
        case Formula::Kind::Or: {
          for (const auto& c : f.children())
            if (occurs(c)) return true;
          return false;
        }
        case Formula::Kind::FreezeNext:
        case Formula::Kind::Next: return occurs(f.body());
        case Formula::Kind::And: return occurs(f.lhs()) || occurs(f.rhs());
        default: return false;
      }
    };
    for (const auto& v : sys.vars)
      if (occurs(sys.rhs(v))) return true;
    return false;
  };

  EquationSystem best = s;
  bool improved = true;
  int budget = 400;
  while (improved && budget-- > 0) {
    improved = false;
    for (std::size_t n = 0; n < best.vars.size(); ++n) {
      const std::string v = best.vars[n];
      if (v == best.main_var || referenced(best, v)) continue;
      EquationSystem cand = best;
      cand.vars.erase(cand.vars.begin() + static_cast<long>(n));
      cand.omega_vars.erase(
          std::remove(cand.omega_vars.begin(), cand.omega_vars.end(), v),
          cand.omega_vars.end());
      cand.sigma.erase(v);
      if (cand.vars.empty()) continue;
      if (still_failing(cand)) { best = std::move(cand); improved = true; break; }
    }
  }
  return best;
}

}  // namespace gen
}  // namespace mubra
