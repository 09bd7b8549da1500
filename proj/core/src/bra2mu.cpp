#include "mubra/bra2mu.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>
#include <unordered_set>

namespace mubra {

namespace {

struct StateIndex {
  std::unordered_map<std::string, int> index;
  static StateIndex of(const BuchiRa& a) {
    StateIndex si;
    for (std::size_t n = 0; n < a.states.size(); ++n)
      si.index.emplace(a.states[n], static_cast<int>(n));
    return si;
  }
  int at(const std::string& q) const { return index.at(q); }
};

// Epsilon reachability (reflexive), BFS in declaration order.
std::vector<std::vector<int>> epsilon_closures(const BuchiRa& a,
                                               const StateIndex& si) {
  const int n = static_cast<int>(a.states.size());
  std::vector<std::vector<int>> eps_succ(n);
  for (const auto& r : a.rules)
    if (r.is_epsilon()) eps_succ[si.at(r.source)].push_back(si.at(r.target));
  std::vector<std::vector<int>> closure(n);
  for (int q = 0; q < n; ++q) {
    std::vector<bool> seen(n, false);
    std::vector<int> queue{q};
    seen[static_cast<std::size_t>(q)] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      closure[q].push_back(queue[head]);
      for (int t : eps_succ[queue[head]])
        if (!seen[static_cast<std::size_t>(t)]) {
          seen[static_cast<std::size_t>(t)] = true;
          queue.push_back(t);
        }
    }
  }
  return closure;
}

}  // namespace

BuchiRa eliminate_epsilon(const BuchiRa& a) {
  a.validate();
  if (!a.has_epsilon_rules()) return a;

  const StateIndex si = StateIndex::of(a);
  const int n = static_cast<int>(a.states.size());
  const auto closure = epsilon_closures(a, si);
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (int q = 0; q < n; ++q)
    for (int t : closure[q]) reach[q][t] = true;

  std::vector<bool> accepting(n, false);
  for (const auto& f : a.accepting) accepting[si.at(f)] = true;

  // passing[q][src]: some epsilon path q ~> src visits an accepting state
  // other than q itself. Such a visit is invisible to the closure automaton
  // unless the rule's target is routed to a marked copy.
  auto passing = [&](int q, int src) {
    for (int f = 0; f < n; ++f)
      if (f != q && accepting[f] && reach[q][f] && reach[f][src]) return true;
    return false;
  };

  struct ClosureRule {
    int src;
    Basic guard;
    RegSet update;
    int tgt;
    bool pass;
  };
  std::vector<ClosureRule> out_rules;
  bool any_passing = false;
  for (int q = 0; q < n; ++q) {
    for (int src : closure[q]) {
      for (const auto& r : a.rules) {
        if (r.is_epsilon() || si.at(r.source) != src) continue;
        const bool pass = passing(q, src);
        any_passing |= pass;
        out_rules.push_back(
            ClosureRule{q, *r.guard, r.update, si.at(r.target), pass});
      }
    }
  }
  // Keep the marked variant when both arise for the same rule shape.
  for (auto& cr : out_rules)
    for (const auto& other : out_rules)
      if (other.src == cr.src && other.tgt == cr.tgt && other.pass &&
          other.update == cr.update && other.guard == cr.guard)
        cr.pass = true;

  BuchiRa out;
  out.atoms = a.atoms;
  out.register_count = a.register_count;

  if (!any_passing) {
    out.states = a.states;
    out.initial = a.initial;
    out.accepting = a.accepting;
    for (const auto& cr : out_rules) {
      TransitionRule rule{a.states[static_cast<std::size_t>(cr.src)], cr.guard,
                          cr.update, a.states[static_cast<std::size_t>(cr.tgt)]};
      if (std::find(out.rules.begin(), out.rules.end(), rule) ==
          out.rules.end())
        out.rules.push_back(std::move(rule));
    }
    out.validate();
    return out;
  }

  // Duplicate states: runs entering the marked copy of q correspond to
  // epsilon passages that visited an accepting state.
  std::unordered_set<std::string> used(a.states.begin(), a.states.end());
  std::vector<std::string> marked(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) {
    std::string name = a.states[static_cast<std::size_t>(q)] + "@acc";
    while (used.count(name)) name += "@";
    used.insert(name);
    marked[static_cast<std::size_t>(q)] = name;
  }
  for (int q = 0; q < n; ++q) {
    out.states.push_back(a.states[static_cast<std::size_t>(q)]);
    out.states.push_back(marked[static_cast<std::size_t>(q)]);
  }
  out.initial = a.initial;
  for (int q = 0; q < n; ++q) {
    if (accepting[q]) out.accepting.push_back(a.states[static_cast<std::size_t>(q)]);
    out.accepting.push_back(marked[static_cast<std::size_t>(q)]);
  }
  auto add_rule = [&](TransitionRule rule) {
    if (std::find(out.rules.begin(), out.rules.end(), rule) ==
        out.rules.end())
      out.rules.push_back(std::move(rule));
  };
  for (const auto& cr : out_rules) {
    const std::string& plain_src = a.states[static_cast<std::size_t>(cr.src)];
    const std::string& marked_src = marked[static_cast<std::size_t>(cr.src)];
    const std::string& tgt =
        cr.pass ? marked[static_cast<std::size_t>(cr.tgt)]
                : a.states[static_cast<std::size_t>(cr.tgt)];
    add_rule(TransitionRule{plain_src, cr.guard, cr.update, tgt});
    add_rule(TransitionRule{marked_src, cr.guard, cr.update, tgt});
  }
  out.validate();
  return out;
}

BuchiRa totalize(const BuchiRa& a) {
  a.validate();
  if (a.has_epsilon_rules())
    throw Error("totalize expects an epsilon-free automaton");
  BuchiRa out = a;
  std::unordered_set<std::string> with_rule;
  for (const auto& r : a.rules) with_rule.insert(r.source);
  for (const auto& q : a.states)
    if (!with_rule.count(q))
      out.rules.push_back(TransitionRule{q, Basic::ff(), 0, q});
  out.validate();
  return out;
}

namespace {

std::string sanitize(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')
      out += c;
    else
      out += '_';
  }
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0])))
    out = "q" + out;
  return out;
}

}  // namespace

FromBraResult from_bra(const BuchiRa& a) {
  a.validate();
  if (a.has_epsilon_rules())
    throw Error("from_bra expects an epsilon-free automaton");
  if (!a.is_total())
    throw Error(
        "from_bra expects every state to have an outgoing rule (run totalize "
        "first)");

  FromBraResult out;
  EquationSystem& s = out.system;
  s.atoms = a.atoms;
  s.register_count = a.register_count;

  std::unordered_set<std::string> used;
  auto fresh = [&used](std::string base) {
    std::string name = std::move(base);
    while (used.count(name)) name += "_";
    used.insert(name);
    return name;
  };

  for (const auto& q : a.states) out.state_var[q] = fresh("V" + sanitize(q));
  for (std::size_t n = 0; n < a.rules.size(); ++n)
    out.rule_vars.push_back(fresh("Vr" + std::to_string(n + 1)));
  const std::string vtt = fresh("Vtt");

  // sigma(V_q) = disjunction of the rule variables leaving q.
  for (const auto& q : a.states) {
    std::vector<Formula> parts;
    for (std::size_t n = 0; n < a.rules.size(); ++n)
      if (a.rules[n].source == q)
        parts.push_back(Formula::var(out.rule_vars[n]));
    const std::string& vq = out.state_var.at(q);
    s.vars.push_back(vq);
    s.sigma.emplace(vq, parts.size() == 1 ? parts[0]
                                          : Formula::disj(std::move(parts)));
  }
  // sigma(V_r) = down R X V_q' & phi.
  for (std::size_t n = 0; n < a.rules.size(); ++n) {
    const TransitionRule& r = a.rules[n];
    s.vars.push_back(out.rule_vars[n]);
    s.sigma.emplace(out.rule_vars[n],
                    Formula::freeze_next(
                        r.update, Formula::var(out.state_var.at(r.target)),
                        *r.guard));
  }
  s.vars.push_back(vtt);
  s.sigma.emplace(vtt, Formula::tt());

  for (const auto& q : a.states)
    if (a.is_accepting(q)) s.omega_vars.push_back(out.state_var.at(q));
  s.omega_vars.push_back(vtt);
  s.main_var = out.state_var.at(a.initial);

  s.validate();
  return out;
}

}  // namespace mubra
