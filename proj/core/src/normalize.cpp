#include "mubra/normalize.hpp"

#include <algorithm>
#include <unordered_set>

namespace mubra {

namespace {

// phi /\ extra, collapsing a tt left conjunct so that `X psi & phi` keeps
// exactly phi as its guard.
Basic guard_push(const Basic& phi, const Basic& extra) {
  if (phi.kind() == Basic::Kind::True) return extra;
  return Basic::conj(phi, extra);
}

}  // namespace

Formula desugar_formula(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::TT:
    case Formula::Kind::Var:
      return f;
    case Formula::Kind::BasicF:
      // phi is equivalent to X tt & phi.
      return Formula::freeze_next(0, Formula::tt(), f.basic_formula());
    case Formula::Kind::Next:
      // X psi is equivalent to down {} X psi & tt.
      return Formula::freeze_next(0, desugar_formula(f.body()), Basic::tt());
    case Formula::Kind::FreezeNext:
      return Formula::freeze_next(f.update_set(), desugar_formula(f.body()),
                                  f.guard());
    case Formula::Kind::Or: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const auto& c : f.children()) kids.push_back(desugar_formula(c));
      return Formula::disj(std::move(kids));
    }
    case Formula::Kind::And: {
      const auto bl = try_basic(f.lhs());
      const auto br = try_basic(f.rhs());
      if (bl && br)
        return Formula::freeze_next(0, Formula::tt(), Basic::conj(*bl, *br));
      if (!bl && !br)
        throw Error(
            "conjunction with two non-basic conjuncts; at least one side must "
            "be a basic formula");
      const Formula& side = bl ? f.rhs() : f.lhs();
      const Basic& basic = bl ? *bl : *br;
      Formula d = desugar_formula(side);
      if (d.kind() != Formula::Kind::FreezeNext)
        throw Error(
            "conjunction must pair a basic formula with a freeze/next "
            "formula");
      return Formula::freeze_next(d.update_set(), d.body(),
                                  guard_push(d.guard(), basic));
    }
  }
  throw Error("unreachable formula kind");
}

EquationSystem desugar(const EquationSystem& s) {
  EquationSystem out = s;
  for (const auto& v : s.vars) {
    try {
      out.sigma.at(v) = desugar_formula(s.rhs(v));
    } catch (const Error& e) {
      throw Error("in equation for '" + v + "': " + e.what());
    }
  }
  return out;
}

namespace {

std::string fresh_name(const EquationSystem& s, const std::string& base) {
  auto taken = [&](const std::string& n) { return s.has_var(n); };
  if (!taken(base)) return base;
  for (int i = 1;; ++i) {
    std::string candidate = base + std::to_string(i);
    if (!taken(candidate)) return candidate;
  }
}

}  // namespace

EquationSystem ensure_wellformed(const EquationSystem& s) {
  if (!s.is_desugared()) throw Error("ensure_wellformed expects a desugared system");
  EquationSystem out = s;

  if (!out.find_vtt()) {
    const std::string name = fresh_name(out, "Vtt");
    out.vars.push_back(name);
    out.omega_vars.push_back(name);
    out.sigma.emplace(name, Formula::tt());
  }

  // Repair sigma(V) = sigma(V') collisions against omega-variables by
  // disjoining a never-true formula to the non-omega duplicate.
  const std::size_t max_rounds = out.vars.size() * out.vars.size() + 2;
  for (std::size_t round = 0;; ++round) {
    if (round > max_rounds)
      throw Error("well-formedness repair did not converge");
    bool changed = false;
    for (const auto& w : out.omega_vars) {
      for (const auto& v : out.vars) {
        if (v == w || !(out.rhs(w) == out.rhs(v))) continue;
        if (out.is_omega(v))
          throw UnrepairableError("omega-variables '" + w + "' and '" + v +
                                  "' have identical right-hand sides; "
                                  "unrepairable");
        const Formula junk =
            Formula::freeze_next(0, Formula::tt(), Basic::ff());
        out.sigma.at(v) = Formula::disj({out.rhs(v), junk});
        changed = true;
        break;
      }
      if (changed) break;
    }
    if (!changed) break;
  }
  return out;
}

namespace {

class Normalizer {
 public:
  explicit Normalizer(const EquationSystem& s) : out_(s) {
    original_.insert(s.vars.begin(), s.vars.end());
  }

  EquationSystem run() {
    const std::vector<std::string> original = out_.vars;
    for (const auto& v : original) normalize_equation(v);
    // Rebuild the variable order: original variables each followed by the
    // fresh variables they spawned.
    std::vector<std::string> order;
    for (const auto& v : original) {
      order.push_back(v);
      append_spawned(v, order);
    }
    out_.vars = std::move(order);
    deduplicate();
    check_injectivity();
    return std::move(out_);
  }

 private:
  void append_spawned(const std::string& parent, std::vector<std::string>& order) {
    auto it = spawned_.find(parent);
    if (it == spawned_.end()) return;
    for (const auto& child : it->second) {
      if (!out_.has_var(child)) continue;
      order.push_back(child);
      append_spawned(child, order);
    }
  }

  void normalize_equation(const std::string& name) {
    const Formula f = out_.rhs(name);
    switch (f.kind()) {
      case Formula::Kind::TT:
        return;
      case Formula::Kind::Var: {
        // V = V' is not one of the normal shapes; V' | V' is equivalent.
        // When that duplicate would collide with an omega right-hand side,
        // disjoin a never-true formula instead.
        Formula candidate = Formula::disj({f, f});
        if (collides_with_omega(name, candidate))
          candidate = Formula::disj(
              {f, hoist(name, Formula::freeze_next(0, Formula::tt(),
                                                   Basic::ff()))});
        out_.sigma.at(name) = std::move(candidate);
        return;
      }
      case Formula::Kind::Or: {
        std::vector<Formula> kids;
        for (const auto& c : f.children()) kids.push_back(hoist(name, c));
        if (kids.size() > 2) kids = binarize(name, std::move(kids));
        out_.sigma.at(name) = Formula::disj(std::move(kids));
        return;
      }
      case Formula::Kind::FreezeNext: {
        const Formula& body = f.body();
        if (body.kind() == Formula::Kind::Var ||
            body.kind() == Formula::Kind::TT)
          return;
        Formula hoisted = hoist(name, body);
        out_.sigma.at(name) =
            Formula::freeze_next(f.update_set(), hoisted, f.guard());
        return;
      }
      default:
        throw Error("normal_form expects a desugared system");
    }
  }

  bool collides_with_omega(const std::string& name, const Formula& f) const {
    for (const auto& v : out_.vars) {
      if (v == name || !(out_.rhs(v) == f)) continue;
      if (out_.is_omega(v) || out_.is_omega(name)) return true;
    }
    return false;
  }

  // Replace a non-variable subformula with a variable: an existing variable
  // with the same right-hand side when there is one, a fresh non-omega
  // variable otherwise.
  Formula hoist(const std::string& parent, const Formula& f) {
    if (f.kind() == Formula::Kind::Var) return f;
    for (const auto& v : out_.vars)
      if (out_.rhs(v) == f) return Formula::var(v);
    for (const auto& v : fresh_order_)
      if (out_.has_var(v) && out_.rhs(v) == f) return Formula::var(v);
    const std::string name = make_fresh(parent);
    out_.sigma.emplace(name, f);
    normalize_equation(name);
    return Formula::var(name);
  }

  // c1 | ... | cn with n > 2 and all ci variables becomes a right-leaning
  // chain of binary disjunctions through fresh variables.
  std::vector<Formula> binarize(const std::string& parent,
                                std::vector<Formula> kids) {
    const std::size_t n = kids.size();
    Formula tail = Formula::disj({kids[n - 2], kids[n - 1]});
    for (std::size_t idx = n - 2; idx-- > 1;) {
      const std::string name = make_fresh(parent);
      out_.sigma.emplace(name, std::move(tail));
      tail = Formula::disj({kids[idx], Formula::var(name)});
    }
    const std::string name = make_fresh(parent);
    out_.sigma.emplace(name, std::move(tail));
    return {kids[0], Formula::var(name)};
  }

  // Primes derived from the parent name, with a numeric suffix on collision.
  std::string make_fresh(const std::string& parent) {
    auto taken = [&](const std::string& n) { return out_.has_var(n); };
    std::string candidate = parent + "'";
    if (taken(candidate)) {
      candidate = parent + "''";
      for (int i = 2; taken(candidate); ++i)
        candidate = parent + "'" + std::to_string(i);
    }
    spawned_[parent].push_back(candidate);
    fresh_order_.push_back(candidate);
    return candidate;
  }

  // Merge fresh variables that ended up with the right-hand side of an
  // earlier variable: references are redirected and the duplicate dropped.
  void deduplicate() {
    bool changed = true;
    std::size_t budget = out_.vars.size() * out_.vars.size() + 2;
    while (changed && budget-- > 0) {
      changed = false;
      for (std::size_t a = 0; a < out_.vars.size() && !changed; ++a) {
        for (std::size_t b = a + 1; b < out_.vars.size(); ++b) {
          const std::string& keep = out_.vars[a];
          const std::string dup = out_.vars[b];
          if (original_.count(dup) || !(out_.rhs(keep) == out_.rhs(dup)))
            continue;
          for (const auto& v : out_.vars)
            out_.sigma.at(v) = substitute(out_.rhs(v), dup, keep);
          out_.sigma.erase(dup);
          out_.vars.erase(out_.vars.begin() + static_cast<long>(b));
          changed = true;
          break;
        }
      }
    }
  }

  static Formula substitute(const Formula& f, const std::string& from,
                            const std::string& to) {
    switch (f.kind()) {
      case Formula::Kind::Var:
        return f.var_name() == from ? Formula::var(to) : f;
      case Formula::Kind::Or: {
        std::vector<Formula> kids;
        for (const auto& c : f.children())
          kids.push_back(substitute(c, from, to));
        return Formula::disj(std::move(kids));
      }
      case Formula::Kind::FreezeNext:
        return Formula::freeze_next(f.update_set(),
                                    substitute(f.body(), from, to), f.guard());
      default:
        return f;
    }
  }

  void check_injectivity() const {
    for (const auto& w : out_.omega_vars)
      for (const auto& v : out_.vars)
        if (w != v && out_.rhs(w) == out_.rhs(v))
          throw UnrepairableError(
              "normalization made the right-hand sides of '" + w + "' and '" +
              v + "' collide; the omega set cannot be kept injective");
  }

  EquationSystem out_;
  std::unordered_set<std::string> original_;
  std::unordered_map<std::string, std::vector<std::string>> spawned_;
  std::vector<std::string> fresh_order_;
};

}  // namespace

EquationSystem normal_form(const EquationSystem& s) {
  if (!s.is_desugared()) throw Error("normal_form expects a desugared system");
  if (!s.is_wellformed())
    throw Error("normal_form expects a well-formed system");
  return Normalizer(s).run();
}

}  // namespace mubra
