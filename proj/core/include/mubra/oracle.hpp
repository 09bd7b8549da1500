#pragma once

#include <set>
#include <unordered_map>

#include "mubra/system.hpp"

namespace mubra {
namespace oracle {

/// 5-tuple (i, theta; j, theta', x): V holds at (i, theta) assuming the
/// omega-variable x holds at (j, theta').
struct Tuple {
  Position i = 1;
  Assignment theta;
  Position j = 1;
  Assignment theta_j;
  std::string x;

  friend auto operator<=>(const Tuple&, const Tuple&) = default;
};

std::string to_string(const Tuple& t);

/// Environment restricted to a position window [1, N] and a finite data
/// domain: one tuple set per variable.
class Environment {
 public:
  Environment(std::vector<std::string> vars, Position window,
              std::vector<DataValue> domain);

  Position window() const { return window_; }
  const std::vector<DataValue>& domain() const { return domain_; }
  const std::vector<std::string>& vars() const { return vars_; }

  const std::set<Tuple>& tuples(const std::string& var) const;
  bool contains(const std::string& var, const Tuple& t) const;
  void insert(const std::string& var, Tuple t);

  std::size_t total_tuples() const;
  bool subset_of(const Environment& other) const;
  bool operator==(const Environment& other) const;

 private:
  std::vector<std::string> vars_;
  Position window_;
  std::vector<DataValue> domain_;
  std::unordered_map<std::string, std::set<Tuple>> sets_;
};

struct Params {
  /// Window N; 0 means default_window(s, w).
  Position window = 0;
  /// Tuple data domain; empty means word domain plus one fresh value.
  std::vector<DataValue> domain;
  /// Cap on the enumerated tuple universe per apply_F round.
  std::size_t max_universe = 80'000'000;
};

/// The smallest integer data value not occurring in w.
DataValue fresh_value(const LassoWord& w);

/// Word domain plus one fresh representative value: sufficient because the
/// semantics only ever compares register contents with word data.
std::vector<DataValue> oracle_domain(const LassoWord& w);

/// Default window: prefix + period * (|Var| * |D_w|^k + 2). Tuples correspond
/// to automaton paths, and by pigeonhole over (state, assignment, folded
/// position) any realizable folded endpoint is realizable this early.
Position default_window(const EquationSystem& s, const LassoWord& w);

/// The augmented satisfaction relation w,i,theta,j,theta',x |=_u psi.
/// psi must be desugared; the system provides V_tt for the tt clause.
bool eval_augmented(const EquationSystem& s, const LassoWord& w,
                    const Environment& u, Position i, const Assignment& theta,
                    Position j, const Assignment& theta_j,
                    const std::string& x, const Formula& psi);

/// One application of the variable updating mapping over the window:
/// F(u)(V) = all window tuples satisfying sigma(V), plus the seed tuples
/// (i, theta; i, theta, V) when V is an omega-variable.
Environment apply_F(const EquationSystem& s, const LassoWord& w,
                    const Environment& u);

/// Least fixed point of apply_F over the window, from the empty environment.
/// rounds_out, when given, receives the number of applications performed
/// until stabilization.
Environment lfp_window(const EquationSystem& s, const LassoWord& w,
                       const Params& params = {}, int* rounds_out = nullptr);

/// Membership of one tuple in the windowed least fixed point, computed per
/// target without materializing the environment. Agrees with lfp_window on
/// every tuple whose assignments lie in the queried domain.
bool lfp_contains(const EquationSystem& s, const LassoWord& w, Position window,
                  const std::string& var, const Tuple& t);

enum class Verdict { Satisfied, NotSatisfied, Inconclusive };

struct SatResult {
  Verdict verdict = Verdict::NotSatisfied;
  Position window_used = 0;
  Position suggested_window = 0;  // set when inconclusive
};

/// Does an infinite chain of dependence through omega-variables start at
/// (i, theta, V)? Decided on the folded chain graph with edges drawn from
/// the windowed least fixed point. Never silently wrong: when no cycle is
/// found but tuples touch the window edge, the result is inconclusive.
SatResult satisfies_variable(const EquationSystem& s, const LassoWord& w,
                             Position i, const Assignment& theta,
                             const std::string& var, Position window = 0);

/// w satisfies s: satisfies_variable at (1, bottom^k, main).
SatResult satisfies(const EquationSystem& s, const LassoWord& w,
                    Position window = 0);

}  // namespace oracle
}  // namespace mubra
