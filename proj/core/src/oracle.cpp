#include "mubra/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <sstream>
#include <tuple>
#include <unordered_set>

namespace mubra {
namespace oracle {

std::string to_string(const Tuple& t) {
  std::ostringstream os;
  os << '(' << t.i << ',' << mubra::to_string(t.theta) << ';' << t.j << ','
     << mubra::to_string(t.theta_j) << ',' << t.x << ')';
  return os.str();
}

Environment::Environment(std::vector<std::string> vars, Position window,
                         std::vector<DataValue> domain)
    : vars_(std::move(vars)), window_(window), domain_(std::move(domain)) {
  if (window_ < 1) throw Error("environment window must be at least 1");
  for (const auto& v : vars_) sets_.emplace(v, std::set<Tuple>{});
}

const std::set<Tuple>& Environment::tuples(const std::string& var) const {
  auto it = sets_.find(var);
  if (it == sets_.end()) throw Error("unknown variable '" + var + "'");
  return it->second;
}

bool Environment::contains(const std::string& var, const Tuple& t) const {
  return tuples(var).count(t) != 0;
}

void Environment::insert(const std::string& var, Tuple t) {
  auto it = sets_.find(var);
  if (it == sets_.end()) throw Error("unknown variable '" + var + "'");
  if (t.i < 1 || t.i > t.j || t.j > window_)
    throw Error("tuple positions outside the window");
  it->second.insert(std::move(t));
}

std::size_t Environment::total_tuples() const {
  std::size_t n = 0;
  for (const auto& [v, set] : sets_) n += set.size();
  return n;
}

bool Environment::subset_of(const Environment& other) const {
  for (const auto& v : vars_) {
    const auto& mine = tuples(v);
    const auto& theirs = other.tuples(v);
    if (!std::includes(theirs.begin(), theirs.end(), mine.begin(), mine.end()))
      return false;
  }
  return true;
}

bool Environment::operator==(const Environment& other) const {
  if (vars_ != other.vars_ || window_ != other.window_) return false;
  for (const auto& v : vars_)
    if (tuples(v) != other.tuples(v)) return false;
  return true;
}

DataValue fresh_value(const LassoWord& w) {
  std::int64_t candidate = 0;
  const auto domain = word_domain(w);
  for (const auto& d : domain)
    if (!d.is_bottom() && d.integer_value() >= candidate)
      candidate = d.integer_value() + 1;
  return DataValue::integer(candidate);
}

std::vector<DataValue> oracle_domain(const LassoWord& w) {
  std::vector<DataValue> domain = word_domain(w);
  domain.push_back(fresh_value(w));
  std::sort(domain.begin(), domain.end());
  return domain;
}

Position default_window(const EquationSystem& s, const LassoWord& w) {
  const double dk = std::pow(static_cast<double>(word_domain(w).size()),
                             static_cast<double>(s.register_count));
  const double n =
      static_cast<double>(w.prefix_length()) +
      static_cast<double>(w.period_length()) *
          (static_cast<double>(s.vars.size()) * dk + 2.0);
  if (n > 1e9) throw ResourceLimitError("default window is unreasonably large", n);
  return static_cast<Position>(n);
}

namespace {

const std::string& require_vtt(const EquationSystem& s) {
  for (const auto& v : s.omega_vars)
    if (s.rhs(v).kind() == Formula::Kind::TT) return v;
  throw Error("system has no omega-variable with right-hand side tt");
}

std::vector<Assignment> assignments_over(const std::vector<DataValue>& domain,
                                         int k) {
  const double count =
      std::pow(static_cast<double>(domain.size()), static_cast<double>(k));
  if (count > 2e6)
    throw ResourceLimitError("assignment space too large for the oracle", count);
  std::vector<Assignment> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<DataValue> current(static_cast<std::size_t>(k));
  // Odometer enumeration in domain order.
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  while (true) {
    for (int r = 0; r < k; ++r)
      current[static_cast<std::size_t>(r)] = domain[idx[static_cast<std::size_t>(r)]];
    out.push_back(Assignment(current));
    int pos = k - 1;
    while (pos >= 0) {
      if (++idx[static_cast<std::size_t>(pos)] < domain.size()) break;
      idx[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  if (k == 0) out.assign(1, Assignment(std::vector<DataValue>{}));
  return out;
}

}  // namespace

bool eval_augmented(const EquationSystem& s, const LassoWord& w,
                    const Environment& u, Position i, const Assignment& theta,
                    Position j, const Assignment& theta_j,
                    const std::string& x, const Formula& psi) {
  switch (psi.kind()) {
    case Formula::Kind::Var:
      return u.contains(psi.var_name(), Tuple{i, theta, j, theta_j, x});
    case Formula::Kind::Or: {
      for (const auto& c : psi.children())
        if (eval_augmented(s, w, u, i, theta, j, theta_j, x, c)) return true;
      return false;
    }
    case Formula::Kind::FreezeNext:
      return i < j && eval_basic(w, i, theta, psi.guard()) &&
             eval_augmented(
                 s, w, u, i + 1,
                 theta.updated(psi.update_set(), letter_at(w, i).datum), j,
                 theta_j, x, psi.body());
    case Formula::Kind::TT:
      return theta == theta_j && x == require_vtt(s);
    default:
      throw Error("eval_augmented expects a desugared formula");
  }
}

Environment apply_F(const EquationSystem& s, const LassoWord& w,
                    const Environment& u) {
  require_vtt(s);
  const Position n = u.window();
  const auto assignments = assignments_over(u.domain(), s.register_count);

  const double universe = static_cast<double>(s.vars.size()) *
                          static_cast<double>(s.omega_vars.size()) *
                          static_cast<double>(n) * static_cast<double>(n + 1) /
                          2.0 * static_cast<double>(assignments.size()) *
                          static_cast<double>(assignments.size());
  if (universe > 5e8)
    throw ResourceLimitError("oracle tuple universe too large", universe);

  Environment out(u.vars(), n, u.domain());
  for (const auto& v : s.vars) {
    const Formula& f = s.rhs(v);
    for (const auto& x : s.omega_vars) {
      for (Position j = 1; j <= n; ++j) {
        for (const auto& theta_j : assignments) {
          for (Position i = 1; i <= j; ++i) {
            for (const auto& theta : assignments) {
              if (eval_augmented(s, w, u, i, theta, j, theta_j, x, f))
                out.insert(v, Tuple{i, theta, j, theta_j, x});
            }
          }
        }
      }
    }
    if (s.is_omega(v)) {
      for (Position i = 1; i <= n; ++i)
        for (const auto& theta : assignments)
          out.insert(v, Tuple{i, theta, i, theta, v});
    }
  }
  return out;
}

Environment lfp_window(const EquationSystem& s, const LassoWord& w,
                       const Params& params, int* rounds_out) {
  s.validate();
  w.validate();
  if (!s.is_desugared()) throw Error("the oracle expects a desugared system");
  require_vtt(s);
  const Position n = params.window > 0 ? params.window : default_window(s, w);
  const std::vector<DataValue> domain =
      params.domain.empty() ? oracle_domain(w) : params.domain;

  const double assigns = std::pow(static_cast<double>(domain.size()),
                                  static_cast<double>(s.register_count));
  const double universe = static_cast<double>(s.vars.size()) *
                          static_cast<double>(s.omega_vars.size()) *
                          static_cast<double>(n) * static_cast<double>(n + 1) /
                          2.0 * assigns * assigns;
  if (universe > static_cast<double>(params.max_universe))
    throw ResourceLimitError("oracle tuple universe exceeds max_universe",
                             universe);

  Environment u(s.vars, n, domain);
  int rounds = 0;
  while (true) {
    Environment next = apply_F(s, w, u);
    ++rounds;
    if (next == u) break;
    u = std::move(next);
    if (static_cast<std::size_t>(rounds) >
        static_cast<std::size_t>(n) * u.total_tuples() + 16)
      throw Error("fixed point iteration failed to stabilize");
  }
  if (rounds_out) *rounds_out = rounds;
  return u;
}

// ---------------------------------------------------------------------------
// Chain satisfaction via per-target tables.
//
// Membership of (i, theta; j, theta', x) in the least fixed point only
// depends on tuples with the same (j, theta', x), so the fixed point
// factorizes per target. For one target the truth table over (V, i, theta)
// is computed bottom-up from i = j, iterating at each position until the
// same-position variable dependencies stabilize.

namespace {

struct ChainContext {
  const EquationSystem* s;
  const LassoWord* w;
  Position window;
  std::vector<DataValue> domain;
  std::vector<Assignment> assignments;
  std::map<DataValue, int> value_index;
  std::unordered_map<std::string, int> var_index;
  std::vector<const Formula*> rhs;  // by var index
  std::vector<int> omega_indices;   // var indices of omega-variables
  int vtt_index = -1;
  Position max_freeze_depth = 1;  // deepest freeze nesting in any rhs

  int assignment_code(const Assignment& theta) const {
    int code = 0;
    for (const auto& d : theta.values()) {
      auto it = value_index.find(d);
      if (it == value_index.end()) return -1;
      code = code * static_cast<int>(domain.size()) + it->second;
    }
    return code;
  }
};

Position freeze_depth(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Or: {
      Position depth = 0;
      for (const auto& c : f.children())
        depth = std::max(depth, freeze_depth(c));
      return depth;
    }
    case Formula::Kind::FreezeNext:
      return 1 + freeze_depth(f.body());
    default:
      return 0;
  }
}

// Truth table for one target (j, theta', x): cell (V, i, theta). Rows are
// filled from i = j downward; evaluating row i reads rows i..i+D where D is
// the deepest freeze nesting, so only that ring of rows stays in memory
// besides the retained low rows the caller will query.
class TargetTable {
 public:
  TargetTable(const ChainContext& cx, Position j, int theta_j_code, int x_var,
              Position keep_rows)
      : cx_(cx),
        j_(j),
        theta_j_code_(theta_j_code),
        x_is_vtt_(x_var == cx.vtt_index),
        keep_rows_(std::min(keep_rows, j)) {
    const std::size_t row = cx.rhs.size() * cx.assignments.size();
    kept_.assign(static_cast<std::size_t>(keep_rows_) * row, 0);
    ring_.assign(static_cast<std::size_t>(cx.max_freeze_depth) + 1,
                 std::vector<char>(row, 0));
    for (Position i = j; i >= 1; --i) {
      // Shift the ring: row i+k moves to slot k+1, slot 0 becomes row i.
      std::rotate(ring_.begin(), ring_.end() - 1, ring_.end());
      std::fill(ring_[0].begin(), ring_[0].end(), 0);
      if (i == j) ring_[0][cell(x_var, theta_j_code)] = 1;
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::size_t v = 0; v < cx.rhs.size(); ++v) {
          for (std::size_t a = 0; a < cx.assignments.size(); ++a) {
            const std::size_t c = cell(static_cast<int>(v), static_cast<int>(a));
            if (ring_[0][c]) continue;
            if (eval(*cx.rhs[v], i, 0, static_cast<int>(a))) {
              ring_[0][c] = 1;
              changed = true;
            }
          }
        }
      }
      if (i <= keep_rows_)
        std::copy(ring_[0].begin(), ring_[0].end(),
                  kept_.begin() + static_cast<long>(
                                      static_cast<std::size_t>(i - 1) * row));
    }
  }

  bool holds(int var, Position i, int theta_code) const {
    if (i < 1 || i > keep_rows_)
      throw Error("chain table row was not retained");
    const std::size_t row = cx_.rhs.size() * cx_.assignments.size();
    return kept_[static_cast<std::size_t>(i - 1) * row +
                 cell(var, theta_code)] != 0;
  }

 private:
  std::size_t cell(int var, int theta_code) const {
    return static_cast<std::size_t>(var) * cx_.assignments.size() +
           static_cast<std::size_t>(theta_code);
  }

  // Row i+offset: slot 0 is the row under construction, higher slots are
  // final. Freeze steps never look past row j, so unfilled slots are never
  // read.
  bool eval(const Formula& psi, Position i, Position offset,
            int theta_code) const {
    switch (psi.kind()) {
      case Formula::Kind::Var:
        return ring_[static_cast<std::size_t>(offset)]
                    [cell(cx_.var_index.at(psi.var_name()), theta_code)] != 0;
      case Formula::Kind::Or: {
        for (const auto& c : psi.children())
          if (eval(c, i, offset, theta_code)) return true;
        return false;
      }
      case Formula::Kind::FreezeNext: {
        if (i + offset >= j_) return false;
        const Assignment& theta =
            cx_.assignments[static_cast<std::size_t>(theta_code)];
        const Letter& letter = letter_at(*cx_.w, i + offset);
        if (!eval_basic(letter, theta, psi.guard())) return false;
        const int next_code =
            cx_.assignment_code(theta.updated(psi.update_set(), letter.datum));
        return eval(psi.body(), i, offset + 1, next_code);
      }
      case Formula::Kind::TT:
        return theta_code == theta_j_code_ && x_is_vtt_;
      default:
        throw Error("the oracle expects a desugared formula");
    }
  }

  const ChainContext& cx_;
  Position j_;
  int theta_j_code_;
  bool x_is_vtt_;
  Position keep_rows_;
  std::vector<char> kept_;
  std::vector<std::vector<char>> ring_;
};

ChainContext make_chain_context(const EquationSystem& s, const LassoWord& w,
                                Position window, const Assignment& start) {
  ChainContext cx;
  cx.s = &s;
  cx.w = &w;
  cx.window = window;
  cx.domain = word_domain(w);
  for (const auto& d : start.values()) cx.domain.push_back(d);
  std::sort(cx.domain.begin(), cx.domain.end());
  cx.domain.erase(std::unique(cx.domain.begin(), cx.domain.end()),
                  cx.domain.end());
  cx.assignments = assignments_over(cx.domain, s.register_count);
  for (std::size_t n = 0; n < cx.domain.size(); ++n)
    cx.value_index.emplace(cx.domain[n], static_cast<int>(n));
  for (std::size_t n = 0; n < s.vars.size(); ++n) {
    cx.var_index.emplace(s.vars[n], static_cast<int>(n));
    cx.rhs.push_back(&s.rhs(s.vars[n]));
  }
  for (const auto& v : s.omega_vars)
    cx.omega_indices.push_back(cx.var_index.at(v));
  cx.vtt_index = cx.var_index.at(require_vtt(s));
  for (const auto* f : cx.rhs)
    cx.max_freeze_depth = std::max(cx.max_freeze_depth, freeze_depth(*f));
  return cx;
}

// Retained-cell estimate across all lazily built tables; callers cap it.
double chain_table_budget(const ChainContext& cx, Position keep_rows) {
  const double targets = static_cast<double>(cx.window) *
                         static_cast<double>(cx.assignments.size()) *
                         static_cast<double>(cx.omega_indices.size());
  const double cells = static_cast<double>(cx.rhs.size()) *
                       static_cast<double>(keep_rows) *
                       static_cast<double>(cx.assignments.size());
  return targets * cells;
}

}  // namespace

bool lfp_contains(const EquationSystem& s, const LassoWord& w, Position window,
                  const std::string& var, const Tuple& t) {
  s.validate();
  w.validate();
  if (!s.is_desugared()) throw Error("the oracle expects a desugared system");
  require_vtt(s);
  if (t.i < 1 || t.i > t.j || t.j > window)
    throw Error("tuple positions outside the window");
  Assignment combined(
      [&] {
        std::vector<DataValue> values = t.theta.values();
        for (const auto& d : t.theta_j.values()) values.push_back(d);
        return values;
      }());
  ChainContext cx = make_chain_context(s, w, window, combined);
  const int theta_code = cx.assignment_code(t.theta);
  const int theta_j_code = cx.assignment_code(t.theta_j);
  auto x_it = cx.var_index.find(t.x);
  if (x_it == cx.var_index.end())
    throw Error("unknown variable '" + t.x + "'");
  if (!s.is_omega(t.x))
    throw Error("tuple component '" + t.x + "' is not an omega-variable");
  const TargetTable table(cx, t.j, theta_j_code, x_it->second, t.j);
  return table.holds(cx.var_index.at(var), t.i, theta_code);
}

SatResult satisfies_variable(const EquationSystem& s, const LassoWord& w,
                             Position start_pos, const Assignment& theta,
                             const std::string& var, Position window) {
  s.validate();
  w.validate();
  if (!s.is_desugared()) throw Error("the oracle expects a desugared system");
  require_vtt(s);
  if (!s.has_var(var)) throw Error("unknown variable '" + var + "'");
  if (theta.size() != s.register_count)
    throw Error("assignment arity does not match the register count");
  if (start_pos < 1) throw Error("word positions are 1-based");

  const Position n = window > 0 ? window : default_window(s, w);
  SatResult result;
  result.window_used = n;

  ChainContext cx = make_chain_context(s, w, n, theta);
  const Position l = w.prefix_length();
  const Position p = w.period_length();

  // Chain nodes live at folded positions, so tables only retain those rows.
  const Position keep_rows = l + p;
  const double budget = chain_table_budget(cx, keep_rows);
  if (budget > 6e8)
    throw ResourceLimitError(
        "chain tables too large; lower --window or the system size", budget);

  // Windows at or beyond the pigeonhole bound over (variable, assignment,
  // folded position) see every realizable chain edge, so their no-cycle
  // verdicts are conclusive. Below the bound an edge witness may lie outside
  // the window, so only a found cycle is trusted; a no-cycle answer is
  // reported inconclusive rather than risking a wrong negative.
  const double complete_bound =
      static_cast<double>(l) +
      static_cast<double>(p) *
          (static_cast<double>(s.vars.size()) *
               std::pow(static_cast<double>(cx.domain.size()),
                        static_cast<double>(s.register_count)) +
           2.0);
  const bool window_complete = static_cast<double>(n) >= complete_bound;

  // Lazily computed tables, one per target (j, theta', x).
  std::map<std::tuple<Position, int, int>, std::unique_ptr<TargetTable>> tables;
  auto table_for = [&](Position j, int theta_code, int x_var) -> const TargetTable& {
    auto key = std::make_tuple(j, theta_code, x_var);
    auto it = tables.find(key);
    if (it == tables.end())
      it = tables.emplace(key, std::make_unique<TargetTable>(
                                   cx, j, theta_code, x_var, keep_rows))
               .first;
    return *it->second;
  };

  // Chain nodes are (folded position, theta, omega-variable); the start node
  // carries the queried variable instead. Edges follow lfp tuples with a
  // strictly larger concrete position, witnessed from the node's canonical
  // folded position.
  struct Node {
    Position rho;
    int theta_code;
    int var;  // variable whose tuples provide the outgoing edges
  };
  std::map<std::tuple<Position, int, int>, int> node_index;
  std::vector<Node> nodes;
  std::vector<std::vector<int>> succ;

  auto intern = [&](Position rho, int theta_code, int var,
                    std::vector<int>& queue) {
    auto key = std::make_tuple(rho, theta_code, var);
    auto it = node_index.find(key);
    if (it != node_index.end()) return it->second;
    const int id = static_cast<int>(nodes.size());
    node_index.emplace(key, id);
    nodes.push_back(Node{rho, theta_code, var});
    succ.emplace_back();
    queue.push_back(id);
    return id;
  };

  std::vector<int> queue;
  const Position start_rho = fold_position(w, start_pos);
  const int start_theta = cx.assignment_code(theta);
  if (start_theta < 0) throw Error("start assignment outside the chain domain");
  intern(start_rho, start_theta, cx.var_index.at(var), queue);

  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int id = queue[head];
    const Node node = nodes[static_cast<std::size_t>(id)];
    if (node.rho >= n) continue;  // no room for a witness inside the window
    for (int x_var : cx.omega_indices) {
      for (std::size_t a = 0; a < cx.assignments.size(); ++a) {
        for (Position j = node.rho + 1; j <= n; ++j) {
          const TargetTable& table = table_for(j, static_cast<int>(a), x_var);
          if (!table.holds(node.var, node.rho, node.theta_code)) continue;
          const int to =
              intern(fold_position(w, j), static_cast<int>(a), x_var, queue);
          auto& edges = succ[static_cast<std::size_t>(id)];
          if (std::find(edges.begin(), edges.end(), to) == edges.end())
            edges.push_back(to);
        }
      }
    }
  }

  // A cycle reachable from the start node means an infinite chain exists.
  // Iterative DFS with colors.
  enum : char { White = 0, Gray = 1, Black = 2 };
  std::vector<char> color(nodes.size(), White);
  bool cycle = false;
  for (std::size_t root = 0; root < nodes.size() && !cycle; ++root) {
    if (color[root] != White) continue;
    std::vector<std::pair<int, std::size_t>> stack{{static_cast<int>(root), 0}};
    color[root] = Gray;
    while (!stack.empty() && !cycle) {
      auto& [u, edge] = stack.back();
      if (edge < succ[static_cast<std::size_t>(u)].size()) {
        const int v = succ[static_cast<std::size_t>(u)][edge++];
        if (color[static_cast<std::size_t>(v)] == Gray) {
          cycle = true;
        } else if (color[static_cast<std::size_t>(v)] == White) {
          color[static_cast<std::size_t>(v)] = Gray;
          stack.emplace_back(v, 0);
        }
      } else {
        color[static_cast<std::size_t>(u)] = Black;
        stack.pop_back();
      }
    }
  }

  if (cycle) {
    result.verdict = Verdict::Satisfied;
  } else if (!window_complete) {
    result.verdict = Verdict::Inconclusive;
    result.suggested_window = static_cast<Position>(complete_bound);
  } else {
    result.verdict = Verdict::NotSatisfied;
  }
  return result;
}

SatResult satisfies(const EquationSystem& s, const LassoWord& w,
                    Position window) {
  return satisfies_variable(s, w, 1, Assignment::bottoms(s.register_count),
                            s.main_var, window);
}

}  // namespace oracle
}  // namespace mubra
