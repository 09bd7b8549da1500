#include "mubra/engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>
#include <vector>

namespace mubra {
namespace engine {

namespace {

struct Compiled {
  const BuchiRa* a;
  std::unordered_map<std::string, int> state_index;
  struct Rule {
    int src;
    const Basic* guard;  // nullptr = epsilon
    RegSet update;
    int tgt;
  };
  std::vector<Rule> rules;
  std::vector<std::vector<int>> rules_from;
  std::vector<bool> accepting;
  int initial;

  static Compiled of(const BuchiRa& a) {
    a.validate();
    Compiled c;
    c.a = &a;
    for (std::size_t n = 0; n < a.states.size(); ++n)
      c.state_index.emplace(a.states[n], static_cast<int>(n));
    c.rules_from.resize(a.states.size());
    c.accepting.assign(a.states.size(), false);
    for (const auto& f : a.accepting) c.accepting[c.state_index.at(f)] = true;
    for (const auto& r : a.rules) {
      const int idx = static_cast<int>(c.rules.size());
      c.rules.push_back(Rule{c.state_index.at(r.source),
                             r.guard ? &*r.guard : nullptr, r.update,
                             c.state_index.at(r.target)});
      c.rules_from[static_cast<std::size_t>(c.rules.back().src)].push_back(idx);
    }
    c.initial = c.state_index.at(a.initial);
    return c;
  }
};

struct Config {
  int state;
  Assignment theta;
  Position rho;  // folded position in [1, prefix + period]

  friend auto operator<=>(const Config&, const Config&) = default;
};

// Folded configuration graph reachable from the initial ID.
struct FoldedGraph {
  std::vector<Config> nodes;
  std::map<Config, int> index;
  struct Edge {
    int to;
    bool consuming;
    int rule;
  };
  std::vector<std::vector<Edge>> edges;

  int intern(const Config& c, std::vector<int>& queue) {
    auto [it, fresh] = index.emplace(c, static_cast<int>(nodes.size()));
    if (fresh) {
      nodes.push_back(c);
      edges.emplace_back();
      queue.push_back(it->second);
    }
    return it->second;
  }
};

Position folded_successor(const LassoWord& w, Position rho) {
  const Position l = w.prefix_length();
  const Position p = w.period_length();
  return rho < l + p ? rho + 1 : l + 1;
}

FoldedGraph build_folded_graph(const Compiled& c, const LassoWord& w,
                               const Limits& limits) {
  const double bound = configuration_bound(*c.a, w);
  if (bound > static_cast<double>(limits.max_configurations))
    throw ResourceLimitError(
        "configuration graph exceeds the exploration limit of " +
            std::to_string(limits.max_configurations),
        bound);

  FoldedGraph g;
  std::vector<int> queue;
  g.intern(Config{c.initial, Assignment::bottoms(c.a->register_count),
                  fold_position(w, 1)},
           queue);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int id = queue[head];
    const Config node = g.nodes[static_cast<std::size_t>(id)];
    const Letter& letter = letter_at(w, node.rho);
    for (int ridx : c.rules_from[static_cast<std::size_t>(node.state)]) {
      const auto& rule = c.rules[static_cast<std::size_t>(ridx)];
      if (rule.guard == nullptr) {
        const int to = g.intern(Config{rule.tgt, node.theta, node.rho}, queue);
        g.edges[static_cast<std::size_t>(id)].push_back({to, false, ridx});
      } else if (eval_basic(letter, node.theta, *rule.guard)) {
        Config next{rule.tgt, node.theta.updated(rule.update, letter.datum),
                    folded_successor(w, node.rho)};
        const int to = g.intern(next, queue);
        g.edges[static_cast<std::size_t>(id)].push_back({to, true, ridx});
      }
    }
  }
  return g;
}

// Iterative Tarjan SCC over the folded graph.
std::vector<int> scc_of(const FoldedGraph& g) {
  const int n = static_cast<int>(g.nodes.size());
  std::vector<int> comp(n, -1), low(n, 0), disc(n, -1), stack;
  std::vector<bool> on_stack(n, false);
  int time = 0, comp_count = 0;

  struct Frame {
    int node;
    std::size_t edge;
  };
  for (int root = 0; root < n; ++root) {
    if (disc[root] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    while (!frames.empty()) {
      Frame& f = frames.back();
      const int u = f.node;
      if (f.edge == 0) {
        disc[u] = low[u] = time++;
        stack.push_back(u);
        on_stack[u] = true;
      }
      bool descended = false;
      while (f.edge < g.edges[static_cast<std::size_t>(u)].size()) {
        const int v = g.edges[static_cast<std::size_t>(u)][f.edge].to;
        ++f.edge;
        if (disc[v] == -1) {
          frames.push_back({v, 0});
          descended = true;
          break;
        }
        if (on_stack[v]) low[u] = std::min(low[u], disc[v]);
      }
      if (descended) continue;
      if (low[u] == disc[u]) {
        while (true) {
          const int v = stack.back();
          stack.pop_back();
          on_stack[v] = false;
          comp[v] = comp_count;
          if (v == u) break;
        }
        ++comp_count;
      }
      frames.pop_back();
      if (!frames.empty())
        low[frames.back().node] = std::min(low[frames.back().node], low[u]);
    }
  }
  return comp;
}

// An SCC qualifies when it holds an accepting-state node and a consuming
// edge staying inside it; self-loops count. Returns (accepting node, SCC id).
std::optional<std::pair<int, int>> find_accepting_scc(const Compiled& c,
                                                      const FoldedGraph& g,
                                                      const std::vector<int>& comp) {
  const int n = static_cast<int>(g.nodes.size());
  int comp_count = 0;
  for (int u = 0; u < n; ++u) comp_count = std::max(comp_count, comp[u] + 1);
  std::vector<bool> has_accepting(comp_count, false);
  std::vector<bool> has_consuming(comp_count, false);
  for (int u = 0; u < n; ++u) {
    if (c.accepting[static_cast<std::size_t>(
            g.nodes[static_cast<std::size_t>(u)].state)])
      has_accepting[comp[u]] = true;
    for (const auto& edge : g.edges[static_cast<std::size_t>(u)])
      if (edge.consuming && comp[edge.to] == comp[u])
        has_consuming[comp[u]] = true;
  }
  for (int u = 0; u < n; ++u) {
    const int cc = comp[u];
    if (has_accepting[cc] && has_consuming[cc] &&
        c.accepting[static_cast<std::size_t>(
            g.nodes[static_cast<std::size_t>(u)].state)])
      return std::make_pair(u, cc);
  }
  return std::nullopt;
}

}  // namespace

double configuration_bound(const BuchiRa& a, const LassoWord& w) {
  w.validate();
  const auto domain = word_domain(w);
  return static_cast<double>(a.states.size()) *
         std::pow(static_cast<double>(domain.size()),
                  static_cast<double>(a.register_count)) *
         static_cast<double>(w.prefix_length() + w.period_length());
}

std::vector<InstantaneousDescription> step(const BuchiRa& a,
                                           const LassoWord& w,
                                           const InstantaneousDescription& id) {
  w.validate();
  const Compiled c = Compiled::of(a);
  auto it = c.state_index.find(id.state);
  if (it == c.state_index.end())
    throw Error("unknown state '" + id.state + "'");
  if (id.position < 1) throw Error("word positions are 1-based");
  const Letter& letter = letter_at(w, id.position);
  std::vector<InstantaneousDescription> out;
  for (int ridx : c.rules_from[static_cast<std::size_t>(it->second)]) {
    const auto& rule = c.rules[static_cast<std::size_t>(ridx)];
    InstantaneousDescription next;
    if (rule.guard == nullptr) {
      next = {a.states[static_cast<std::size_t>(rule.tgt)], id.assignment,
              id.position};
    } else if (eval_basic(letter, id.assignment, *rule.guard)) {
      next = {a.states[static_cast<std::size_t>(rule.tgt)],
              id.assignment.updated(rule.update, letter.datum),
              id.position + 1};
    } else {
      continue;
    }
    if (std::find(out.begin(), out.end(), next) == out.end())
      out.push_back(std::move(next));
  }
  return out;
}

std::vector<InstantaneousDescription> reach(const BuchiRa& a,
                                            const LassoWord& w,
                                            const InstantaneousDescription& from,
                                            Position horizon,
                                            const Limits& limits) {
  w.validate();
  const Compiled c = Compiled::of(a);
  if (!c.state_index.count(from.state))
    throw Error("unknown state '" + from.state + "'");
  if (from.assignment.size() != a.register_count)
    throw Error("assignment arity does not match the register count");
  if (horizon < from.position)
    throw Error("reach horizon lies before the start position");

  // Concrete positions never exceed the horizon, so the exploration is a
  // breadth-first closure over at most |Q| * |D|^k * horizon configurations.
  std::vector<DataValue> domain = word_domain(w);
  for (const auto& d : from.assignment.values()) domain.push_back(d);
  std::sort(domain.begin(), domain.end());
  domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
  const double bound =
      static_cast<double>(a.states.size()) *
      std::pow(static_cast<double>(domain.size()),
               static_cast<double>(a.register_count)) *
      static_cast<double>(horizon);
  if (bound > static_cast<double>(limits.max_configurations))
    throw ResourceLimitError(
        "reach exploration exceeds the limit of " +
            std::to_string(limits.max_configurations),
        bound);

  using Node = std::tuple<int, Assignment, Position>;
  std::map<Node, int> seen;
  std::vector<Node> queue;
  const Node start{c.state_index.at(from.state), from.assignment,
                   from.position};
  seen.emplace(start, 0);
  queue.push_back(start);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto [state, theta, pos] = queue[head];
    const Letter& letter = letter_at(w, pos);
    for (int ridx : c.rules_from[static_cast<std::size_t>(state)]) {
      const auto& rule = c.rules[static_cast<std::size_t>(ridx)];
      Node next;
      if (rule.guard == nullptr) {
        next = Node{rule.tgt, theta, pos};
      } else if (eval_basic(letter, theta, *rule.guard)) {
        if (pos + 1 > horizon) continue;
        next = Node{rule.tgt, theta.updated(rule.update, letter.datum),
                    pos + 1};
      } else {
        continue;
      }
      if (seen.emplace(next, 0).second) queue.push_back(std::move(next));
    }
  }

  std::vector<InstantaneousDescription> out;
  out.reserve(seen.size());
  for (const auto& [node, unused] : seen) {
    (void)unused;
    const auto& [state, theta, pos] = node;
    out.push_back(InstantaneousDescription{
        a.states[static_cast<std::size_t>(state)], theta, pos});
  }
  std::sort(out.begin(), out.end(),
            [](const InstantaneousDescription& x,
               const InstantaneousDescription& y) {
              return std::tie(x.position, x.state, x.assignment) <
                     std::tie(y.position, y.state, y.assignment);
            });
  return out;
}

bool accepts(const BuchiRa& a, const LassoWord& w, const Limits& limits) {
  w.validate();
  const Compiled c = Compiled::of(a);
  const FoldedGraph g = build_folded_graph(c, w, limits);
  const std::vector<int> comp = scc_of(g);
  return find_accepting_scc(c, g, comp).has_value();
}

namespace {

struct FoldedPath {
  std::vector<int> nodes;
  std::vector<bool> consuming;  // consuming[i]: edge nodes[i] -> nodes[i+1]
};

// Shortest folded path between two nodes, optionally restricted to one SCC.
FoldedPath folded_path(const FoldedGraph& g, int from, int to,
                       const std::vector<int>* comp, int restrict_comp) {
  std::vector<int> parent(g.nodes.size(), -1);
  std::vector<bool> parent_consuming(g.nodes.size(), false);
  std::vector<int> queue{from};
  std::vector<bool> seen(g.nodes.size(), false);
  seen[static_cast<std::size_t>(from)] = true;
  for (std::size_t head = 0;
       head < queue.size() && (to == from || !seen[static_cast<std::size_t>(to)]);
       ++head) {
    const int u = queue[head];
    for (const auto& e : g.edges[static_cast<std::size_t>(u)]) {
      if (comp && (*comp)[e.to] != restrict_comp) continue;
      if (seen[static_cast<std::size_t>(e.to)]) continue;
      seen[static_cast<std::size_t>(e.to)] = true;
      parent[static_cast<std::size_t>(e.to)] = u;
      parent_consuming[static_cast<std::size_t>(e.to)] = e.consuming;
      queue.push_back(e.to);
    }
  }
  FoldedPath path;
  if (to != from && !seen[static_cast<std::size_t>(to)]) return path;
  for (int v = to; v != from; v = parent[static_cast<std::size_t>(v)]) {
    path.nodes.push_back(v);
    path.consuming.push_back(parent_consuming[static_cast<std::size_t>(v)]);
  }
  path.nodes.push_back(from);
  std::reverse(path.nodes.begin(), path.nodes.end());
  std::reverse(path.consuming.begin(), path.consuming.end());
  return path;
}

InstantaneousDescription to_id(const BuchiRa& a, const Config& cfg,
                               Position concrete) {
  return InstantaneousDescription{
      a.states[static_cast<std::size_t>(cfg.state)], cfg.theta, concrete};
}

}  // namespace

std::optional<RunWitness> accepting_run(const BuchiRa& a, const LassoWord& w,
                                        const Limits& limits) {
  w.validate();
  const Compiled c = Compiled::of(a);
  const FoldedGraph g = build_folded_graph(c, w, limits);
  const std::vector<int> comp = scc_of(g);
  const auto hit = find_accepting_scc(c, g, comp);
  if (!hit) return std::nullopt;
  const auto [fnode, cc] = *hit;

  // Cycle through fnode and one internal consuming edge (u -> v).
  int edge_u = -1, edge_v = -1;
  bool found_edge = false;
  for (std::size_t u = 0; u < g.nodes.size() && !found_edge; ++u) {
    if (comp[static_cast<std::size_t>(u)] != cc) continue;
    for (const auto& e : g.edges[u])
      if (e.consuming && comp[e.to] == cc) {
        edge_u = static_cast<int>(u);
        edge_v = e.to;
        found_edge = true;
        break;
      }
  }
  const FoldedPath stem = folded_path(g, 0, fnode, nullptr, 0);
  const FoldedPath to_u = folded_path(g, fnode, edge_u, &comp, cc);
  const FoldedPath back = folded_path(g, edge_v, fnode, &comp, cc);

  // Concatenate: fnode ~> u, the consuming edge u -> v, then v ~> fnode.
  std::vector<int> cycle_nodes = to_u.nodes;
  std::vector<bool> cycle_consuming = to_u.consuming;
  cycle_nodes.push_back(edge_v);
  cycle_consuming.push_back(true);
  cycle_nodes.insert(cycle_nodes.end(), back.nodes.begin() + 1,
                     back.nodes.end());
  cycle_consuming.insert(cycle_consuming.end(), back.consuming.begin(),
                         back.consuming.end());

  RunWitness witness;
  Position pos = 1;
  for (std::size_t n = 0; n < stem.nodes.size(); ++n) {
    witness.stem.push_back(
        to_id(a, g.nodes[static_cast<std::size_t>(stem.nodes[n])], pos));
    if (n < stem.consuming.size() && stem.consuming[n]) ++pos;
  }
  for (std::size_t n = 0; n < cycle_nodes.size(); ++n) {
    witness.cycle.push_back(
        to_id(a, g.nodes[static_cast<std::size_t>(cycle_nodes[n])], pos));
    if (n < cycle_consuming.size() && cycle_consuming[n]) ++pos;
  }
  return witness;
}

}  // namespace engine
}  // namespace mubra
