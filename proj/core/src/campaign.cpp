#include "mubra/campaign.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "mubra/bra2mu.hpp"
#include "mubra/engine.hpp"
#include "mubra/mu2bra.hpp"
#include "mubra/normalize.hpp"
#include "mubra/oracle.hpp"
#include "mubra/textio.hpp"

namespace mubra {
namespace campaign {

namespace {

void write_counterexample(const Options& opt, const std::string& property,
                          int case_index,
                          const std::vector<std::pair<std::string, std::string>>&
                              files) {
  if (opt.counterexample_dir.empty()) return;
  namespace fs = std::filesystem;
  fs::create_directories(opt.counterexample_dir);
  for (const auto& [name, content] : files) {
    const fs::path path = fs::path(opt.counterexample_dir) /
                          (property + "-" + std::to_string(case_index) + "-" +
                           name);
    std::ofstream out(path);
    out << content;
  }
}

gen::Rng case_rng(std::uint64_t seed, const std::string& property, int n) {
  std::uint64_t h = seed * 1000003u + static_cast<std::uint64_t>(n);
  for (char c : property) h = h * 131u + static_cast<unsigned char>(c);
  return gen::Rng(h);
}

// Oracle verdict with convenience accessors for the differential checks.
struct Sat {
  oracle::Verdict verdict;
  bool value() const { return verdict == oracle::Verdict::Satisfied; }
  bool conclusive() const { return verdict != oracle::Verdict::Inconclusive; }
};

Sat oracle_sat(const EquationSystem& s, const LassoWord& w,
               Position window = 0) {
  return Sat{oracle::satisfies(s, w, window).verdict};
}

}  // namespace

Result tuple_reachability_agreement(const Options& opt) {
  Result result;
  result.name = "tuple-reachability-agreement";
  for (int n = 0; n < opt.cases; ++n) {
    gen::Rng rng = case_rng(opt.seed, result.name, n);
    EquationSystem s = gen::gen_system_normal(rng, opt.gen);
    LassoWord w = gen::gen_lasso(rng, opt.gen, static_cast<int>(s.atoms.size()));
    ++result.cases;

    const Position l = w.prefix_length();
    const Position p = w.period_length();
    const Position window = l + 2 * p + 2;

    oracle::Params params;
    params.window = window;
    const oracle::Environment lfp = oracle::lfp_window(s, w, params);
    const BuchiRa a = to_bra(s);

    auto label = [&](const std::string& v) { return to_text(s.rhs(v), s.atoms); };

    // Engine side memoized per source ID.
    std::map<std::tuple<std::string, Assignment, Position>,
             std::set<InstantaneousDescription>>
        reach_memo;
    auto engine_reaches = [&](const std::string& from_state,
                              const Assignment& theta, Position i,
                              const InstantaneousDescription& target) {
      auto key = std::make_tuple(from_state, theta, i);
      auto it = reach_memo.find(key);
      if (it == reach_memo.end()) {
        auto ids = engine::reach(a, w, {from_state, theta, i}, window);
        it = reach_memo
                 .emplace(key, std::set<InstantaneousDescription>(ids.begin(),
                                                                  ids.end()))
                 .first;
      }
      return it->second.count(target) != 0;
    };

    const auto domain = oracle::oracle_domain(w);
    std::vector<Assignment> assignments;
    {
      // Enumerate domain^k.
      std::vector<Assignment> acc;
      acc.push_back(Assignment(std::vector<DataValue>{}));
      for (int r = 0; r < s.register_count; ++r) {
        std::vector<Assignment> next;
        for (const auto& partial : acc)
          for (const auto& d : domain) {
            auto values = partial.values();
            values.push_back(d);
            next.push_back(Assignment(values));
          }
        acc = std::move(next);
      }
      assignments = std::move(acc);
    }

    bool failed = false;
    std::string detail;
    for (const auto& v : s.vars) {
      for (const auto& x : s.omega_vars) {
        for (Position j = 1; j <= window && !failed; ++j) {
          for (const auto& theta_j : assignments) {
            for (Position i = 1; i <= j; ++i) {
              for (const auto& theta : assignments) {
                const oracle::Tuple t{i, theta, j, theta_j, x};
                const bool in_oracle = lfp.contains(v, t);
                const bool in_engine = engine_reaches(
                    label(v), theta, i, {label(x), theta_j, j});
                if (in_oracle != in_engine) {
                  failed = true;
                  detail = "tuple " + oracle::to_string(t) + " of " + v +
                           ": oracle=" + (in_oracle ? "in" : "out") +
                           " engine=" + (in_engine ? "in" : "out");
                  break;
                }
              }
              if (failed) break;
            }
            if (failed) break;
          }
        }
        if (failed) break;
      }
      if (failed) break;
    }

    if (failed) {
      ++result.failures;
      if (result.note.empty()) result.note = detail;
      write_counterexample(opt, result.name, n,
                           {{"system.mu", serialize_system(s)},
                            {"word.lasso", serialize_lasso(w, s.atoms)},
                            {"note.txt", detail + "\n"}});
    }
  }
  return result;
}

Result language_agreement(const Options& opt) {
  Result result;
  result.name = "language-agreement";
  for (int n = 0; n < opt.cases; ++n) {
    gen::Rng rng = case_rng(opt.seed, result.name, n);
    EquationSystem s = gen::gen_system_normal(rng, opt.gen);
    LassoWord w = gen::gen_lasso(rng, opt.gen, static_cast<int>(s.atoms.size()));
    ++result.cases;

    Sat o{};
    try {
      o = oracle_sat(s, w);
    } catch (const ResourceLimitError&) {
      ++result.inconclusive;
      continue;
    }
    if (!o.conclusive()) {
      ++result.inconclusive;
      continue;
    }
    const bool e = engine::accepts(to_bra(s), w);
    if (o.value() == e) continue;

    ++result.failures;
    auto still_failing = [&](const EquationSystem& sys, const LassoWord& word) {
      try {
        const Sat os = oracle_sat(sys, word);
        if (!os.conclusive()) return false;
        return os.value() != engine::accepts(to_bra(sys), word);
      } catch (const Error&) {
        return false;
      }
    };
    LassoWord small_w = gen::shrink_lasso(
        w, [&](const LassoWord& cand) { return still_failing(s, cand); });
    EquationSystem small_s = gen::shrink_system(
        s, [&](const EquationSystem& cand) { return still_failing(cand, small_w); });
    std::ostringstream note;
    note << "oracle=" << (o.value() ? "sat" : "unsat") << " engine="
         << (e ? "accept" : "reject");
    if (result.note.empty()) result.note = note.str();
    write_counterexample(opt, result.name, n,
                         {{"system.mu", serialize_system(small_s)},
                          {"word.lasso", serialize_lasso(small_w, small_s.atoms)},
                          {"note.txt", note.str() + "\n"}});
  }
  return result;
}

Result roundtrip_bra(const Options& opt, int words_per_case) {
  Result result;
  result.name = "automaton-roundtrip";
  for (int n = 0; n < opt.cases; ++n) {
    gen::Rng rng = case_rng(opt.seed, result.name, n);
    BuchiRa a = gen::gen_bra(rng, opt.gen, /*with_epsilon=*/false);
    const BuchiRa back = to_bra(from_bra(a).system);
    for (int m = 0; m < words_per_case; ++m) {
      LassoWord w = gen::gen_lasso(rng, opt.gen, static_cast<int>(a.atoms.size()));
      ++result.cases;
      const bool direct = engine::accepts(a, w);
      const bool round = engine::accepts(back, w);
      if (direct == round) continue;
      ++result.failures;
      auto still_failing = [&](const BuchiRa& cand, const LassoWord& word) {
        try {
          if (!cand.is_total() || cand.has_epsilon_rules()) return false;
          return engine::accepts(cand, word) !=
                 engine::accepts(to_bra(from_bra(cand).system), word);
        } catch (const Error&) {
          return false;
        }
      };
      LassoWord small_w = gen::shrink_lasso(
          w, [&](const LassoWord& cand) { return still_failing(a, cand); });
      BuchiRa small_a = gen::shrink_bra(
          a, [&](const BuchiRa& cand) { return still_failing(cand, small_w); });
      std::string note = std::string("direct=") + (direct ? "accept" : "reject") +
                         " roundtrip=" + (round ? "accept" : "reject");
      if (result.note.empty()) result.note = note;
      write_counterexample(opt, result.name, n,
                           {{"automaton.bra", serialize_bra(small_a)},
                            {"word.lasso", serialize_lasso(small_w, small_a.atoms)},
                            {"note.txt", note + "\n"}});
    }
  }
  return result;
}

namespace {

Result preservation_campaign(const Options& opt, const std::string& name,
                             bool with_epsilon,
                             BuchiRa (*transform)(const BuchiRa&),
                             bool drop_rules) {
  Result result;
  result.name = name;
  for (int n = 0; n < opt.cases; ++n) {
    gen::Rng rng = case_rng(opt.seed, name, n);
    BuchiRa a = gen::gen_bra(rng, opt.gen, with_epsilon);
    if (drop_rules) {
      std::vector<TransitionRule> kept;
      for (const auto& r : a.rules)
        if (std::uniform_real_distribution<double>(0, 1)(rng) > 0.4)
          kept.push_back(r);
      a.rules = std::move(kept);
    }
    LassoWord w = gen::gen_lasso(rng, opt.gen, static_cast<int>(a.atoms.size()));
    ++result.cases;

    const BuchiRa b = transform(a);
    const bool before = engine::accepts(a, w);
    const bool after = engine::accepts(b, w);
    if (before == after) continue;

    ++result.failures;
    auto still_failing = [&](const BuchiRa& cand, const LassoWord& word) {
      try {
        return engine::accepts(cand, word) !=
               engine::accepts(transform(cand), word);
      } catch (const Error&) {
        return false;
      }
    };
    LassoWord small_w = gen::shrink_lasso(
        w, [&](const LassoWord& cand) { return still_failing(a, cand); });
    BuchiRa small_a = gen::shrink_bra(
        a, [&](const BuchiRa& cand) { return still_failing(cand, small_w); });
    std::string note = std::string("before=") + (before ? "accept" : "reject") +
                       " after=" + (after ? "accept" : "reject");
    if (result.note.empty()) result.note = note;
    write_counterexample(opt, name, n,
                         {{"automaton.bra", serialize_bra(small_a)},
                          {"word.lasso", serialize_lasso(small_w, small_a.atoms)},
                          {"note.txt", note + "\n"}});
  }
  return result;
}

}  // namespace

Result epsilon_elimination_preservation(const Options& opt) {
  return preservation_campaign(opt, "epsilon-elimination-preservation",
                               /*with_epsilon=*/true, &eliminate_epsilon,
                               /*drop_rules=*/false);
}

Result totalize_preservation(const Options& opt) {
  return preservation_campaign(opt, "totalize-preservation",
                               /*with_epsilon=*/false, &totalize,
                               /*drop_rules=*/true);
}

Result normal_form_shapes(const Options& opt) {
  Result result;
  result.name = "normal-form-shapes";
  for (int n = 0; n < opt.cases; ++n) {
    gen::Rng rng = case_rng(opt.seed, result.name, n);
    EquationSystem raw = gen::gen_system_raw(rng, opt.gen);
    ++result.cases;

    std::string detail;
    try {
      EquationSystem wf;
      EquationSystem nf;
      try {
        wf = ensure_wellformed(desugar(raw));
        nf = normal_form(wf);
      } catch (const UnrepairableError&) {
        // A documented error outcome, not a normal-form violation: the omega
        // set cannot stay injective for this input.
        ++result.inconclusive;
        continue;
      }
      if (!nf.is_normal_form(/*binary_disjunctions=*/true))
        detail = "output not in strict normal form";
      for (const auto& v : nf.vars) {
        if (!wf.has_var(v) && nf.is_omega(v))
          detail = "fresh variable '" + v + "' declared omega";
      }
      const EquationSystem again = normal_form(nf);
      if (!(again.vars == nf.vars) ||
          !std::all_of(nf.vars.begin(), nf.vars.end(), [&](const std::string& v) {
            return again.rhs(v) == nf.rhs(v);
          }))
        detail = "normal_form is not idempotent";

      if (detail.empty()) {
        for (int m = 0; m < 2; ++m) {
          LassoWord w =
              gen::gen_lasso(rng, opt.gen, static_cast<int>(raw.atoms.size()));
          Sat before{}, after{};
          try {
            before = oracle_sat(wf, w);
            after = oracle_sat(nf, w);
          } catch (const ResourceLimitError&) {
            // Oracle refuses instances beyond its size budget; the shape and
            // idempotence checks above already ran.
            ++result.inconclusive;
            continue;
          }
          if (!before.conclusive() || !after.conclusive()) {
            ++result.inconclusive;
            continue;
          }
          const bool e = engine::accepts(to_bra(nf), w);
          if (before.value() != after.value() || after.value() != e) {
            detail = std::string("satisfaction changed: before=") +
                     (before.value() ? "sat" : "unsat") + " after=" +
                     (after.value() ? "sat" : "unsat") + " engine=" +
                     (e ? "accept" : "reject");
            break;
          }
        }
      }
    } catch (const Error& e) {
      detail = std::string("pipeline error: ") + e.what();
    }

    if (!detail.empty()) {
      ++result.failures;
      if (result.note.empty()) result.note = detail;
      write_counterexample(opt, result.name, n,
                           {{"system.mu", serialize_system(raw)},
                            {"note.txt", detail + "\n"}});
    }
  }
  return result;
}

namespace {

oracle::Tuple random_tuple(gen::Rng& rng, const EquationSystem& s,
                           Position window,
                           const std::vector<Assignment>& assignments) {
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  const Position j = pick(1, static_cast<int>(window));
  const Position i = pick(1, static_cast<int>(j));
  const Assignment& theta =
      assignments[static_cast<std::size_t>(pick(0, static_cast<int>(assignments.size()) - 1))];
  const Assignment& theta_j =
      assignments[static_cast<std::size_t>(pick(0, static_cast<int>(assignments.size()) - 1))];
  const std::string& x = s.omega_vars[static_cast<std::size_t>(
      pick(0, static_cast<int>(s.omega_vars.size()) - 1))];
  return oracle::Tuple{i, theta, j, theta_j, x};
}

std::vector<Assignment> all_assignments(const std::vector<DataValue>& domain,
                                        int k) {
  std::vector<Assignment> acc;
  acc.push_back(Assignment(std::vector<DataValue>{}));
  for (int r = 0; r < k; ++r) {
    std::vector<Assignment> next;
    for (const auto& partial : acc)
      for (const auto& d : domain) {
        auto values = partial.values();
        values.push_back(d);
        next.push_back(Assignment(values));
      }
    acc = std::move(next);
  }
  return acc;
}

}  // namespace

Result oracle_monotonicity(const Options& opt) {
  Result result;
  result.name = "oracle-monotonicity";
  for (int n = 0; n < opt.cases; ++n) {
    gen::Rng rng = case_rng(opt.seed, result.name, n);
    EquationSystem s = gen::gen_system_normal(rng, opt.gen);
    LassoWord w = gen::gen_lasso(rng, opt.gen, static_cast<int>(s.atoms.size()));
    ++result.cases;

    const Position window = w.prefix_length() + w.period_length() + 2;
    const auto domain = oracle::oracle_domain(w);
    const auto assignments = all_assignments(domain, s.register_count);

    oracle::Environment u2(s.vars, window, domain);
    const int tuple_count =
        std::uniform_int_distribution<int>(0, 40)(rng);
    for (int m = 0; m < tuple_count; ++m) {
      const std::string& v = s.vars[static_cast<std::size_t>(
          std::uniform_int_distribution<int>(
              0, static_cast<int>(s.vars.size()) - 1)(rng))];
      u2.insert(v, random_tuple(rng, s, window, assignments));
    }
    oracle::Environment u1(s.vars, window, domain);
    for (const auto& v : s.vars)
      for (const auto& t : u2.tuples(v))
        if (std::uniform_real_distribution<double>(0, 1)(rng) < 0.5)
          u1.insert(v, t);

    const oracle::Environment f1 = oracle::apply_F(s, w, u1);
    const oracle::Environment f2 = oracle::apply_F(s, w, u2);
    if (!f1.subset_of(f2)) {
      ++result.failures;
      if (result.note.empty())
        result.note = "apply_F not monotone on sampled environments";
      write_counterexample(opt, result.name, n,
                           {{"system.mu", serialize_system(s)},
                            {"word.lasso", serialize_lasso(w, s.atoms)}});
    }
  }
  return result;
}

Result oracle_locality(const Options& opt) {
  Result result;
  result.name = "oracle-locality";
  for (int n = 0; n < opt.cases; ++n) {
    gen::Rng rng = case_rng(opt.seed, result.name, n);
    EquationSystem s = gen::gen_system_normal(rng, opt.gen);
    LassoWord w1 = gen::gen_lasso(rng, opt.gen, static_cast<int>(s.atoms.size()));
    ++result.cases;

    // Rebuild everything from position J on; tuples with j <= J only read
    // letters before J and must not change.
    const Position max_j = w1.prefix_length() + 1;
    const Position boundary =
        std::uniform_int_distribution<Position>(1, max_j)(rng);
    LassoWord w2;
    for (Position i = 1; i < boundary; ++i)
      w2.prefix.push_back(letter_at(w1, i));
    LassoWord tail = gen::gen_lasso(rng, opt.gen, static_cast<int>(s.atoms.size()));
    for (const auto& letter : tail.prefix) w2.prefix.push_back(letter);
    w2.period = tail.period;

    std::vector<DataValue> domain = oracle::oracle_domain(w1);
    for (const auto& d : oracle::oracle_domain(w2)) domain.push_back(d);
    std::sort(domain.begin(), domain.end());
    domain.erase(std::unique(domain.begin(), domain.end()), domain.end());

    oracle::Params params;
    params.window = boundary;
    params.domain = domain;
    const oracle::Environment e1 = oracle::lfp_window(s, w1, params);
    const oracle::Environment e2 = oracle::lfp_window(s, w2, params);
    if (!(e1 == e2)) {
      ++result.failures;
      if (result.note.empty())
        result.note = "fixed point depends on letters beyond the window";
      write_counterexample(opt, result.name, n,
                           {{"system.mu", serialize_system(s)},
                            {"word1.lasso", serialize_lasso(w1, s.atoms)},
                            {"word2.lasso", serialize_lasso(w2, s.atoms)}});
    }
  }
  return result;
}

Result oracle_periodicity(const Options& opt) {
  Result result;
  result.name = "oracle-periodicity";
  for (int n = 0; n < opt.cases; ++n) {
    gen::Rng rng = case_rng(opt.seed, result.name, n);
    EquationSystem s = gen::gen_system_normal(rng, opt.gen);
    LassoWord w = gen::gen_lasso(rng, opt.gen, static_cast<int>(s.atoms.size()));
    ++result.cases;

    const Position l = w.prefix_length();
    const Position p = w.period_length();
    const Position window = l + 3 * p + 1;
    oracle::Params params;
    params.window = window;
    const oracle::Environment lfp = oracle::lfp_window(s, w, params);

    bool failed = false;
    for (const auto& v : s.vars) {
      for (const auto& t : lfp.tuples(v)) {
        if (t.i > l && t.j + p <= window) {
          const oracle::Tuple shifted{t.i + p, t.theta, t.j + p, t.theta_j, t.x};
          if (!lfp.contains(v, shifted)) { failed = true; break; }
        }
        if (t.i - p > l) {
          const oracle::Tuple shifted{t.i - p, t.theta, t.j - p, t.theta_j, t.x};
          if (!lfp.contains(v, shifted)) { failed = true; break; }
        }
      }
      if (failed) break;
    }
    if (failed) {
      ++result.failures;
      if (result.note.empty())
        result.note = "fixed point not shift invariant beyond the prefix";
      write_counterexample(opt, result.name, n,
                           {{"system.mu", serialize_system(s)},
                            {"word.lasso", serialize_lasso(w, s.atoms)}});
    }
  }
  return result;
}

std::vector<Result> run_all(const Options& opt, std::ostream& log) {
  std::vector<Result> results;
  auto run = [&](Result r) {
    log << r.name << ": cases=" << r.cases << " failures=" << r.failures;
    if (r.inconclusive > 0) log << " inconclusive=" << r.inconclusive;
    if (!r.note.empty()) log << "  [" << r.note << "]";
    log << '\n';
    results.push_back(std::move(r));
  };
  run(tuple_reachability_agreement(opt));
  run(language_agreement(opt));
  run(roundtrip_bra(opt, 5));
  run(epsilon_elimination_preservation(opt));
  run(totalize_preservation(opt));
  run(normal_form_shapes(opt));
  Options algebra = opt;
  algebra.cases = std::max(opt.cases, 200);
  run(oracle_monotonicity(algebra));
  run(oracle_locality(algebra));
  run(oracle_periodicity(algebra));
  return results;
}

}  // namespace campaign
}  // namespace mubra
