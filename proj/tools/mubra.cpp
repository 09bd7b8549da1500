// Command line front end: parsing, normalization, both translation
// directions, lasso-word membership, the fixed-point oracle, and the random
// differential campaign.
//
// Exit codes: 0 success/accept/agreement, 1 reject/disagreement,
// 2 usage or parse error, 3 inconclusive oracle verdict.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mubra/bra2mu.hpp"
#include "mubra/campaign.hpp"
#include "mubra/engine.hpp"
#include "mubra/mu2bra.hpp"
#include "mubra/normalize.hpp"
#include "mubra/oracle.hpp"
#include "mubra/textio.hpp"

namespace {

constexpr int kExitAccept = 0;
constexpr int kExitReject = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconclusive = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw mubra::Error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw mubra::Error("cannot write '" + out_path + "'");
  out << content;
}

mubra::EquationSystem load_system(const std::string& path) {
  return mubra::parse_system(read_file(path));
}

mubra::BuchiRa load_bra(const std::string& path) {
  return mubra::parse_bra(read_file(path));
}

// Desugar and repair; warn on stderr when the repair changed anything.
mubra::EquationSystem prepare(const mubra::EquationSystem& s, bool quiet) {
  mubra::EquationSystem d = mubra::desugar(s);
  if (d.is_wellformed()) return d;
  mubra::EquationSystem wf = mubra::ensure_wellformed(d);
  if (!quiet)
    std::cerr << "note: system repaired to meet the well-formedness "
                 "requirements\n";
  return wf;
}

std::string describe_id(const mubra::InstantaneousDescription& id) {
  return mubra::to_string(id);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mu-calculus with freeze quantifier <-> Buechi register "
               "automata toolkit"};
  app.require_subcommand(1);

  std::string system_path, automaton_path, word_path, out_path;
  long long window = 0;
  long long rounds = 5;
  std::uint64_t seed = 1;
  int cases = 200;
  mubra::gen::Config gen_cfg;
  std::string counterexample_dir = "difftest-counterexamples";
  std::size_t limit = 10'000'000;

  auto* check = app.add_subcommand("check", "parse a system and report");
  check->add_option("system", system_path)->required();

  auto* normalize_cmd =
      app.add_subcommand("normalize", "desugar, repair, and normalize");
  normalize_cmd->add_option("system", system_path)->required();
  normalize_cmd->add_option("-o,--out", out_path);

  auto* tobra = app.add_subcommand("to-bra", "system to automaton");
  tobra->add_option("system", system_path)->required();
  tobra->add_option("-o,--out", out_path);

  auto* frombra = app.add_subcommand("from-bra", "automaton to system");
  frombra->add_option("automaton", automaton_path)->required();
  frombra->add_option("-o,--out", out_path);

  auto* epselim = app.add_subcommand("eps-elim", "remove epsilon rules");
  epselim->add_option("automaton", automaton_path)->required();
  epselim->add_option("-o,--out", out_path);

  auto* total = app.add_subcommand("totalize", "give every state a rule");
  total->add_option("automaton", automaton_path)->required();
  total->add_option("-o,--out", out_path);

  auto* dot = app.add_subcommand("dot", "graphviz export of an automaton");
  dot->add_option("automaton", automaton_path)->required();
  dot->add_option("-o,--out", out_path);

  auto* run = app.add_subcommand("run", "membership of a lasso word");
  run->add_option("automaton", automaton_path)->required();
  run->add_option("word", word_path)->required();
  run->add_option("--limit", limit, "configuration cap");

  auto* sat = app.add_subcommand("sat-oracle",
                                 "fixed-point semantics satisfaction");
  sat->add_option("system", system_path)->required();
  sat->add_option("word", word_path)->required();
  sat->add_option("--window", window, "oracle window (0 = default)");

  auto* fixpoint = app.add_subcommand("fixpoint", "dump fixed point rounds");
  fixpoint->add_option("system", system_path)->required();
  fixpoint->add_option("word", word_path)->required();
  fixpoint->add_option("--rounds", rounds, "rounds to print");
  fixpoint->add_option("--window", window, "oracle window (0 = default)");

  auto* diff = app.add_subcommand("difftest", "random differential campaign");
  diff->add_option("--seed", seed);
  diff->add_option("--cases", cases);
  diff->add_option("--max-states", gen_cfg.max_states);
  diff->add_option("--max-regs", gen_cfg.max_regs);
  diff->add_option("--max-atoms", gen_cfg.max_atoms);
  diff->add_option("--max-prefix", gen_cfg.max_prefix);
  diff->add_option("--max-period", gen_cfg.max_period);
  diff->add_option("--out", counterexample_dir,
                   "directory for minimized counterexamples");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) {
      const auto s = load_system(system_path);
      const auto d = mubra::desugar(s);
      std::cout << "atoms: " << s.atoms.size()
                << "  registers: " << s.register_count
                << "  variables: " << s.vars.size() << '\n';
      std::cout << "main: " << s.main_var << '\n';
      std::cout << "omega:";
      for (const auto& v : s.omega_vars) std::cout << ' ' << v;
      std::cout << '\n';
      const bool wf = d.is_wellformed();
      std::cout << "well-formed: " << (wf ? "yes" : "no (repairable)") << '\n';
      std::cout << "normal form: "
                << (d.is_normal_form(false) ? "yes" : "no") << '\n';
      return wf ? kExitAccept : kExitReject;
    }

    if (*normalize_cmd) {
      const auto s = prepare(load_system(system_path), false);
      write_output(out_path, mubra::serialize_system(mubra::normal_form(s)));
      return kExitAccept;
    }

    if (*tobra) {
      auto s = prepare(load_system(system_path), false);
      if (!s.is_normal_form(false)) s = mubra::normal_form(s);
      write_output(out_path, mubra::serialize_bra(mubra::to_bra(s)));
      return kExitAccept;
    }

    if (*frombra) {
      auto a = load_bra(automaton_path);
      if (a.has_epsilon_rules()) {
        std::cerr << "note: removing epsilon rules first\n";
        a = mubra::eliminate_epsilon(a);
      }
      if (!a.is_total()) {
        std::cerr << "note: totalizing first\n";
        a = mubra::totalize(a);
      }
      write_output(out_path,
                   mubra::serialize_system(mubra::from_bra(a).system));
      return kExitAccept;
    }

    if (*epselim) {
      write_output(out_path, mubra::serialize_bra(mubra::eliminate_epsilon(
                                 load_bra(automaton_path))));
      return kExitAccept;
    }

    if (*total) {
      write_output(out_path, mubra::serialize_bra(
                                 mubra::totalize(load_bra(automaton_path))));
      return kExitAccept;
    }

    if (*dot) {
      write_output(out_path, mubra::bra_to_dot(load_bra(automaton_path)));
      return kExitAccept;
    }

    if (*run) {
      const auto a = load_bra(automaton_path);
      const auto w = mubra::parse_lasso(read_file(word_path), a.atoms);
      mubra::engine::Limits limits;
      limits.max_configurations = limit;
      const auto witness = mubra::engine::accepting_run(a, w, limits);
      if (!witness) {
        std::cout << "reject\n";
        return kExitReject;
      }
      std::cout << "accept\n";
      std::ostringstream stem, cycle;
      for (const auto& id : witness->stem) stem << ' ' << describe_id(id);
      for (const auto& id : witness->cycle) cycle << ' ' << describe_id(id);
      std::cout << "stem:" << stem.str() << '\n';
      std::cout << "cycle:" << cycle.str() << '\n';
      return kExitAccept;
    }

    if (*sat) {
      const auto s = prepare(load_system(system_path), false);
      const auto w = mubra::parse_lasso(read_file(word_path), s.atoms);
      const auto verdict = mubra::oracle::satisfies(s, w, window);
      std::cout << "window " << verdict.window_used << '\n';
      switch (verdict.verdict) {
        case mubra::oracle::Verdict::Satisfied:
          std::cout << "satisfied\n";
          return kExitAccept;
        case mubra::oracle::Verdict::NotSatisfied:
          std::cout << "not-satisfied\n";
          return kExitReject;
        case mubra::oracle::Verdict::Inconclusive:
          std::cout << "inconclusive (try --window "
                    << verdict.suggested_window << ")\n";
          return kExitInconclusive;
      }
    }

    if (*fixpoint) {
      const auto s = prepare(load_system(system_path), false);
      const auto w = mubra::parse_lasso(read_file(word_path), s.atoms);
      const mubra::Position n =
          window > 0 ? window : mubra::oracle::default_window(s, w);
      std::cout << "window " << n << '\n';
      std::cout << "domain";
      for (const auto& d : mubra::oracle::oracle_domain(w))
        std::cout << ' ' << mubra::to_string(d);
      std::cout << '\n';
      mubra::oracle::Environment u(s.vars, n, mubra::oracle::oracle_domain(w));
      for (long long round = 1; round <= rounds; ++round) {
        mubra::oracle::Environment next = mubra::oracle::apply_F(s, w, u);
        const bool stable = next == u;
        u = std::move(next);
        std::cout << "round " << round << (stable ? " (stable)" : "") << '\n';
        for (const auto& v : s.vars) {
          std::cout << "  " << v << ":";
          if (u.tuples(v).empty()) {
            std::cout << " {}\n";
            continue;
          }
          std::cout << '\n';
          for (const auto& t : u.tuples(v))
            std::cout << "    " << mubra::oracle::to_string(t) << '\n';
        }
        if (stable) break;
      }
      return kExitAccept;
    }

    if (*diff) {
      mubra::campaign::Options opt;
      opt.seed = seed;
      opt.cases = cases;
      opt.gen = gen_cfg;
      opt.counterexample_dir = counterexample_dir;
      const auto results = mubra::campaign::run_all(opt, std::cout);
      int failures = 0;
      for (const auto& r : results) failures += r.failures;
      std::cout << (failures == 0 ? "all properties passed"
                                  : "FAILURES detected")
                << '\n';
      return failures == 0 ? kExitAccept : kExitReject;
    }
  } catch (const mubra::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const mubra::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
