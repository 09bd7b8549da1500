#include "mubra/textio.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace mubra {

namespace {

const std::set<std::string>& reserved_words() {
  static const std::set<std::string> words = {
      "tt",   "ff",        "up",    "down", "X",
      "eps",  "atoms",     "registers",     "omega",
      "main", "states",    "initial",       "accepting",
      "prefix", "period"};
  return words;
}

bool is_bare_name(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
    return false;
  std::size_t n = 1;
  while (n < s.size() && (std::isalnum(static_cast<unsigned char>(s[n])) ||
                          s[n] == '_'))
    ++n;
  while (n < s.size() && s[n] == '\'') ++n;
  return n == s.size() && reserved_words().count(s) == 0;
}

enum class Tok {
  Ident,
  Int,
  String,
  Equals,
  Pipe,
  Amp,
  Bang,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Comma,
  Semi,
  ArrowOpen,   // --(
  ArrowClose,  // )-->
  Newline,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::int64_t num = 0;
  SourceSpan span;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { tokenize(); }
  const std::vector<Token>& tokens() const { return tokens_; }

 private:
  void tokenize() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r') {
        advance();
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == '\n') {
        push(Tok::Newline, "\n");
        advance_newline();
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        lex_int();
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        lex_ident();
      } else if (c == '"') {
        lex_string();
      } else {
        lex_symbol();
      }
    }
    push(Tok::End, "");
  }

  void lex_int() {
    const SourceSpan start = here();
    std::string digits;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      digits += text_[pos_];
      advance();
    }
    Token t{Tok::Int, digits, 0, start};
    try {
      t.num = std::stoll(digits);
    } catch (const std::exception&) {
      throw ParseError(start, "integer literal out of range");
    }
    tokens_.push_back(std::move(t));
  }

  void lex_ident() {
    const SourceSpan start = here();
    std::string name;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_')) {
      name += text_[pos_];
      advance();
    }
    while (pos_ < text_.size() && text_[pos_] == '\'') {
      name += '\'';
      advance();
    }
    tokens_.push_back(Token{Tok::Ident, std::move(name), 0, start});
  }

  void lex_string() {
    const SourceSpan start = here();
    advance();  // opening quote
    std::string content;
    while (pos_ < text_.size() && text_[pos_] != '"' && text_[pos_] != '\n') {
      content += text_[pos_];
      advance();
    }
    if (pos_ >= text_.size() || text_[pos_] != '"')
      throw ParseError(start, "unterminated string");
    advance();
    tokens_.push_back(Token{Tok::String, std::move(content), 0, start});
  }

  void lex_symbol() {
    const SourceSpan start = here();
    const char c = text_[pos_];
    switch (c) {
      case '=': push(Tok::Equals, "="); advance(); return;
      case '|': push(Tok::Pipe, "|"); advance(); return;
      case '&': push(Tok::Amp, "&"); advance(); return;
      case '!': push(Tok::Bang, "!"); advance(); return;
      case '(': push(Tok::LParen, "("); advance(); return;
      case '{': push(Tok::LBrace, "{"); advance(); return;
      case '}': push(Tok::RBrace, "}"); advance(); return;
      case ',': push(Tok::Comma, ","); advance(); return;
      case ';': push(Tok::Semi, ";"); advance(); return;
      case ')':
        if (text_.substr(pos_, 4) == ")-->") {
          push(Tok::ArrowClose, ")-->");
          advance(); advance(); advance(); advance();
        } else {
          push(Tok::RParen, ")");
          advance();
        }
        return;
      case '-':
        if (text_.substr(pos_, 3) == "--(") {
          push(Tok::ArrowOpen, "--(");
          advance(); advance(); advance();
        } else {
          throw ParseError(start, "unexpected '-'");
        }
        return;
      default:
        throw ParseError(start, std::string("unexpected character '") + c + "'");
    }
  }

  SourceSpan here() const { return SourceSpan{line_, col_, pos_}; }
  void push(Tok kind, std::string text) {
    tokens_.push_back(Token{kind, std::move(text), 0, here()});
  }
  void advance() { ++pos_; ++col_; }
  void advance_newline() { ++pos_; ++line_; col_ = 1; }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  std::vector<Token> tokens_;
};

class TokenStream {
 public:
  explicit TokenStream(std::string_view text) : lexer_(text) {}

  const Token& peek(std::size_t ahead = 0) const {
    const auto& toks = lexer_.tokens();
    const std::size_t idx = std::min(pos_ + ahead, toks.size() - 1);
    return toks[idx];
  }
  const Token& next() {
    const Token& t = peek();
    if (t.kind != Tok::End) ++pos_;
    return t;
  }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    next();
    return true;
  }
  const Token& expect(Tok kind, const std::string& what) {
    if (peek().kind != kind)
      throw ParseError(peek().span, "expected " + what + ", found '" +
                                        describe(peek()) + "'");
    return next();
  }
  void skip_newlines() {
    while (peek().kind == Tok::Newline) next();
  }
  void expect_end_of_line() {
    if (peek().kind == Tok::End) return;
    expect(Tok::Newline, "end of line");
  }
  bool at_end() const { return peek().kind == Tok::End; }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Tok::Newline: return "\\n";
      case Tok::End: return "end of input";
      case Tok::String: return "\"" + t.text + "\"";
      default: return t.text;
    }
  }

 private:
  Lexer lexer_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Formula parsing (system right-hand sides and automaton guards).

struct VarUse {
  std::string name;
  SourceSpan span;
};

class FormulaParser {
 public:
  FormulaParser(TokenStream& ts, const std::vector<std::string>& atoms, int k,
                std::vector<VarUse>* uses)
      : ts_(ts), atoms_(atoms), k_(k), uses_(uses) {}

  Formula parse_rhs() { return parse_or(); }

  Basic parse_basic_only() {
    Basic acc = parse_basic_unary();
    while (ts_.accept(Tok::Amp)) acc = Basic::conj(acc, parse_basic_unary());
    return acc;
  }

 private:
  Formula parse_or() {
    std::vector<Formula> parts;
    parts.push_back(parse_and());
    while (ts_.accept(Tok::Pipe)) parts.push_back(parse_and());
    if (parts.size() == 1) return parts[0];
    return Formula::disj(std::move(parts));
  }

  Formula parse_and() {
    Formula acc = parse_unary();
    while (ts_.accept(Tok::Amp)) acc = fold_conjunct(std::move(acc), parse_unary());
    return acc;
  }

  // Adjacent basics merge, and a basic conjunct folds into the guard of a
  // freeze-next so that `down {R} X psi & phi` reparses to the node the
  // serializer printed. Everything else stays a sugar conjunction for the
  // desugarer to validate.
  static Formula fold_conjunct(Formula acc, Formula part) {
    if (acc.kind() == Formula::Kind::BasicF &&
        part.kind() == Formula::Kind::BasicF)
      return Formula::basic(
          Basic::conj(acc.basic_formula(), part.basic_formula()));
    auto fold_into_guard = [](const Formula& fz, const Basic& b) {
      const Basic guard = fz.guard().kind() == Basic::Kind::True
                              ? b
                              : Basic::conj(fz.guard(), b);
      return Formula::freeze_next(fz.update_set(), fz.body(), guard);
    };
    if (acc.kind() == Formula::Kind::FreezeNext) {
      if (auto b = try_basic(part)) return fold_into_guard(acc, *b);
    }
    if (part.kind() == Formula::Kind::FreezeNext) {
      if (auto b = try_basic(acc)) return fold_into_guard(part, *b);
    }
    return Formula::conj(std::move(acc), std::move(part));
  }

  Formula parse_unary() {
    const Token& t = ts_.peek();
    switch (t.kind) {
      case Tok::LParen: {
        ts_.next();
        Formula f = parse_or();
        ts_.expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Bang:
        return Formula::basic(parse_negated());
      case Tok::Ident:
        break;
      default:
        throw ParseError(t.span, "expected a formula, found '" +
                                     TokenStream::describe(t) + "'");
    }
    if (t.text == "tt") {
      ts_.next();
      return Formula::tt();
    }
    if (t.text == "ff") {
      ts_.next();
      return Formula::basic(Basic::ff());
    }
    if (t.text == "up") {
      ts_.next();
      return Formula::basic(Basic::up(parse_register()));
    }
    if (t.text == "X") {
      ts_.next();
      return Formula::next(parse_unary());
    }
    if (t.text == "down") {
      ts_.next();
      const RegSet regs = parse_reg_set();
      const Token& x = ts_.expect(Tok::Ident, "'X'");
      if (x.text != "X")
        throw ParseError(x.span, "'down' must be followed by 'X'");
      Formula body = parse_unary();
      // `down {} X psi` is plain `X psi`; an empty freeze set is only ever
      // implicit, keeping the rendering unambiguous.
      if (regs == 0) return Formula::next(std::move(body));
      return Formula::freeze_next(regs, std::move(body), Basic::tt());
    }
    // A plain name: declared atom, else a variable reference.
    ts_.next();
    if (auto idx = atom_index(t.text)) return Formula::basic(Basic::atom(*idx));
    if (reserved_words().count(t.text))
      throw ParseError(t.span, "'" + t.text + "' is a reserved word");
    if (uses_ == nullptr)
      throw ParseError(t.span, "unknown atom '" + t.text + "'");
    uses_->push_back(VarUse{t.text, t.span});
    return Formula::var(t.text);
  }

  Basic parse_basic_unary() {
    const Token& t = ts_.peek();
    if (t.kind == Tok::LParen) {
      ts_.next();
      Basic b = parse_basic_only();
      ts_.expect(Tok::RParen, "')'");
      return b;
    }
    if (t.kind == Tok::Bang) return parse_negated();
    if (t.kind != Tok::Ident)
      throw ParseError(t.span, "expected a basic formula, found '" +
                                   TokenStream::describe(t) + "'");
    if (t.text == "tt") { ts_.next(); return Basic::tt(); }
    if (t.text == "ff") { ts_.next(); return Basic::ff(); }
    if (t.text == "up") { ts_.next(); return Basic::up(parse_register()); }
    if (auto idx = atom_index(t.text)) {
      ts_.next();
      return Basic::atom(*idx);
    }
    throw ParseError(t.span, "unknown atom '" + t.text + "'");
  }

  Basic parse_negated() {
    const Token& bang = ts_.expect(Tok::Bang, "'!'");
    const Token& t = ts_.peek();
    if (t.kind != Tok::Ident)
      throw ParseError(bang.span, "negation applies only to atoms and 'up r'");
    if (t.text == "up") {
      ts_.next();
      return Basic::neg_up(parse_register());
    }
    if (auto idx = atom_index(t.text)) {
      ts_.next();
      return Basic::neg_atom(*idx);
    }
    throw ParseError(t.span,
                     "negation applies only to atoms and 'up r'; '" + t.text +
                         "' is not a declared atom");
  }

  int parse_register() {
    const Token& t = ts_.expect(Tok::Int, "a register index");
    if (t.num < 1 || t.num > k_)
      throw ParseError(t.span, "register " + t.text + " out of range [1," +
                                   std::to_string(k_) + "]");
    return static_cast<int>(t.num);
  }

  RegSet parse_reg_set() {
    ts_.expect(Tok::LBrace, "'{'");
    RegSet regs = 0;
    if (!ts_.accept(Tok::RBrace)) {
      regs = reg_set_add(regs, parse_register());
      while (ts_.accept(Tok::Comma)) regs = reg_set_add(regs, parse_register());
      ts_.expect(Tok::RBrace, "'}'");
    }
    return regs;
  }

  std::optional<int> atom_index(const std::string& name) const {
    auto it = std::find(atoms_.begin(), atoms_.end(), name);
    if (it == atoms_.end()) return std::nullopt;
    return static_cast<int>(it - atoms_.begin());
  }

  TokenStream& ts_;
  const std::vector<std::string>& atoms_;
  int k_;
  std::vector<VarUse>* uses_;
};

// ---------------------------------------------------------------------------
// Shared header handling.

std::string parse_name_token(TokenStream& ts, const std::string& what) {
  const Token& t = ts.peek();
  if (t.kind == Tok::String) {
    ts.next();
    if (t.text.empty()) throw ParseError(t.span, "empty quoted name");
    return t.text;
  }
  if (t.kind == Tok::Ident) {
    if (reserved_words().count(t.text))
      throw ParseError(t.span, "'" + t.text + "' is a reserved word; quote it");
    ts.next();
    return t.text;
  }
  throw ParseError(t.span, "expected " + what + ", found '" +
                               TokenStream::describe(t) + "'");
}

std::vector<std::string> parse_atom_list(TokenStream& ts) {
  std::vector<std::string> atoms;
  while (ts.peek().kind == Tok::Ident) {
    const Token& t = ts.next();
    if (reserved_words().count(t.text))
      throw ParseError(t.span, "'" + t.text + "' is a reserved word");
    if (std::find(atoms.begin(), atoms.end(), t.text) != atoms.end())
      throw ParseError(t.span, "duplicate atom '" + t.text + "'");
    atoms.push_back(t.text);
  }
  if (atoms.size() > static_cast<std::size_t>(kMaxAtoms))
    throw ParseError(ts.peek().span, "too many atomic propositions");
  return atoms;
}

int parse_register_count(TokenStream& ts) {
  const Token& t = ts.expect(Tok::Int, "a register count");
  if (t.num < 0 || t.num > kMaxRegisters)
    throw ParseError(t.span, "register count out of range [0," +
                                 std::to_string(kMaxRegisters) + "]");
  return static_cast<int>(t.num);
}

std::string quoted_if_needed(const std::string& name) {
  if (is_bare_name(name)) return name;
  if (name.find('"') != std::string::npos ||
      name.find('\n') != std::string::npos)
    throw Error("name cannot be serialized: " + name);
  return "\"" + name + "\"";
}

std::string reg_set_text(RegSet regs) {
  std::string out = "{";
  bool first = true;
  for (int r = 1; r <= kMaxRegisters; ++r) {
    if (!reg_set_contains(regs, r)) continue;
    if (!first) out += ',';
    out += std::to_string(r);
    first = false;
  }
  out += '}';
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// System format.

EquationSystem parse_system(std::string_view text) {
  TokenStream ts(text);
  EquationSystem s;
  bool have_atoms = false, have_registers = false, have_omega = false,
       have_main = false;
  SourceSpan main_span{};
  std::vector<std::pair<std::string, SourceSpan>> omega_decls;
  std::vector<VarUse> uses;

  ts.skip_newlines();
  while (ts.peek().kind == Tok::Ident) {
    const std::string& word = ts.peek().text;
    if (word == "atoms") {
      if (have_atoms)
        throw ParseError(ts.peek().span, "duplicate 'atoms' header");
      ts.next();
      s.atoms = parse_atom_list(ts);
      have_atoms = true;
    } else if (word == "registers") {
      if (have_registers)
        throw ParseError(ts.peek().span, "duplicate 'registers' header");
      ts.next();
      s.register_count = parse_register_count(ts);
      have_registers = true;
    } else if (word == "omega") {
      if (have_omega)
        throw ParseError(ts.peek().span, "duplicate 'omega' header");
      ts.next();
      while (ts.peek().kind == Tok::Ident || ts.peek().kind == Tok::String) {
        SourceSpan span = ts.peek().span;
        std::string name = parse_name_token(ts, "a variable name");
        omega_decls.emplace_back(std::move(name), span);
      }
      have_omega = true;
    } else if (word == "main") {
      if (have_main)
        throw ParseError(ts.peek().span, "duplicate 'main' header");
      ts.next();
      main_span = ts.peek().span;
      s.main_var = parse_name_token(ts, "a variable name");
      have_main = true;
    } else {
      break;  // first equation
    }
    ts.expect_end_of_line();
    ts.skip_newlines();
  }

  if (!have_registers)
    throw ParseError(ts.peek().span, "missing 'registers' header");
  if (!have_main) throw ParseError(ts.peek().span, "missing 'main' header");

  std::unordered_map<std::string, SourceSpan> equation_spans;
  while (!ts.at_end()) {
    const Token& name_tok = ts.peek();
    SourceSpan span = name_tok.span;
    std::string name = parse_name_token(ts, "a variable name");
    if (std::find(s.atoms.begin(), s.atoms.end(), name) != s.atoms.end())
      throw ParseError(span, "'" + name + "' is declared as an atom");
    if (equation_spans.count(name))
      throw ParseError(span, "duplicate equation for variable '" + name + "'");
    ts.expect(Tok::Equals, "'='");
    FormulaParser fp(ts, s.atoms, s.register_count, &uses);
    Formula rhs = fp.parse_rhs();
    ts.expect_end_of_line();
    ts.skip_newlines();
    equation_spans.emplace(name, span);
    s.vars.push_back(name);
    s.sigma.emplace(std::move(name), std::move(rhs));
  }

  if (s.vars.empty())
    throw ParseError(ts.peek().span, "system declares no equations");
  for (const auto& [name, span] : omega_decls) {
    if (!s.has_var(name))
      throw ParseError(span, "unknown variable '" + name + "'");
    if (std::find(s.omega_vars.begin(), s.omega_vars.end(), name) !=
        s.omega_vars.end())
      throw ParseError(span, "duplicate omega declaration for '" + name + "'");
    s.omega_vars.push_back(name);
  }
  if (!s.has_var(s.main_var))
    throw ParseError(main_span, "unknown variable '" + s.main_var + "'");
  for (const auto& use : uses)
    if (!s.has_var(use.name))
      throw ParseError(use.span, "unknown variable '" + use.name + "'");

  s.validate();
  return s;
}

std::string serialize_system(const EquationSystem& s) {
  std::ostringstream os;
  os << "atoms";
  for (const auto& a : s.atoms) os << ' ' << a;
  os << '\n';
  os << "registers " << s.register_count << '\n';
  os << "omega";
  for (const auto& v : s.omega_vars) os << ' ' << quoted_if_needed(v);
  os << '\n';
  os << "main " << quoted_if_needed(s.main_var) << '\n';
  for (const auto& v : s.vars)
    os << quoted_if_needed(v) << " = " << to_text(s.rhs(v), s.atoms) << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// Automaton format.

BuchiRa parse_bra(std::string_view text) {
  TokenStream ts(text);
  BuchiRa a;
  bool have_atoms = false, have_registers = false, have_initial = false,
       have_accepting = false;
  SourceSpan initial_span{};
  std::vector<std::pair<std::string, SourceSpan>> accepting_decls;
  std::unordered_set<std::string> declared;

  ts.skip_newlines();
  while (ts.peek().kind == Tok::Ident &&
         (ts.peek().text == "atoms" || ts.peek().text == "registers" ||
          ts.peek().text == "states" || ts.peek().text == "initial" ||
          ts.peek().text == "accepting")) {
    const std::string word = ts.peek().text;
    if (word == "atoms") {
      if (have_atoms)
        throw ParseError(ts.peek().span, "duplicate 'atoms' header");
      ts.next();
      a.atoms = parse_atom_list(ts);
      have_atoms = true;
    } else if (word == "registers") {
      if (have_registers)
        throw ParseError(ts.peek().span, "duplicate 'registers' header");
      ts.next();
      a.register_count = parse_register_count(ts);
      have_registers = true;
    } else if (word == "states") {
      ts.next();
      while (ts.peek().kind == Tok::Ident || ts.peek().kind == Tok::String) {
        SourceSpan span = ts.peek().span;
        std::string name = parse_name_token(ts, "a state name");
        if (!declared.insert(name).second)
          throw ParseError(span, "duplicate state '" + name + "'");
        a.states.push_back(std::move(name));
      }
    } else if (word == "initial") {
      if (have_initial)
        throw ParseError(ts.peek().span, "duplicate 'initial' header");
      ts.next();
      initial_span = ts.peek().span;
      a.initial = parse_name_token(ts, "a state name");
      have_initial = true;
    } else {  // accepting
      if (have_accepting)
        throw ParseError(ts.peek().span, "duplicate 'accepting' header");
      ts.next();
      while (ts.peek().kind == Tok::Ident || ts.peek().kind == Tok::String) {
        SourceSpan span = ts.peek().span;
        accepting_decls.emplace_back(parse_name_token(ts, "a state name"),
                                     span);
      }
      have_accepting = true;
    }
    ts.expect_end_of_line();
    ts.skip_newlines();
  }

  if (!have_registers)
    throw ParseError(ts.peek().span, "missing 'registers' header");
  if (a.states.empty())
    throw ParseError(ts.peek().span, "missing 'states' header");
  if (!have_initial)
    throw ParseError(ts.peek().span, "missing 'initial' header");
  if (!declared.count(a.initial))
    throw ParseError(initial_span, "unknown state '" + a.initial + "'");
  for (const auto& [name, span] : accepting_decls) {
    if (!declared.count(name))
      throw ParseError(span, "unknown state '" + name + "'");
    if (std::find(a.accepting.begin(), a.accepting.end(), name) !=
        a.accepting.end())
      throw ParseError(span, "duplicate accepting declaration for '" + name +
                                 "'");
    a.accepting.push_back(name);
  }

  while (!ts.at_end()) {
    SourceSpan src_span = ts.peek().span;
    std::string src = parse_name_token(ts, "a state name");
    if (!declared.count(src))
      throw ParseError(src_span, "unknown state '" + src + "'");
    ts.expect(Tok::ArrowOpen, "'--('");
    TransitionRule rule;
    rule.source = std::move(src);
    SourceSpan guard_span = ts.peek().span;
    if (ts.peek().kind == Tok::Ident && ts.peek().text == "eps") {
      ts.next();
      rule.guard = std::nullopt;
    } else {
      FormulaParser fp(ts, a.atoms, a.register_count, nullptr);
      rule.guard = fp.parse_basic_only();
    }
    ts.expect(Tok::Comma, "','");
    {
      ts.expect(Tok::LBrace, "'{'");
      RegSet regs = 0;
      if (ts.peek().kind != Tok::RBrace) {
        while (true) {
          const Token& t = ts.expect(Tok::Int, "a register index");
          if (t.num < 1 || t.num > a.register_count)
            throw ParseError(t.span, "register " + t.text +
                                         " out of range [1," +
                                         std::to_string(a.register_count) + "]");
          regs = reg_set_add(regs, static_cast<int>(t.num));
          if (!ts.accept(Tok::Comma)) break;
        }
      }
      ts.expect(Tok::RBrace, "'}'");
      rule.update = regs;
    }
    ts.expect(Tok::ArrowClose, "')-->'");
    SourceSpan tgt_span = ts.peek().span;
    rule.target = parse_name_token(ts, "a state name");
    if (!declared.count(rule.target))
      throw ParseError(tgt_span, "unknown state '" + rule.target + "'");
    if (rule.is_epsilon() && rule.update != 0)
      throw ParseError(guard_span,
                       "epsilon rules must have an empty update set");
    ts.expect_end_of_line();
    ts.skip_newlines();
    a.rules.push_back(std::move(rule));
  }

  a.validate();
  return a;
}

std::string serialize_bra(const BuchiRa& a) {
  std::ostringstream os;
  os << "atoms";
  for (const auto& at : a.atoms) os << ' ' << at;
  os << '\n';
  os << "registers " << a.register_count << '\n';
  os << "states";
  for (const auto& q : a.states) os << ' ' << quoted_if_needed(q);
  os << '\n';
  os << "initial " << quoted_if_needed(a.initial) << '\n';
  os << "accepting";
  for (const auto& q : a.accepting) os << ' ' << quoted_if_needed(q);
  os << '\n';
  for (const auto& r : a.rules) {
    os << quoted_if_needed(r.source) << " --(";
    if (r.is_epsilon())
      os << "eps";
    else
      os << to_text(*r.guard, a.atoms);
    os << ", " << reg_set_text(r.update) << ")--> "
       << quoted_if_needed(r.target) << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Lasso format.

namespace {

Letter parse_letter(TokenStream& ts, const std::vector<std::string>& atoms) {
  ts.expect(Tok::LParen, "'('");
  ts.expect(Tok::LBrace, "'{'");
  Letter letter;
  if (ts.peek().kind != Tok::RBrace) {
    while (true) {
      const Token& t = ts.expect(Tok::Ident, "an atom name");
      auto it = std::find(atoms.begin(), atoms.end(), t.text);
      if (it == atoms.end())
        throw ParseError(t.span, "unknown atom '" + t.text + "'");
      letter.atoms |= AtomSet{1} << (it - atoms.begin());
      if (!ts.accept(Tok::Comma)) break;
    }
  }
  ts.expect(Tok::RBrace, "'}'");
  ts.expect(Tok::Comma, "','");
  const Token& d = ts.peek();
  if (d.kind == Tok::Int) {
    ts.next();
    letter.datum = DataValue::integer(d.num);
  } else if (d.kind == Tok::Ident && d.text == "_") {
    ts.next();
    letter.datum = DataValue::bottom();
  } else {
    throw ParseError(d.span, "malformed datum; expected an integer or '_'");
  }
  ts.expect(Tok::RParen, "')'");
  return letter;
}

}  // namespace

LassoWord parse_lasso(std::string_view text,
                      const std::vector<std::string>& atoms) {
  TokenStream ts(text);
  LassoWord w;
  ts.skip_newlines();
  const Token& p = ts.expect(Tok::Ident, "'prefix'");
  if (p.text != "prefix") throw ParseError(p.span, "expected 'prefix'");
  ts.skip_newlines();
  while (ts.peek().kind == Tok::LParen) {
    w.prefix.push_back(parse_letter(ts, atoms));
    ts.skip_newlines();
  }
  ts.expect(Tok::Semi, "';'");
  ts.skip_newlines();
  const Token& q = ts.expect(Tok::Ident, "'period'");
  if (q.text != "period") throw ParseError(q.span, "expected 'period'");
  ts.skip_newlines();
  while (ts.peek().kind == Tok::LParen) {
    w.period.push_back(parse_letter(ts, atoms));
    ts.skip_newlines();
  }
  if (w.period.empty())
    throw ParseError(ts.peek().span, "empty period");
  ts.skip_newlines();
  if (!ts.at_end())
    throw ParseError(ts.peek().span, "trailing input after period");
  return w;
}

std::string serialize_lasso(const LassoWord& w,
                            const std::vector<std::string>& atoms) {
  auto letter_text = [&](const Letter& letter) {
    std::string out = "({";
    bool first = true;
    for (std::size_t n = 0; n < atoms.size(); ++n) {
      if (!letter.has_atom(static_cast<int>(n))) continue;
      if (!first) out += ',';
      out += atoms[n];
      first = false;
    }
    out += "}," + to_string(letter.datum) + ")";
    return out;
  };
  std::string out = "prefix";
  for (const auto& l : w.prefix) out += " " + letter_text(l);
  out += " ; period";
  for (const auto& l : w.period) out += " " + letter_text(l);
  out += "\n";
  return out;
}

std::string bra_to_dot(const BuchiRa& a) {
  auto esc = [](const std::string& s) {
    std::string out;
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out;
  };
  std::ostringstream os;
  os << "digraph bra {\n  rankdir=LR;\n  init [shape=point];\n";
  for (const auto& q : a.states)
    os << "  \"" << esc(q) << "\" [shape="
       << (a.is_accepting(q) ? "doublecircle" : "circle") << "];\n";
  os << "  init -> \"" << esc(a.initial) << "\";\n";
  for (const auto& r : a.rules) {
    std::string label = r.is_epsilon() ? "eps" : to_text(*r.guard, a.atoms);
    label += ", " + reg_set_text(r.update);
    os << "  \"" << esc(r.source) << "\" -> \"" << esc(r.target)
       << "\" [label=\"" << esc(label) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace mubra
