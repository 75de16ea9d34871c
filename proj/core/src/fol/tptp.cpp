#include "nnsel/fol/tptp.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "nnsel/error.hpp"
#include "nnsel/fol/clausify.hpp"
#include "nnsel/fol/formula.hpp"

namespace nnsel::fol {

namespace {

enum class Tok {
  Lower, Upper, Dollar, Quoted, Number,
  LParen, RParen, LBracket, RBracket, Comma, Dot, Colon,
  Or, And, Not, Eq, Neq, Implies, RevImplies, Iff, Xor, Nor, Nand, Forall, Exists,
  End
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      Token t;
      t.line = line_;
      t.col = col_;
      if (pos_ >= src_.size()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      char c = src_[pos_];
      if (std::islower(static_cast<unsigned char>(c))) {
        t.kind = Tok::Lower;
        t.text = word();
      } else if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Tok::Upper;
        t.text = word();
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = Tok::Number;
        t.text = word();
      } else if (c == '$') {
        advance();
        t.kind = Tok::Dollar;
        t.text = "$" + word();
      } else if (c == '\'') {
        t.kind = Tok::Quoted;
        t.text = quoted();
      } else {
        t.kind = punct(t.text);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  bool starts_with(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (starts_with("/*")) {
        std::size_t l = line_, cl = col_;
        advance();
        advance();
        while (pos_ < src_.size() && !starts_with("*/")) advance();
        if (pos_ >= src_.size()) throw ParseError("unterminated comment", l, cl);
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  std::string word() {
    std::string s;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') break;
      s += c;
      advance();
    }
    return s;
  }

  std::string quoted() {
    std::size_t l = line_, cl = col_;
    advance();
    std::string s;
    while (pos_ < src_.size() && src_[pos_] != '\'') {
      if (src_[pos_] == '\\' && pos_ + 1 < src_.size()) advance();
      s += src_[pos_];
      advance();
    }
    if (pos_ >= src_.size()) throw ParseError("unterminated quoted atom", l, cl);
    advance();
    return s;
  }

  Tok punct(std::string& text) {
    static const std::pair<std::string_view, Tok> table[] = {
        {"<=>", Tok::Iff}, {"<~>", Tok::Xor}, {"=>", Tok::Implies}, {"<=", Tok::RevImplies},
        {"~|", Tok::Nor},  {"~&", Tok::Nand}, {"!=", Tok::Neq},     {"(", Tok::LParen},
        {")", Tok::RParen}, {"[", Tok::LBracket}, {"]", Tok::RBracket}, {",", Tok::Comma},
        {".", Tok::Dot},   {":", Tok::Colon}, {"|", Tok::Or},       {"&", Tok::And},
        {"~", Tok::Not},   {"=", Tok::Eq},    {"!", Tok::Forall},   {"?", Tok::Exists},
    };
    for (const auto& [s, k] : table) {
      if (starts_with(s)) {
        text = std::string(s);
        for (std::size_t i = 0; i < s.size(); ++i) advance();
        return k;
      }
    }
    throw ParseError(std::string("unexpected character '") + src_[pos_] + "'", line_, col_);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

/// Term before it is known whether the head is a predicate or a function.
struct RawTerm {
  std::string name;
  bool is_var = false;
  std::vector<RawTerm> args;
  std::size_t line = 0;
  std::size_t col = 0;
};

struct Annotated {
  std::string name;
  std::string role;
  bool is_cnf = false;
  std::vector<Literal> clause;  // cnf
  bool clause_is_true = false;  // cnf clause contained $true
  Formula formula;              // fof
};

class Parser {
 public:
  Parser(std::vector<Token> toks, Signature& sig) : toks_(std::move(toks)), sig_(sig) {}

  bool at_end() const { return peek().kind == Tok::End; }

  /// Returns the include path when the next unit is an include directive.
  std::optional<std::string> try_include() {
    if (peek().kind != Tok::Lower || peek().text != "include") return std::nullopt;
    next();
    expect(Tok::LParen, "'('");
    const Token& path = next();
    if (path.kind != Tok::Quoted) fail("expected quoted include path", path);
    if (peek().kind == Tok::Comma) {
      next();
      skip_balanced_until(Tok::RParen);
    }
    expect(Tok::RParen, "')'");
    expect(Tok::Dot, "'.'");
    return path.text;
  }

  Annotated annotated() {
    const Token& kw = next();
    if (kw.kind != Tok::Lower || (kw.text != "cnf" && kw.text != "fof")) {
      fail("expected 'cnf', 'fof' or 'include'", kw);
    }
    Annotated a;
    a.is_cnf = kw.text == "cnf";
    vars_.clear();
    expect(Tok::LParen, "'('");
    const Token& name = next();
    if (name.kind != Tok::Lower && name.kind != Tok::Number && name.kind != Tok::Quoted &&
        name.kind != Tok::Upper) {
      fail("expected formula name", name);
    }
    a.name = name.text;
    expect(Tok::Comma, "','");
    const Token& role = next();
    if (role.kind != Tok::Lower) fail("expected formula role", role);
    static const char* kRoles[] = {"axiom",   "hypothesis", "definition", "lemma",
                                   "theorem", "conjecture", "negated_conjecture"};
    bool known = false;
    for (const char* r : kRoles) known = known || role.text == r;
    if (!known) fail("unknown role '" + role.text + "'", role);
    a.role = role.text;
    expect(Tok::Comma, "','");
    if (a.is_cnf) {
      cnf_formula(a);
    } else {
      a.formula = fof_formula();
    }
    if (peek().kind == Tok::Comma) {
      next();
      skip_balanced_until(Tok::RParen);
    }
    expect(Tok::RParen, "')'");
    expect(Tok::Dot, "'.'");
    return a;
  }

  std::vector<Literal> bare_clause() {
    Annotated a;
    vars_.clear();
    cnf_formula(a);
    if (!at_end()) fail("trailing input after clause", peek());
    return a.clause;
  }

 private:
  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  [[noreturn]] void fail(const std::string& msg, const Token& t) const {
    throw ParseError(msg, t.line, t.col);
  }
  void expect(Tok k, const char* what) {
    const Token& t = peek();
    if (t.kind != k) {
      fail(std::string("expected ") + what + (t.kind == Tok::End ? " before end of input"
                                                                  : " but found '" + t.text + "'"),
           t);
    }
    next();
  }
  void skip_balanced_until(Tok closer) {
    int depth = 0;
    while (!at_end()) {
      Tok k = peek().kind;
      if (depth == 0 && k == closer) return;
      if (k == Tok::LParen || k == Tok::LBracket) ++depth;
      if (k == Tok::RParen || k == Tok::RBracket) --depth;
      next();
    }
    fail("unbalanced annotation", peek());
  }

  std::uint32_t var_number(const std::string& name) {
    auto [it, inserted] = vars_.try_emplace(name, static_cast<std::uint32_t>(vars_.size() + 1));
    return it->second;
  }

  RawTerm raw_term() {
    const Token& t = next();
    RawTerm r;
    r.line = t.line;
    r.col = t.col;
    r.name = t.text;
    if (t.kind == Tok::Upper) {
      r.is_var = true;
      return r;
    }
    if (t.kind != Tok::Lower && t.kind != Tok::Number && t.kind != Tok::Quoted &&
        t.kind != Tok::Dollar) {
      fail(t.kind == Tok::End ? "unexpected end of input" : "expected term but found '" + t.text + "'",
           t);
    }
    if (peek().kind == Tok::LParen) {
      next();
      r.args.push_back(raw_term());
      while (peek().kind == Tok::Comma) {
        next();
        r.args.push_back(raw_term());
      }
      expect(Tok::RParen, "')'");
    }
    return r;
  }

  Term to_term(const RawTerm& r) {
    if (r.is_var) return Term::variable(var_number(r.name));
    std::vector<Term> args;
    args.reserve(r.args.size());
    for (const auto& a : r.args) args.push_back(to_term(a));
    return Term::app(intern(r, SymbolKind::Function), std::move(args));
  }

  SymbolId intern(const RawTerm& r, SymbolKind kind) {
    try {
      return sig_.intern(r.name, kind, static_cast<std::uint32_t>(r.args.size()));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), r.line, r.col);
    }
  }

  Term to_atom(const RawTerm& r) {
    if (r.is_var) throw ParseError("variable used as an atom", r.line, r.col);
    std::vector<Term> args;
    for (const auto& a : r.args) args.push_back(to_term(a));
    return Term::app(intern(r, SymbolKind::Predicate), std::move(args));
  }

  Term equality_atom(const RawTerm& lhs, const RawTerm& rhs) {
    RawTerm eq;
    eq.name = "=";
    eq.line = lhs.line;
    eq.col = lhs.col;
    eq.args = {lhs, rhs};
    SymbolId id = intern(eq, SymbolKind::Predicate);
    return Term::app(id, {to_term(lhs), to_term(rhs)});
  }

  /// Atomic formula; returns polarity and atom, or nullopt for $true/$false
  /// with `truth` set.
  std::optional<Literal> atomic(bool& truth) {
    const Token& t = peek();
    if (t.kind == Tok::Dollar && (t.text == "$true" || t.text == "$false") &&
        peek(1).kind != Tok::Eq && peek(1).kind != Tok::Neq) {
      next();
      truth = t.text == "$true";
      return std::nullopt;
    }
    RawTerm lhs = raw_term();
    if (peek().kind == Tok::Eq || peek().kind == Tok::Neq) {
      bool positive = next().kind == Tok::Eq;
      RawTerm rhs = raw_term();
      return Literal{positive, equality_atom(lhs, rhs)};
    }
    return Literal{true, to_atom(lhs)};
  }

  void cnf_formula(Annotated& a) {
    if (peek().kind == Tok::LParen) {
      next();
      cnf_disjunction(a);
      expect(Tok::RParen, "')'");
    } else {
      cnf_disjunction(a);
    }
  }

  void cnf_disjunction(Annotated& a) {
    cnf_literal(a);
    while (peek().kind == Tok::Or) {
      next();
      cnf_literal(a);
    }
  }

  void cnf_literal(Annotated& a) {
    if (peek().kind == Tok::LParen) {
      next();
      cnf_disjunction(a);
      expect(Tok::RParen, "')'");
      return;
    }
    bool negated = false;
    if (peek().kind == Tok::Not) {
      next();
      negated = true;
    }
    bool truth = false;
    auto lit = atomic(truth);
    if (!lit) {
      if (truth != negated) a.clause_is_true = true;
      return;
    }
    if (negated) lit->positive = !lit->positive;
    a.clause.push_back(std::move(*lit));
  }

  Formula fof_formula() {
    Formula lhs = fof_unitary();
    Tok k = peek().kind;
    if (k == Tok::And || k == Tok::Or) {
      std::vector<Formula> parts{std::move(lhs)};
      while (peek().kind == k) {
        next();
        parts.push_back(fof_unitary());
      }
      return Formula::make(k == Tok::And ? Formula::Kind::And : Formula::Kind::Or, std::move(parts));
    }
    auto binary = [&](Formula::Kind kind, bool swap) {
      next();
      Formula rhs = fof_unitary();
      if (swap) return Formula::make(kind, {std::move(rhs), std::move(lhs)});
      return Formula::make(kind, {std::move(lhs), std::move(rhs)});
    };
    switch (k) {
      case Tok::Implies: return binary(Formula::Kind::Implies, false);
      case Tok::RevImplies: return binary(Formula::Kind::Implies, true);
      case Tok::Iff: return binary(Formula::Kind::Iff, false);
      case Tok::Xor: return binary(Formula::Kind::Xor, false);
      case Tok::Nor: return binary(Formula::Kind::Nor, false);
      case Tok::Nand: return binary(Formula::Kind::Nand, false);
      default: return lhs;
    }
  }

  Formula fof_unitary() {
    const Token& t = peek();
    if (t.kind == Tok::Forall || t.kind == Tok::Exists) {
      next();
      expect(Tok::LBracket, "'['");
      std::vector<std::uint32_t> bound;
      for (;;) {
        const Token& v = next();
        if (v.kind != Tok::Upper) fail("expected variable in quantifier", v);
        bound.push_back(var_number(v.text));
        if (peek().kind == Tok::Comma) {
          next();
          continue;
        }
        break;
      }
      expect(Tok::RBracket, "']'");
      expect(Tok::Colon, "':'");
      Formula body = fof_unitary();
      return Formula::quantified(t.kind == Tok::Forall ? Formula::Kind::Forall : Formula::Kind::Exists,
                                 std::move(bound), std::move(body));
    }
    if (t.kind == Tok::Not) {
      next();
      return Formula::make(Formula::Kind::Not, {fof_unitary()});
    }
    if (t.kind == Tok::LParen) {
      next();
      Formula f = fof_formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    bool truth = false;
    auto lit = atomic(truth);
    if (!lit) return Formula::make(truth ? Formula::Kind::True : Formula::Kind::False, {});
    Formula f = Formula::make_atom(lit->atom);
    if (!lit->positive) return Formula::make(Formula::Kind::Not, {std::move(f)});
    return f;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Signature& sig_;
  std::unordered_map<std::string, std::uint32_t> vars_;
};

struct Collected {
  std::vector<Annotated> units;
};

void collect(std::string_view text, Signature& sig, const IncludeLoader& loader, int depth,
             Collected& out) {
  Parser p(Lexer(text).run(), sig);
  while (!p.at_end()) {
    if (auto path = p.try_include()) {
      if (!loader) throw Error("include('" + *path + "') with no include loader");
      if (depth > 0) throw Error("nested include of '" + *path + "' is not supported");
      collect(loader(*path), sig, loader, depth + 1, out);
      continue;
    }
    out.units.push_back(p.annotated());
  }
}

}  // namespace

Problem parse_tptp(std::string_view text, std::string name, const IncludeLoader& loader) {
  Problem prob;
  prob.name = std::move(name);
  Collected col;
  collect(text, prob.signature, loader, 0, col);

  std::vector<std::pair<std::uint32_t, std::vector<Literal>>> axioms;
  std::vector<std::pair<std::uint32_t, std::vector<Literal>>> negated;
  std::vector<Formula> conjectures;
  std::uint32_t first_conjecture = 0;

  for (std::uint32_t u = 0; u < col.units.size(); ++u) {
    Annotated& a = col.units[u];
    prob.units.push_back(InputUnit{a.name, a.role});
    const bool neg = a.role == "negated_conjecture";
    if (a.role == "conjecture") {
      if (a.is_cnf) throw Error("cnf formula '" + a.name + "' cannot have role conjecture");
      if (conjectures.empty()) first_conjecture = u;
      conjectures.push_back(std::move(a.formula));
      continue;
    }
    auto& dest = neg ? negated : axioms;
    if (a.is_cnf) {
      if (!a.clause_is_true) dest.emplace_back(u, std::move(a.clause));
    } else {
      for (auto& lits : clausify(a.formula, false, prob.signature)) dest.emplace_back(u, std::move(lits));
    }
  }
  if (!conjectures.empty()) {
    Formula goal = conjectures.size() == 1 ? std::move(conjectures.front())
                                           : Formula::make(Formula::Kind::And, std::move(conjectures));
    for (auto& lits : clausify(goal, true, prob.signature)) {
      negated.emplace_back(first_conjecture, std::move(lits));
    }
  }

  std::uint32_t next_id = 0;
  auto make = [&](std::uint32_t origin, std::vector<Literal> lits, ClauseRole role) {
    Clause c;
    c.id = static_cast<ClauseId>(next_id);
    c.age = next_id++;
    c.literals = std::move(lits);
    c.role = role;
    c.rule = "input";
    c.from_goal = role == ClauseRole::NegatedConjecture;
    c.origin = origin;
    return c;
  };
  for (auto& [u, lits] : axioms) prob.axioms.push_back(make(u, std::move(lits), ClauseRole::Axiom));
  for (auto& [u, lits] : negated) {
    prob.negated_conjecture.push_back(make(u, std::move(lits), ClauseRole::NegatedConjecture));
  }
  return prob;
}

std::vector<Literal> parse_clause(std::string_view text, Signature& sig) {
  Parser p(Lexer(text).run(), sig);
  return p.bare_clause();
}

Problem load_tptp_file(const std::string& path) {
  namespace fs = std::filesystem;
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error("cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const fs::path file(path);
  const fs::path base = file.parent_path();
  IncludeLoader loader = [&](const std::string& inc) {
    fs::path candidate = base / inc;
    if (!fs::exists(candidate) && std::getenv("TPTP")) candidate = fs::path(std::getenv("TPTP")) / inc;
    return slurp(candidate);
  };
  return parse_tptp(slurp(file), file.stem().string(), loader);
}

}  // namespace nnsel::fol
