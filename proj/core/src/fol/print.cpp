#include "nnsel/fol/print.hpp"

#include <sstream>

namespace nnsel::fol {

namespace {

void term_tokens(const Signature& sig, const Term& t, std::vector<std::string>& out) {
  if (t.is_var()) {
    out.push_back("V" + std::to_string(t.var()));
    return;
  }
  out.push_back(sig[t.functor()].name);
  if (t.args().empty()) return;
  out.emplace_back("(");
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i > 0) out.emplace_back(",");
    term_tokens(sig, t.args()[i], out);
  }
  out.emplace_back(")");
}

bool is_equality(const Signature& sig, const Literal& l) {
  return !l.atom.is_var() && sig[l.predicate()].name == "=" && l.args().size() == 2;
}

void literal_tokens(const Signature& sig, const Literal& l, std::vector<std::string>& out) {
  if (is_equality(sig, l)) {
    term_tokens(sig, l.args()[0], out);
    out.emplace_back(l.positive ? "=" : "!=");
    term_tokens(sig, l.args()[1], out);
    return;
  }
  if (!l.positive) out.emplace_back("~");
  term_tokens(sig, l.atom, out);
}

std::string join(const std::vector<std::string>& tokens) {
  std::string s;
  for (const auto& tok : tokens) {
    if (tok == "|" || tok == "=" || tok == "!=") {
      s += ' ';
      s += tok;
      s += ' ';
    } else {
      s += tok;
    }
  }
  return s;
}

}  // namespace

std::vector<std::string> clause_tokens(const Signature& sig, const std::vector<Literal>& literals) {
  std::vector<std::string> out;
  if (literals.empty()) {
    out.emplace_back("$false");
    return out;
  }
  for (std::size_t i = 0; i < literals.size(); ++i) {
    if (i > 0) out.emplace_back("|");
    literal_tokens(sig, literals[i], out);
  }
  return out;
}

std::string to_string(const Signature& sig, const Term& t) {
  std::vector<std::string> toks;
  term_tokens(sig, t, toks);
  return join(toks);
}

std::string to_string(const Signature& sig, const Literal& l) {
  std::vector<std::string> toks;
  literal_tokens(sig, l, toks);
  return join(toks);
}

std::string to_string(const Signature& sig, const std::vector<Literal>& literals) {
  return join(clause_tokens(sig, literals));
}

std::string print_problem(const Problem& p) {
  std::ostringstream os;
  std::vector<std::size_t> per_unit(p.units.size(), 0);
  for (const Clause* c : p.input_clauses()) {
    if (c->origin < per_unit.size()) ++per_unit[c->origin];
  }
  std::vector<std::size_t> seen(p.units.size(), 0);
  for (const Clause* c : p.input_clauses()) {
    std::string name = "c" + std::to_string(index(c->id));
    std::string role = c->role == ClauseRole::NegatedConjecture ? "negated_conjecture" : "axiom";
    if (c->origin < p.units.size()) {
      const InputUnit& u = p.units[c->origin];
      name = u.name;
      if (per_unit[c->origin] > 1) name += "_" + std::to_string(++seen[c->origin]);
      if (u.role == "hypothesis" && c->role == ClauseRole::Axiom) role = "hypothesis";
    }
    os << "cnf(" << name << ", " << role << ", (" << to_string(p.signature, c->literals) << ")).\n";
  }
  return os.str();
}

std::vector<const Clause*> Problem::input_clauses() const {
  std::vector<const Clause*> out;
  out.reserve(clause_count());
  for (const auto& c : axioms) out.push_back(&c);
  for (const auto& c : negated_conjecture) out.push_back(&c);
  return out;
}

}  // namespace nnsel::fol
