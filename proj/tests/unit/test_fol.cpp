#include <algorithm>
#include <functional>
#include <map>
#include <string>

#include "doctest.h"
#include "generators.hpp"
#include "nnsel/error.hpp"
#include "nnsel/fol/clause.hpp"
#include "nnsel/fol/parse_tree.hpp"
#include "nnsel/fol/print.hpp"
#include "nnsel/fol/tokenize.hpp"
#include "nnsel/fol/tptp.hpp"

using namespace nnsel;
using namespace nnsel::fol;

namespace {

std::string show(const Problem& p, const Clause& c) { return to_string(p.signature, c); }

std::string show(const Signature& sig, const std::vector<Literal>& lits) { return to_string(sig, lits); }

// Random propositional formula over atoms a0..a3 in TPTP syntax.
std::string random_prop_formula(test::Gen& g, int depth) {
  if (depth == 0 || g.below(4) == 0) return "a" + std::to_string(g.below(4));
  switch (g.below(6)) {
    case 0:
      return "~(" + random_prop_formula(g, depth - 1) + ")";
    case 1:
      return "(" + random_prop_formula(g, depth - 1) + " & " + random_prop_formula(g, depth - 1) + ")";
    case 2:
      return "(" + random_prop_formula(g, depth - 1) + " | " + random_prop_formula(g, depth - 1) + ")";
    case 3:
      return "(" + random_prop_formula(g, depth - 1) + " => " + random_prop_formula(g, depth - 1) + ")";
    case 4:
      return "(" + random_prop_formula(g, depth - 1) + " <=> " + random_prop_formula(g, depth - 1) + ")";
    default:
      return "(" + random_prop_formula(g, depth - 1) + " <~> " + random_prop_formula(g, depth - 1) + ")";
  }
}

// Independent evaluator for the formula text produced above.
struct PropEval {
  const std::string& s;
  std::size_t i = 0;
  unsigned bits;

  void ws() {
    while (i < s.size() && s[i] == ' ') ++i;
  }
  bool primary() {
    ws();
    if (s[i] == '~') {
      ++i;
      return !primary();
    }
    if (s[i] == '(') {
      ++i;
      bool l = primary();
      ws();
      if (s[i] == ')') {
        ++i;
        return l;
      }
      std::string op;
      while (s[i] != ' ') op += s[i++];
      bool r = primary();
      ws();
      ++i;  // ')'
      if (op == "&") return l && r;
      if (op == "|") return l || r;
      if (op == "=>") return !l || r;
      if (op == "<=>") return l == r;
      return l != r;
    }
    ++i;  // 'a'
    return (bits >> (s[i++] - '0')) & 1U;
  }
};

bool clauses_true(const Problem& p, unsigned bits) {
  for (const Clause* c : p.input_clauses()) {
    bool sat = false;
    for (const Literal& l : c->literals) {
      const std::string& name = p.signature[l.predicate()].name;
      bool v = name == "$true" ? true : name == "$false" ? false : ((bits >> (name[1] - '0')) & 1U) != 0;
      if (v == l.positive) sat = true;
    }
    if (!sat) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("parse_tptp reads a CNF axiom directly") {
  Problem p = parse_tptp("cnf(c1, axiom, (p(X) | ~q(X))).");
  REQUIRE(p.axioms.size() == 1);
  CHECK(p.axioms[0].literals.size() == 2);
  CHECK(p.negated_conjecture.empty());
  CHECK(p.axioms[0].role == ClauseRole::Axiom);
  CHECK(p.axioms[0].parents.empty());
}

TEST_CASE("parse_tptp negates an atomic conjecture") {
  Problem p = parse_tptp("fof(g, conjecture, p(a)).");
  REQUIRE(p.negated_conjecture.size() == 1);
  CHECK(show(p, p.negated_conjecture[0]) == "~p(a)");
  CHECK(p.negated_conjecture[0].role == ClauseRole::NegatedConjecture);
}

TEST_CASE("parse_tptp passes negated_conjecture through") {
  Problem p = parse_tptp("cnf(g, negated_conjecture, (~p(a))).");
  REQUIRE(p.negated_conjecture.size() == 1);
  CHECK(show(p, p.negated_conjecture[0]) == "~p(a)");
}

TEST_CASE("parse_tptp reports the missing paren with a position") {
  try {
    parse_tptp("cnf(c1, axiom, (p(X,Y)).");
    FAIL("expected a syntax error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() > 1);
  }
}

TEST_CASE("parse_tptp rejects arity conflicts and unknown roles") {
  CHECK_THROWS_AS(parse_tptp("cnf(a, axiom, p(a)).\ncnf(b, axiom, p(a,b))."), Error);
  CHECK_THROWS_AS(parse_tptp("cnf(a, lemma_of_doom, p(a))."), Error);
}

TEST_CASE("clausify: implication, existential, negated universal") {
  Problem p1 = parse_tptp("fof(a, axiom, ![X]: (p(X) => q(X))).");
  REQUIRE(p1.axioms.size() == 1);
  CHECK(show(p1, p1.axioms[0]) == "~p(V1) | q(V1)");

  Problem p2 = parse_tptp("fof(a, axiom, ?[X]: p(X)).");
  REQUIRE(p2.axioms.size() == 1);
  CHECK(show(p2, p2.axioms[0]) == "p(sk1)");

  Problem p3 = parse_tptp("fof(g, conjecture, ![X]: p(X)).");
  REQUIRE(p3.negated_conjecture.size() == 1);
  CHECK(show(p3, p3.negated_conjecture[0]) == "~p(sk1)");
}

TEST_CASE("clausify: skolem functions depend on enclosing universals") {
  Problem p = parse_tptp("fof(a, axiom, ![X]: ?[Y]: r(X,Y)).");
  REQUIRE(p.axioms.size() == 1);
  CHECK(show(p, p.axioms[0]) == "r(V1,sk1(V1))");
}

TEST_CASE("clausify preserves propositional truth tables") {
  test::Gen g(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::string f = random_prop_formula(g, 4);
    Problem p = parse_tptp("fof(f, axiom, " + f + ").");
    for (const Clause* c : p.input_clauses()) {
      for (const Literal& l : c->literals) CHECK(l.args().empty());
    }
    for (unsigned bits = 0; bits < 16; ++bits) {
      PropEval e{f, 0, bits};
      INFO(f << " under " << bits);
      CHECK(e.primary() == clauses_true(p, bits));
    }
  }
}

TEST_CASE("normalize_variables examples") {
  Signature sig;
  auto c1 = parse_clause("p(Y,X,Y)", sig);
  CHECK(show(sig, normalize_variables(c1)) == "p(V1,V2,V1)");
  auto c2 = parse_clause("s(a)", sig);
  CHECK(show(sig, normalize_variables(c2)) == "s(a)");
  auto c3 = parse_clause("q(V1)", sig);
  CHECK(show(sig, normalize_variables(c3)) == "q(V1)");
}

TEST_CASE("normalize_variables is idempotent and a variable bijection") {
  test::Gen g(11);
  for (int trial = 0; trial < 500; ++trial) {
    Signature sig;
    auto lits = parse_clause(test::random_clause_text(g), sig);
    auto once = normalize_variables(lits);
    CHECK(normalize_variables(once) == once);
    // Bijection: the same positions share variables before and after.
    std::vector<std::uint32_t> before, after;
    for (const Literal& l : lits) l.atom.for_each_var([&](std::uint32_t v) { before.push_back(v); });
    for (const Literal& l : once) l.atom.for_each_var([&](std::uint32_t v) { after.push_back(v); });
    REQUIRE(before.size() == after.size());
    std::map<std::uint32_t, std::uint32_t> fwd, back;
    for (std::size_t i = 0; i < before.size(); ++i) {
      CHECK(fwd.emplace(before[i], after[i]).first->second == after[i]);
      CHECK(back.emplace(after[i], before[i]).first->second == before[i]);
    }
  }
}

TEST_CASE("tokenize looks symbols up, maps unknowns to OOV and truncates") {
  Vocabulary vocab({Vocabulary::kPadToken, Vocabulary::kOovToken, Vocabulary::kSepToken, "~", "q", "(", "V1", ")"});
  Signature sig;
  Clause c;
  c.literals = normalize_variables(parse_clause("~q(X)", sig));
  CHECK(tokenize(sig, c, vocab).tokens == std::vector<std::uint32_t>{3, 4, 5, 6, 7});

  Clause d;
  d.literals = parse_clause("~r(V1)", sig);
  CHECK(tokenize(sig, d, vocab).tokens == std::vector<std::uint32_t>{3, Vocabulary::kOov, 5, 6, 7});

  std::string big = "p(a)";
  for (int i = 0; i < 2500; ++i) big += " | p(a)";
  Clause e;
  e.literals = parse_clause(big, sig);
  REQUIRE(clause_tokens(sig, e.literals).size() >= 10000);
  auto t = tokenize(sig, e, vocab, 512);
  CHECK(t.tokens.size() == 512);
}

TEST_CASE("tokenize length equals the printed symbol count") {
  test::Gen g(3);
  Vocabulary vocab = test::generator_vocabulary();
  for (int trial = 0; trial < 300; ++trial) {
    Signature sig;
    Clause c;
    c.literals = normalize_variables(parse_clause(test::random_clause_text(g), sig));
    auto printed = clause_tokens(sig, c.literals);
    CHECK(tokenize(sig, c, vocab, 100000).tokens.size() == printed.size());
    for (std::uint32_t t : tokenize(sig, c, vocab).tokens) CHECK(t < vocab.size());
  }
}

TEST_CASE("curried parse trees") {
  Signature sig;
  auto pab = parse_clause("p(a,b)", sig);
  CurriedTree t = clause_parse_tree(sig, pab);
  REQUIRE(t.nodes.size() == 5);
  const TreeNode& root = t.nodes[static_cast<std::size_t>(t.root())];
  CHECK(root.kind == NodeKind::Apply);
  CHECK(t.nodes[static_cast<std::size_t>(root.right)].symbol == "b");
  const TreeNode& inner = t.nodes[static_cast<std::size_t>(root.left)];
  CHECK(inner.kind == NodeKind::Apply);
  CHECK(t.nodes[static_cast<std::size_t>(inner.left)].symbol == "p");
  CHECK(t.nodes[static_cast<std::size_t>(inner.right)].symbol == "a");

  auto npa = parse_clause("~s(a)", sig);
  CurriedTree n = clause_parse_tree(sig, npa);
  CHECK(n.nodes[static_cast<std::size_t>(n.root())].kind == NodeKind::Not);
  CHECK(n.count(NodeKind::Apply) == 1);

  Problem p = parse_tptp("cnf(g1, negated_conjecture, p(a)).\ncnf(g2, negated_conjecture, q(b)).");
  CurriedTree conj = conjecture_parse_tree(p.signature, p.negated_conjecture);
  CHECK(conj.nodes[static_cast<std::size_t>(conj.root())].kind == NodeKind::And);
  CHECK(conj.count(NodeKind::And) == 1);
}

TEST_CASE("parse tree node counts and child arities") {
  test::Gen g(5);
  for (int trial = 0; trial < 300; ++trial) {
    Signature sig;
    auto lits = parse_clause(test::random_clause_text(g), sig);
    CurriedTree t = clause_parse_tree(sig, lits);
    // Leaves: one per symbol occurrence; applies: one per argument.
    std::size_t symbols = 0, args = 0, negatives = 0;
    std::function<void(const Term&)> walk = [&](const Term& term) {
      ++symbols;
      if (!term.is_var()) {
        args += term.args().size();
        for (const Term& a : term.args()) walk(a);
      }
    };
    for (const Literal& l : lits) {
      walk(l.atom);
      if (!l.positive) ++negatives;
    }
    CHECK(t.count(NodeKind::Leaf) == symbols);
    CHECK(t.count(NodeKind::Apply) == args);
    CHECK(t.count(NodeKind::Not) == negatives);
    CHECK(t.count(NodeKind::Or) == lits.size() - 1);
    CHECK(t.count(NodeKind::And) == 0);
    for (const TreeNode& n : t.nodes) {
      const bool has_left = n.left >= 0, has_right = n.right >= 0;
      switch (n.kind) {
        case NodeKind::Leaf:
          CHECK((!has_left && !has_right));
          break;
        case NodeKind::Not:
          CHECK((has_left && !has_right));
          break;
        default:
          CHECK((has_left && has_right));
      }
    }
  }
}

TEST_CASE("print and parse round trip on generated problems") {
  test::Gen g(9);
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    const std::size_t n = 1 + g.below(5);
    for (std::size_t i = 0; i < n; ++i)
      text += "cnf(c" + std::to_string(i) + ", " + (i + 1 == n ? "negated_conjecture" : "axiom") + ", (" +
              test::random_clause_text(g) + ")).\n";
    Problem p = parse_tptp(text);
    std::string once = print_problem(p);
    Problem q = parse_tptp(once);
    CHECK(print_problem(q) == once);
  }
}

TEST_CASE("vocabulary serialization round trip keeps the hash") {
  Vocabulary v = test::generator_vocabulary();
  Vocabulary w = Vocabulary::parse(v.serialize());
  CHECK(w.tokens() == v.tokens());
  CHECK(w.hash() == v.hash());
  CHECK(v.token(Vocabulary::kPad) == Vocabulary::kPadToken);
  CHECK(v.token(Vocabulary::kOov) == Vocabulary::kOovToken);
  CHECK(v.token(Vocabulary::kSep) == Vocabulary::kSepToken);
}
