#include "nnsel/fol/clausify.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "nnsel/error.hpp"

namespace nnsel::fol {

namespace {

using Kind = Formula::Kind;

void free_vars(const Formula& f, std::set<std::uint32_t>& bound, std::vector<std::uint32_t>& out) {
  switch (f.kind) {
    case Kind::Atom:
      f.atom.atom.for_each_var([&](std::uint32_t v) {
        if (!bound.contains(v) && std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
      });
      return;
    case Kind::Forall:
    case Kind::Exists: {
      std::vector<std::uint32_t> added;
      for (auto v : f.bound) {
        if (bound.insert(v).second) added.push_back(v);
      }
      free_vars(f.children[0], bound, out);
      for (auto v : added) bound.erase(v);
      return;
    }
    default:
      for (const auto& c : f.children) free_vars(c, bound, out);
  }
}

Formula negated_atom(const Formula& atom) { return Formula::make(Kind::Not, {atom}); }

/// Negation normal form: only And, Or, Forall, Exists, True, False, atoms and
/// negated atoms remain.
Formula nnf(const Formula& f, bool positive) {
  switch (f.kind) {
    case Kind::Atom:
      return positive ? f : negated_atom(f);
    case Kind::True:
      return Formula::make(positive ? Kind::True : Kind::False, {});
    case Kind::False:
      return Formula::make(positive ? Kind::False : Kind::True, {});
    case Kind::Not:
      return nnf(f.children[0], !positive);
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> parts;
      for (const auto& c : f.children) parts.push_back(nnf(c, positive));
      const bool conj = (f.kind == Kind::And) == positive;
      return Formula::make(conj ? Kind::And : Kind::Or, std::move(parts));
    }
    case Kind::Implies: {
      // a => b  ==  ~a | b
      Formula as_or = Formula::make(
          Kind::Or, {Formula::make(Kind::Not, {f.children[0]}), f.children[1]});
      return nnf(as_or, positive);
    }
    case Kind::Iff:
    case Kind::Xor: {
      const Formula& a = f.children[0];
      const Formula& b = f.children[1];
      const bool iff = (f.kind == Kind::Iff) == positive;
      if (iff) {
        // (~a | b) & (a | ~b)
        return Formula::make(Kind::And, {Formula::make(Kind::Or, {nnf(a, false), nnf(b, true)}),
                                         Formula::make(Kind::Or, {nnf(a, true), nnf(b, false)})});
      }
      // (a | b) & (~a | ~b)
      return Formula::make(Kind::And, {Formula::make(Kind::Or, {nnf(a, true), nnf(b, true)}),
                                       Formula::make(Kind::Or, {nnf(a, false), nnf(b, false)})});
    }
    case Kind::Nor:
      return nnf(Formula::make(Kind::Or, f.children), !positive);
    case Kind::Nand:
      return nnf(Formula::make(Kind::And, f.children), !positive);
    case Kind::Forall:
    case Kind::Exists: {
      const bool universal = (f.kind == Kind::Forall) == positive;
      return Formula::quantified(universal ? Kind::Forall : Kind::Exists, f.bound,
                                 nnf(f.children[0], positive));
    }
  }
  throw Error("unreachable formula kind");
}

Term substitute(const Term& t, const std::unordered_map<std::uint32_t, Term>& map) {
  if (t.is_var()) {
    auto it = map.find(t.var());
    return it == map.end() ? t : it->second;
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(substitute(a, map));
  return Term::app(t.functor(), std::move(args));
}

class Skolemizer {
 public:
  explicit Skolemizer(Signature& sig) : sig_(sig) {}

  /// Renames universals apart and replaces existentials by Skolem terms over
  /// the universals in scope. Quantifiers are dropped from the result.
  Formula run(const Formula& f, std::unordered_map<std::uint32_t, Term> map,
              std::vector<std::uint32_t> universals) {
    switch (f.kind) {
      case Kind::Atom: {
        Formula g = f;
        g.atom.atom = substitute(f.atom.atom, map);
        return g;
      }
      case Kind::Forall: {
        for (auto v : f.bound) {
          const std::uint32_t fresh = next_var_++;
          map.insert_or_assign(v, Term::variable(fresh));
          universals.push_back(fresh);
        }
        return run(f.children[0], std::move(map), std::move(universals));
      }
      case Kind::Exists: {
        for (auto v : f.bound) {
          std::vector<Term> args;
          for (auto u : universals) args.push_back(Term::variable(u));
          SymbolId sk = sig_.fresh_skolem(static_cast<std::uint32_t>(args.size()));
          map.insert_or_assign(v, Term::app(sk, std::move(args)));
        }
        return run(f.children[0], std::move(map), std::move(universals));
      }
      default: {
        Formula g;
        g.kind = f.kind;
        for (const auto& c : f.children) g.children.push_back(run(c, map, universals));
        return g;
      }
    }
  }

 private:
  Signature& sig_;
  std::uint32_t next_var_ = 1;
};

using ClauseSet = std::vector<std::vector<Literal>>;

ClauseSet to_cnf(const Formula& f) {
  switch (f.kind) {
    case Kind::Atom:
      return {{f.atom}};
    case Kind::Not: {
      Literal l = f.children[0].atom;
      l.positive = false;
      return {{l}};
    }
    case Kind::True:
      return {};
    case Kind::False:
      return {{}};
    case Kind::And: {
      ClauseSet out;
      for (const auto& c : f.children) {
        for (auto& cl : to_cnf(c)) out.push_back(std::move(cl));
      }
      return out;
    }
    case Kind::Or: {
      ClauseSet acc{{}};
      for (const auto& c : f.children) {
        ClauseSet part = to_cnf(c);
        ClauseSet next;
        next.reserve(acc.size() * part.size());
        for (const auto& a : acc) {
          for (const auto& b : part) {
            auto merged = a;
            merged.insert(merged.end(), b.begin(), b.end());
            next.push_back(std::move(merged));
          }
        }
        acc = std::move(next);
      }
      return acc;
    }
    default:
      throw Error("formula not in negation normal form");
  }
}

}  // namespace

std::vector<std::vector<Literal>> clausify(const Formula& formula, bool negate, Signature& sig) {
  Formula f = negate ? Formula::make(Kind::Not, {formula}) : formula;
  std::set<std::uint32_t> bound;
  std::vector<std::uint32_t> free;
  free_vars(f, bound, free);
  if (!free.empty()) {
    // Closure is taken before negation so a negated open conjecture yields Skolem constants.
    Formula closed = negate ? Formula::quantified(Kind::Forall, free, formula) : f;
    f = negate ? Formula::make(Kind::Not, {closed}) : Formula::quantified(Kind::Forall, free, f);
  }
  Formula n = nnf(f, true);
  Formula qf = Skolemizer(sig).run(n, {}, {});
  ClauseSet clauses = to_cnf(qf);
  for (auto& c : clauses) c = normalize_variables(dedupe_literals(std::move(c)));
  return clauses;
}

}  // namespace nnsel::fol
