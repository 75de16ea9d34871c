#include "nnsel/fol/equality.hpp"

namespace nnsel::fol {

std::vector<std::vector<Literal>> equality_axioms(const Signature& sig) {
  std::vector<std::vector<Literal>> out;
  const auto eq = sig.equality();
  if (!eq) return out;
  auto v = [](std::uint32_t i) { return Term::variable(i); };
  auto equal = [&](Term a, Term b, bool positive) {
    return Literal{positive, Term::app(*eq, {std::move(a), std::move(b)})};
  };
  out.push_back({equal(v(1), v(1), true)});
  out.push_back({equal(v(1), v(2), false), equal(v(2), v(1), true)});
  out.push_back({equal(v(1), v(2), false), equal(v(2), v(3), false), equal(v(1), v(3), true)});

  for (std::uint32_t s = 0; s < sig.size(); ++s) {
    const SymbolId id = static_cast<SymbolId>(s);
    const Symbol& sym = sig[id];
    if (id == *eq || sym.arity == 0) continue;
    for (std::uint32_t pos = 0; pos < sym.arity; ++pos) {
      // Variables 1 and 2 are the swapped pair; the rest fill other positions.
      std::vector<Term> lhs, rhs;
      std::uint32_t next = 3;
      for (std::uint32_t k = 0; k < sym.arity; ++k) {
        if (k == pos) {
          lhs.push_back(v(1));
          rhs.push_back(v(2));
        } else {
          lhs.push_back(v(next));
          rhs.push_back(v(next));
          ++next;
        }
      }
      std::vector<Literal> clause{equal(v(1), v(2), false)};
      if (sym.kind == SymbolKind::Function) {
        clause.push_back(equal(Term::app(id, std::move(lhs)), Term::app(id, std::move(rhs)), true));
      } else {
        clause.push_back(Literal{false, Term::app(id, std::move(lhs))});
        clause.push_back(Literal{true, Term::app(id, std::move(rhs))});
      }
      out.push_back(normalize_variables(clause));
    }
  }
  return out;
}

bool uses_equality(const Problem& p) { return p.signature.equality().has_value(); }

}  // namespace nnsel::fol
