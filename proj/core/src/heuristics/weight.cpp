#include "nnsel/heuristics/weight.hpp"

namespace nnsel::heur {

namespace {

template <typename SymbolCost>
double term_weight(const fol::Term& t, double vweight, const SymbolCost& cost) {
  if (t.is_var()) return vweight;
  double w = cost(t.functor());
  for (const auto& a : t.args()) w += term_weight(a, vweight, cost);
  return w;
}

}  // namespace

int priority_tier(Priority p, const fol::Clause& c) noexcept {
  switch (p) {
    case Priority::SimulateSos: return c.from_goal ? 0 : 1;
    case Priority::PreferNonGoals: return c.role == fol::ClauseRole::NegatedConjecture ? 1 : 0;
    default: return 0;
  }
}

double fifo_weight(const fol::Clause& c) { return static_cast<double>(c.age); }

double symbol_count_weight(const fol::Clause& c, double fweight, double vweight) {
  double w = 0.0;
  auto cost = [fweight](fol::SymbolId) { return fweight; };
  for (const auto& l : c.literals) w += term_weight(l.atom, vweight, cost);
  return w;
}

double conjecture_relative_weight(const fol::Clause& c, const SymbolSet& conj_symbols,
                                  double base_fweight, double base_vweight, double conj_multiplier) {
  double w = 0.0;
  auto cost = [&](fol::SymbolId s) {
    return conj_symbols.contains(s) ? base_fweight * conj_multiplier : base_fweight;
  };
  for (const auto& l : c.literals) w += term_weight(l.atom, base_vweight, cost);
  return w;
}

SymbolSet conjecture_symbols(const fol::Problem& p) {
  SymbolSet out;
  std::function<void(const fol::Term&)> walk = [&](const fol::Term& t) {
    if (t.is_var()) return;
    out.insert(t.functor());
    for (const auto& a : t.args()) walk(a);
  };
  for (const auto& c : p.negated_conjecture) {
    for (const auto& l : c.literals) walk(l.atom);
  }
  return out;
}

}  // namespace nnsel::heur
