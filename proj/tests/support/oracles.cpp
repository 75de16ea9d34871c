#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

namespace nnsel::test {

bool prop_satisfiable(const PropCnf& cnf) {
  int atoms = 0;
  for (const auto& c : cnf)
    for (int l : c) atoms = std::max(atoms, std::abs(l));
  for (std::uint32_t mask = 0; mask < (1u << atoms); ++mask) {
    bool all = true;
    for (const auto& c : cnf) {
      bool sat = false;
      for (int l : c) {
        bool v = (mask >> (std::abs(l) - 1)) & 1u;
        if ((l > 0) == v) {
          sat = true;
          break;
        }
      }
      if (!sat) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

Verdict ground_bfs_saturation(const fol::Problem& problem) {
  const fol::Signature& sig = problem.signature;
  std::vector<fol::SymbolId> constants;
  for (std::uint32_t i = 0; i < sig.size(); ++i) {
    const fol::Symbol& s = sig[static_cast<fol::SymbolId>(i)];
    if (s.kind != fol::SymbolKind::Function) continue;
    if (s.arity > 0) throw std::invalid_argument("ground oracle needs a function-free problem");
    constants.push_back(static_cast<fol::SymbolId>(i));
  }
  // An empty Herbrand universe gets one fresh constant, encoded as -1.
  std::vector<long> universe;
  for (fol::SymbolId c : constants) universe.push_back(static_cast<long>(fol::index(c)));
  if (universe.empty()) universe.push_back(-1);

  // Ground atoms are interned as (predicate, argument constants).
  std::map<std::vector<long>, int> atoms;
  auto atom_id = [&](const fol::Literal& l, const std::map<std::uint32_t, long>& env) {
    std::vector<long> key{static_cast<long>(fol::index(l.predicate()))};
    for (const fol::Term& t : l.args()) key.push_back(t.is_var() ? env.at(t.var()) : static_cast<long>(fol::index(t.functor())));
    return atoms.emplace(key, static_cast<int>(atoms.size()) + 1).first->second;
  };

  using Ground = std::vector<int>;  // sorted signed atom ids
  std::set<Ground> known;
  auto normalize = [](Ground c) -> std::optional<Ground> {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (int l : c)
      if (std::binary_search(c.begin(), c.end(), -l)) return std::nullopt;
    return c;
  };

  for (const fol::Clause* c : problem.input_clauses()) {
    std::vector<std::uint32_t> vars;
    for (const fol::Literal& l : c->literals)
      l.atom.for_each_var([&](std::uint32_t v) {
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
      });
    std::map<std::uint32_t, long> env;
    std::function<void(std::size_t)> assign = [&](std::size_t k) {
      if (k == vars.size()) {
        Ground g;
        for (const fol::Literal& l : c->literals) g.push_back(l.positive ? atom_id(l, env) : -atom_id(l, env));
        if (auto n = normalize(std::move(g))) known.insert(*n);
        return;
      }
      for (long u : universe) {
        env[vars[k]] = u;
        assign(k + 1);
      }
    };
    assign(0);
  }
  if (known.contains(Ground{})) return Verdict::Unsatisfiable;

  while (true) {
    std::set<Ground> fresh;
    const std::vector<Ground> all(known.begin(), known.end());
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = i + 1; j < all.size(); ++j) {
        for (int l : all[i]) {
          if (!std::binary_search(all[j].begin(), all[j].end(), -l)) continue;
          Ground r;
          for (int x : all[i])
            if (x != l) r.push_back(x);
          for (int x : all[j])
            if (x != -l) r.push_back(x);
          auto n = normalize(std::move(r));
          if (!n) continue;
          if (n->empty()) return Verdict::Unsatisfiable;
          if (!known.contains(*n)) fresh.insert(std::move(*n));
        }
      }
    }
    if (fresh.empty()) return Verdict::Saturated;
    known.insert(fresh.begin(), fresh.end());
  }
}

double forward_loss(const nn::Model& model, const std::vector<nn::Example>& batch, bool train_mode,
                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  nn::ForwardMode mode{train_mode, &rng};
  double total = 0;
  for (const nn::Example& ex : batch) {
    nn::Graph g;
    nn::Var vc = model.embed(g, ex.clause, nn::Tower::Clause, mode);
    nn::Var vnc = model.embed(g, ex.conjecture, nn::Tower::Conjecture, mode);
    double z = g.value(model.logit(g, vc, vnc))[0];
    // Plain-formula cross-entropy, independent of the fused op.
    double p = 1.0 / (1.0 + std::exp(-z));
    total += ex.label > 0.5 ? -std::log(p) : -std::log(1.0 - p);
  }
  return total / static_cast<double>(batch.size());
}

GradCheck finite_difference_check(nn::Model model, const std::vector<nn::Example>& batch, bool train_mode,
                                  std::uint64_t seed, double step) {
  std::mt19937_64 rng(seed);
  nn::LossAndGrads lg = nn::loss_and_grads(batch, model, train_mode, rng);
  GradCheck out;
  for (std::size_t pi = 0; pi < model.parameters().size(); ++pi) {
    nn::Parameter& p = model.parameters()[pi];
    for (std::size_t k = 0; k < p.value.size(); ++k) {
      const double orig = p.value[k];
      p.value[k] = orig + step;
      double up = forward_loss(model, batch, train_mode, seed);
      p.value[k] = orig - step;
      double down = forward_loss(model, batch, train_mode, seed);
      p.value[k] = orig;
      double numeric = (up - down) / (2 * step);
      double analytic = lg.grads[pi][k];
      auto rel_error = [&](double n) {
        return std::abs(n - analytic) / std::max({std::abs(n), std::abs(analytic), 1e-6});
      };
      double rel = rel_error(numeric);
      ++out.checked;
      if (rel > 1e-3) {
        // A ReLU or max-pool switch inside [x - step, x + step] makes the
        // central difference meaningless there; a ten times smaller step
        // that lands on a different value exposes it.
        const double fine = step / 10;
        p.value[k] = orig + fine;
        double fine_up = forward_loss(model, batch, train_mode, seed);
        p.value[k] = orig - fine;
        double fine_down = forward_loss(model, batch, train_mode, seed);
        p.value[k] = orig;
        double fine_numeric = (fine_up - fine_down) / (2 * fine);
        if (std::abs(fine_numeric - numeric) > 1e-3 * std::max(std::abs(fine_numeric), 1e-6)) ++out.kinks;
      }
      if (rel > out.max_rel_error) {
        out.max_rel_error = rel;
        out.worst = p.name + "[" + std::to_string(k) + "] analytic=" + std::to_string(analytic) +
                    " numeric=" + std::to_string(numeric);
      }
    }
  }
  return out;
}

}  // namespace nnsel::test
