#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>

#include "nnsel/fol/clause.hpp"
#include "nnsel/fol/problem.hpp"

namespace nnsel::heur {

using SymbolSet = std::unordered_set<fol::SymbolId>;

/// E-style priority wrapper, reduced to a boolean tier ranked before the
/// numeric weight (tier 0 first).
enum class Priority : std::uint8_t { None, SimulateSos, PreferNonGoals, ConstPrio, PreferProcessed };

/// 0 or 1; only SimulateSos and PreferNonGoals ever return 1.
int priority_tier(Priority p, const fol::Clause& c) noexcept;

double fifo_weight(const fol::Clause& c);
double symbol_count_weight(const fol::Clause& c, double fweight, double vweight);
double conjecture_relative_weight(const fol::Clause& c, const SymbolSet& conj_symbols,
                                  double base_fweight, double base_vweight, double conj_multiplier);

/// Function and predicate symbols occurring in the negated conjecture.
SymbolSet conjecture_symbols(const fol::Problem& p);

/// Clause evaluation function; lower weight is selected first.
class WeightFunction {
 public:
  virtual ~WeightFunction() = default;

  /// Called once per batch of clauses entering the unprocessed set, before
  /// any weight() call for them.
  virtual void prepare(std::span<const fol::Clause* const> /*batch*/) {}

  double evaluate(const fol::Clause& c) {
    ++evaluations_;
    return weight(c);
  }

  virtual std::string name() const = 0;
  virtual bool is_neural() const { return false; }
  std::uint64_t evaluations() const noexcept { return evaluations_; }

 protected:
  virtual double weight(const fol::Clause& c) = 0;

 private:
  std::uint64_t evaluations_ = 0;
};

class FifoWeight final : public WeightFunction {
 public:
  std::string name() const override { return "fifo"; }

 protected:
  double weight(const fol::Clause& c) override { return fifo_weight(c); }
};

class SymbolCountWeight final : public WeightFunction {
 public:
  SymbolCountWeight(double fweight, double vweight) : fweight_(fweight), vweight_(vweight) {}
  std::string name() const override { return "symcount"; }

 protected:
  double weight(const fol::Clause& c) override { return symbol_count_weight(c, fweight_, vweight_); }

 private:
  double fweight_;
  double vweight_;
};

class ConjectureRelativeWeight final : public WeightFunction {
 public:
  ConjectureRelativeWeight(SymbolSet conj, double fweight, double vweight, double multiplier)
      : conj_(std::move(conj)), fweight_(fweight), vweight_(vweight), multiplier_(multiplier) {}
  std::string name() const override { return "conjrel"; }

 protected:
  double weight(const fol::Clause& c) override {
    return conjecture_relative_weight(c, conj_, fweight_, vweight_, multiplier_);
  }

 private:
  SymbolSet conj_;
  double fweight_;
  double vweight_;
  double multiplier_;
};

}  // namespace nnsel::heur
