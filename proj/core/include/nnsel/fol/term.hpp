#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "nnsel/fol/symbol.hpp"

namespace nnsel::fol {

/// A first-order term: a variable or a function symbol applied to terms.
/// Variables are numbered from 1 within a clause.
class Term {
 public:
  static Term variable(std::uint32_t v) { return Term(v, true, {}); }
  static Term app(SymbolId f, std::vector<Term> args = {}) {
    return Term(index(f), false, std::move(args));
  }

  bool is_var() const noexcept { return var_; }
  std::uint32_t var() const noexcept { return head_; }
  SymbolId functor() const noexcept { return static_cast<SymbolId>(head_); }
  const std::vector<Term>& args() const noexcept { return args_; }
  std::vector<Term>& mutable_args() noexcept { return args_; }

  bool is_ground() const;
  bool contains_var(std::uint32_t v) const;
  std::size_t size() const;  // node count
  std::uint32_t max_var() const;  // 0 when ground

  /// Calls f(var) for every variable occurrence in left-to-right order.
  void for_each_var(const std::function<void(std::uint32_t)>& f) const;

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;

 private:
  Term(std::uint32_t head, bool var, std::vector<Term> args)
      : head_(head), var_(var), args_(std::move(args)) {}

  std::uint32_t head_;
  bool var_;
  std::vector<Term> args_;
};

struct Literal {
  bool positive = true;
  Term atom = Term::variable(0);

  SymbolId predicate() const noexcept { return atom.functor(); }
  const std::vector<Term>& args() const noexcept { return atom.args(); }

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

/// Applies a variable renaming v -> map(v) everywhere in t.
Term rename_vars(const Term& t, const std::function<std::uint32_t(std::uint32_t)>& map);

}  // namespace nnsel::fol
