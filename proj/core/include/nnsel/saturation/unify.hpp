#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "nnsel/fol/term.hpp"

namespace nnsel::sat {

/// Triangular substitution over variable numbers.
class Substitution {
 public:
  Substitution() = default;
  Substitution(const Substitution& other);
  Substitution& operator=(const Substitution& other);
  Substitution(Substitution&&) noexcept = default;
  Substitution& operator=(Substitution&&) noexcept = default;

  const fol::Term* lookup(std::uint32_t v) const {
    return v < bindings_.size() ? bindings_[v].get() : nullptr;
  }
  void bind(std::uint32_t v, fol::Term t);
  bool empty() const noexcept { return bound_ == 0; }

  /// Fully dereferences `t`.
  fol::Term apply(const fol::Term& t) const;

 private:
  // Heap nodes keep bound terms at stable addresses while the table grows.
  std::vector<std::unique_ptr<fol::Term>> bindings_;
  std::size_t bound_ = 0;
};

/// Most general unifier with occurs check; extends `s` on success. On failure
/// `s` may hold partial bindings.
bool unify(const fol::Term& a, const fol::Term& b, Substitution& s);

/// One-way matching: binds only variables of `pattern`; variables of
/// `target` are treated as constants.
bool match(const fol::Term& pattern, const fol::Term& target, Substitution& s);

/// Shifts every variable by `offset`.
fol::Term shift_vars(const fol::Term& t, std::uint32_t offset);

}  // namespace nnsel::sat
