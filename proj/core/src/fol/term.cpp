#include "nnsel/fol/term.hpp"

#include <algorithm>

namespace nnsel::fol {

bool Term::is_ground() const {
  if (var_) return false;
  return std::all_of(args_.begin(), args_.end(), [](const Term& a) { return a.is_ground(); });
}

bool Term::contains_var(std::uint32_t v) const {
  if (var_) return head_ == v;
  return std::any_of(args_.begin(), args_.end(), [v](const Term& a) { return a.contains_var(v); });
}

std::size_t Term::size() const {
  std::size_t n = 1;
  for (const auto& a : args_) n += a.size();
  return n;
}

std::uint32_t Term::max_var() const {
  if (var_) return head_;
  std::uint32_t m = 0;
  for (const auto& a : args_) m = std::max(m, a.max_var());
  return m;
}

void Term::for_each_var(const std::function<void(std::uint32_t)>& f) const {
  if (var_) {
    f(head_);
    return;
  }
  for (const auto& a : args_) a.for_each_var(f);
}

Term rename_vars(const Term& t, const std::function<std::uint32_t(std::uint32_t)>& map) {
  if (t.is_var()) return Term::variable(map(t.var()));
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(rename_vars(a, map));
  return Term::app(t.functor(), std::move(args));
}

}  // namespace nnsel::fol
