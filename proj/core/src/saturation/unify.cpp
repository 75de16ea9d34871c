#include "nnsel/saturation/unify.hpp"

namespace nnsel::sat {

namespace {

const fol::Term& deref(const fol::Term& t, const Substitution& s) {
  const fol::Term* cur = &t;
  while (cur->is_var()) {
    const fol::Term* next = s.lookup(cur->var());
    if (!next) break;
    cur = next;
  }
  return *cur;
}

bool occurs(std::uint32_t v, const fol::Term& t, const Substitution& s) {
  const fol::Term& d = deref(t, s);
  if (d.is_var()) return d.var() == v;
  for (const auto& a : d.args()) {
    if (occurs(v, a, s)) return true;
  }
  return false;
}

}  // namespace

Substitution::Substitution(const Substitution& other) { *this = other; }

Substitution& Substitution::operator=(const Substitution& other) {
  if (this == &other) return *this;
  bindings_.clear();
  bindings_.resize(other.bindings_.size());
  for (std::size_t i = 0; i < other.bindings_.size(); ++i) {
    if (other.bindings_[i]) bindings_[i] = std::make_unique<fol::Term>(*other.bindings_[i]);
  }
  bound_ = other.bound_;
  return *this;
}

void Substitution::bind(std::uint32_t v, fol::Term t) {
  if (v >= bindings_.size()) bindings_.resize(v + 1);
  if (!bindings_[v]) ++bound_;
  bindings_[v] = std::make_unique<fol::Term>(std::move(t));
}

fol::Term Substitution::apply(const fol::Term& t) const {
  const fol::Term& d = deref(t, *this);
  if (d.is_var() || d.args().empty()) return d;
  std::vector<fol::Term> args;
  args.reserve(d.args().size());
  for (const auto& a : d.args()) args.push_back(apply(a));
  return fol::Term::app(d.functor(), std::move(args));
}

bool unify(const fol::Term& a, const fol::Term& b, Substitution& s) {
  const fol::Term& x = deref(a, s);
  const fol::Term& y = deref(b, s);
  if (x.is_var()) {
    if (y.is_var() && y.var() == x.var()) return true;
    if (occurs(x.var(), y, s)) return false;
    s.bind(x.var(), y);
    return true;
  }
  if (y.is_var()) {
    if (occurs(y.var(), x, s)) return false;
    s.bind(y.var(), x);
    return true;
  }
  if (x.functor() != y.functor() || x.args().size() != y.args().size()) return false;
  for (std::size_t i = 0; i < x.args().size(); ++i) {
    if (!unify(x.args()[i], y.args()[i], s)) return false;
  }
  return true;
}

bool match(const fol::Term& pattern, const fol::Term& target, Substitution& s) {
  if (pattern.is_var()) {
    if (const fol::Term* bound = s.lookup(pattern.var())) return *bound == target;
    s.bind(pattern.var(), target);
    return true;
  }
  if (target.is_var() || pattern.functor() != target.functor() ||
      pattern.args().size() != target.args().size()) {
    return false;
  }
  for (std::size_t i = 0; i < pattern.args().size(); ++i) {
    if (!match(pattern.args()[i], target.args()[i], s)) return false;
  }
  return true;
}

fol::Term shift_vars(const fol::Term& t, std::uint32_t offset) {
  return fol::rename_vars(t, [offset](std::uint32_t v) { return v + offset; });
}

}  // namespace nnsel::sat
