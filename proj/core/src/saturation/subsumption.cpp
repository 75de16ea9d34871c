#include "nnsel/saturation/subsumption.hpp"

#include <vector>

namespace nnsel::sat {

namespace {

/// Matching with a binding trail so backtracking is cheap.
class Matcher {
 public:
  bool match(const fol::Term& pattern, const fol::Term& target) {
    if (pattern.is_var()) {
      const std::uint32_t v = pattern.var();
      if (v >= binding_.size()) binding_.resize(v + 1, nullptr);
      if (binding_[v]) return *binding_[v] == target;
      binding_[v] = &target;
      trail_.push_back(v);
      return true;
    }
    if (target.is_var() || pattern.functor() != target.functor() ||
        pattern.args().size() != target.args().size()) {
      return false;
    }
    for (std::size_t i = 0; i < pattern.args().size(); ++i) {
      if (!match(pattern.args()[i], target.args()[i])) return false;
    }
    return true;
  }

  std::size_t mark() const noexcept { return trail_.size(); }
  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      binding_[trail_.back()] = nullptr;
      trail_.pop_back();
    }
  }

 private:
  std::vector<const fol::Term*> binding_;
  std::vector<std::uint32_t> trail_;
};

bool search(const std::vector<fol::Literal>& general, const std::vector<fol::Literal>& specific,
            std::size_t i, std::vector<char>& used, Matcher& m) {
  if (i == general.size()) return true;
  const fol::Literal& g = general[i];
  for (std::size_t j = 0; j < specific.size(); ++j) {
    const fol::Literal& s = specific[j];
    if (used[j] || s.positive != g.positive || s.predicate() != g.predicate()) continue;
    const std::size_t mark = m.mark();
    if (m.match(g.atom, s.atom)) {
      used[j] = 1;
      if (search(general, specific, i + 1, used, m)) return true;
      used[j] = 0;
    }
    m.undo(mark);
  }
  return false;
}

}  // namespace

bool subsumes(const std::vector<fol::Literal>& general, const std::vector<fol::Literal>& specific) {
  if (general.size() > specific.size()) return false;
  std::vector<char> used(specific.size(), 0);
  Matcher m;
  return search(general, specific, 0, used, m);
}

bool subsumes(const fol::Clause& general, const fol::Clause& specific) {
  return subsumes(general.literals, specific.literals);
}

bool is_variant(const std::vector<fol::Literal>& a, const std::vector<fol::Literal>& b) {
  return a.size() == b.size() && subsumes(a, b) && subsumes(b, a);
}

std::uint64_t literal_mask(const std::vector<fol::Literal>& literals) {
  std::uint64_t m = 0;
  for (const auto& l : literals) {
    const std::uint32_t key = fol::index(l.predicate()) * 2 + (l.positive ? 1 : 0);
    m |= std::uint64_t{1} << (key % 64);
  }
  return m;
}

}  // namespace nnsel::sat
