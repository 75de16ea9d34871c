#include "nnsel/fol/symbol.hpp"

#include "nnsel/error.hpp"

namespace nnsel::fol {

namespace {

const char* kind_name(SymbolKind k) {
  switch (k) {
    case SymbolKind::Function: return "function";
    case SymbolKind::Predicate: return "predicate";
    case SymbolKind::Variable: return "variable";
  }
  return "?";
}

}  // namespace

SymbolId Signature::intern(std::string_view name, SymbolKind kind, std::uint32_t arity) {
  if (name.empty()) throw Error("empty symbol name");
  if (kind == SymbolKind::Variable) throw Error("variables are not interned in a signature");
  auto it = by_name_.find(std::string(name));
  if (it != by_name_.end()) {
    const Symbol& s = symbols_[it->second];
    if (s.kind != kind || s.arity != arity) {
      throw Error("symbol '" + std::string(name) + "' used as " + kind_name(kind) + "/" +
                  std::to_string(arity) + " but declared as " + kind_name(s.kind) + "/" +
                  std::to_string(s.arity));
    }
    return static_cast<SymbolId>(it->second);
  }
  const auto id = static_cast<std::uint32_t>(symbols_.size());
  symbols_.push_back(Symbol{std::string(name), kind, arity});
  by_name_.emplace(std::string(name), id);
  return static_cast<SymbolId>(id);
}

std::optional<SymbolId> Signature::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return static_cast<SymbolId>(it->second);
}

SymbolId Signature::fresh_skolem(std::uint32_t arity) {
  for (;;) {
    std::string name = "sk" + std::to_string(next_skolem_++);
    if (!by_name_.contains(name)) return intern(name, SymbolKind::Function, arity);
  }
}

}  // namespace nnsel::fol
