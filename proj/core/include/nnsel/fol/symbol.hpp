#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace nnsel::fol {

enum class SymbolKind : std::uint8_t { Function, Predicate, Variable };

enum class SymbolId : std::uint32_t {};

constexpr std::uint32_t index(SymbolId id) noexcept { return static_cast<std::uint32_t>(id); }

struct Symbol {
  std::string name;
  SymbolKind kind = SymbolKind::Function;
  std::uint32_t arity = 0;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// Function and predicate symbols of one problem. Variables are clause-local
/// integers and never interned here.
class Signature {
 public:
  /// Returns the existing id for `name` or registers a new symbol. Throws
  /// nnsel::Error when the name is already used with another kind or arity.
  SymbolId intern(std::string_view name, SymbolKind kind, std::uint32_t arity);

  std::optional<SymbolId> find(std::string_view name) const;

  /// Fresh Skolem function `sk<N>`, numbered in creation order and skipping
  /// names already present.
  SymbolId fresh_skolem(std::uint32_t arity);

  const Symbol& operator[](SymbolId id) const { return symbols_[index(id)]; }
  std::size_t size() const noexcept { return symbols_.size(); }
  const std::vector<Symbol>& symbols() const noexcept { return symbols_; }

  /// The equality predicate `=`, if the problem uses it.
  std::optional<SymbolId> equality() const { return find("="); }

 private:
  std::vector<Symbol> symbols_;
  std::unordered_map<std::string, std::uint32_t> by_name_;
  std::uint32_t next_skolem_ = 1;
};

}  // namespace nnsel::fol
