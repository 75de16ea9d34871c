#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace nnsel::fol {

/// Token -> index table. Line number in the serialized file is the index.
class Vocabulary {
 public:
  static constexpr std::uint32_t kPad = 0;
  static constexpr std::uint32_t kOov = 1;
  static constexpr std::uint32_t kSep = 2;
  static constexpr const char* kPadToken = "<PAD>";
  static constexpr const char* kOovToken = "<OOV>";
  static constexpr const char* kSepToken = "<SEP>";

  /// Reserved tokens only.
  Vocabulary();
  /// Explicit table; index i is tokens[i]. Unknown tokens map to kOov.
  explicit Vocabulary(std::vector<std::string> tokens);

  /// Reserved tokens followed by `counts` in descending frequency, ties
  /// broken lexicographically.
  static Vocabulary from_counts(const std::map<std::string, std::uint64_t>& counts);

  std::uint32_t index(std::string_view token) const;
  const std::string& token(std::uint32_t i) const { return tokens_.at(i); }
  std::size_t size() const noexcept { return tokens_.size(); }
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }

  std::string serialize() const;
  static Vocabulary parse(std::string_view text);
  /// FNV-1a over the serialized form.
  std::uint64_t hash() const;

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::uint32_t> lookup_;
};

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 1469598103934665603ULL);

}  // namespace nnsel::fol
