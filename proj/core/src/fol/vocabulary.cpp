#include "nnsel/fol/vocabulary.hpp"

#include <algorithm>

#include "nnsel/error.hpp"

namespace nnsel::fol {

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

Vocabulary::Vocabulary() : Vocabulary(std::vector<std::string>{kPadToken, kOovToken, kSepToken}) {}

Vocabulary::Vocabulary(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  for (std::uint32_t i = 0; i < tokens_.size(); ++i) {
    if (!lookup_.emplace(tokens_[i], i).second) throw Error("duplicate vocabulary token '" + tokens_[i] + "'");
  }
}

Vocabulary Vocabulary::from_counts(const std::map<std::string, std::uint64_t>& counts) {
  std::vector<std::pair<std::string, std::uint64_t>> entries(counts.begin(), counts.end());
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> tokens{kPadToken, kOovToken, kSepToken};
  for (auto& [tok, n] : entries) {
    if (tok == kPadToken || tok == kOovToken || tok == kSepToken) continue;
    tokens.push_back(tok);
  }
  return Vocabulary(std::move(tokens));
}

std::uint32_t Vocabulary::index(std::string_view token) const {
  auto it = lookup_.find(std::string(token));
  return it == lookup_.end() ? kOov : it->second;
}

std::string Vocabulary::serialize() const {
  std::string out;
  for (const auto& t : tokens_) {
    out += t;
    out += '\n';
  }
  return out;
}

Vocabulary Vocabulary::parse(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    tokens.emplace_back(text.substr(start, end - start));
    start = end + 1;
  }
  return Vocabulary(std::move(tokens));
}

std::uint64_t Vocabulary::hash() const { return fnv1a(serialize()); }

}  // namespace nnsel::fol
