#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nnsel/fol/clause.hpp"
#include "nnsel/fol/vocabulary.hpp"

namespace nnsel::fol {

enum class NodeKind : std::uint8_t { Leaf, Apply, Or, And, Not };

struct TreeNode {
  NodeKind kind = NodeKind::Leaf;
  std::string symbol;            // leaves only
  std::uint32_t token = 0;       // vocabulary index of `symbol`, see index_tree
  std::int32_t left = -1;
  std::int32_t right = -1;       // -1 for Not and leaves
};

/// Binary parse tree with curried applications. Nodes are stored children
/// first, so a forward pass over `nodes` evaluates bottom-up; the root is last.
struct CurriedTree {
  std::vector<TreeNode> nodes;

  std::int32_t root() const noexcept { return static_cast<std::int32_t>(nodes.size()) - 1; }
  std::size_t count(NodeKind kind) const;
};

/// f(a,b) becomes apply(apply(f,a),b); negative literals get a `not` node;
/// literals are joined left-to-right with `or` nodes. The empty clause is the
/// leaf `$false`.
CurriedTree clause_parse_tree(const Signature& sig, const std::vector<Literal>& literals);
inline CurriedTree clause_parse_tree(const Signature& sig, const Clause& c) {
  return clause_parse_tree(sig, c.literals);
}

/// Clause trees joined left-to-right with `and` nodes.
CurriedTree conjecture_parse_tree(const Signature& sig, std::span<const Clause> clauses);

/// Fills TreeNode::token from the vocabulary.
void index_tree(CurriedTree& tree, const Vocabulary& vocab);

}  // namespace nnsel::fol
