#include "nnsel/fol/parse_tree.hpp"

#include <algorithm>

namespace nnsel::fol {

namespace {

class TreeBuilder {
 public:
  TreeBuilder(const Signature& sig, CurriedTree& tree) : sig_(sig), tree_(tree) {}

  std::int32_t leaf(std::string symbol) {
    TreeNode n;
    n.kind = NodeKind::Leaf;
    n.symbol = std::move(symbol);
    return push(std::move(n));
  }

  std::int32_t node(NodeKind kind, std::int32_t left, std::int32_t right = -1) {
    TreeNode n;
    n.kind = kind;
    n.left = left;
    n.right = right;
    return push(std::move(n));
  }

  std::int32_t term(const Term& t) {
    if (t.is_var()) return leaf("V" + std::to_string(t.var()));
    std::int32_t acc = leaf(sig_[t.functor()].name);
    for (const auto& a : t.args()) {
      std::int32_t arg = term(a);
      acc = node(NodeKind::Apply, acc, arg);
    }
    return acc;
  }

  std::int32_t clause(const std::vector<Literal>& literals) {
    if (literals.empty()) return leaf("$false");
    std::int32_t acc = -1;
    for (const auto& l : literals) {
      std::int32_t lit = term(l.atom);
      if (!l.positive) lit = node(NodeKind::Not, lit);
      acc = acc < 0 ? lit : node(NodeKind::Or, acc, lit);
    }
    return acc;
  }

 private:
  std::int32_t push(TreeNode n) {
    tree_.nodes.push_back(std::move(n));
    return static_cast<std::int32_t>(tree_.nodes.size()) - 1;
  }

  const Signature& sig_;
  CurriedTree& tree_;
};

}  // namespace

std::size_t CurriedTree::count(NodeKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [kind](const TreeNode& n) { return n.kind == kind; }));
}

CurriedTree clause_parse_tree(const Signature& sig, const std::vector<Literal>& literals) {
  CurriedTree tree;
  TreeBuilder(sig, tree).clause(literals);
  return tree;
}

CurriedTree conjecture_parse_tree(const Signature& sig, std::span<const Clause> clauses) {
  CurriedTree tree;
  TreeBuilder b(sig, tree);
  if (clauses.empty()) {
    b.leaf("$true");
    return tree;
  }
  std::int32_t acc = -1;
  for (const auto& c : clauses) {
    std::int32_t t = b.clause(c.literals);
    acc = acc < 0 ? t : b.node(NodeKind::And, acc, t);
  }
  return tree;
}

void index_tree(CurriedTree& tree, const Vocabulary& vocab) {
  for (auto& n : tree.nodes) {
    if (n.kind == NodeKind::Leaf) n.token = vocab.index(n.symbol);
  }
}

}  // namespace nnsel::fol
