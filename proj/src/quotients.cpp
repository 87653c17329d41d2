#include "treeq/quotients.hpp"

#include <cassert>
#include <functional>

namespace treeq {

IndexSet quotient_indices(const IndexSet& by, const IndexSet& of) {
  IndexSet out{1};
  for (int y : index_minus(of, by)) out.push_back(y + 1);
  return out;
}

namespace {

// Pattern for the symbol quotient: alpha(@1,...,@k).
Tree symbol_pattern(const std::string& alpha, int k) {
  std::vector<Tree> kids;
  kids.reserve(k);
  for (int i = 1; i <= k; ++i) kids.push_back(Tree::hole(i));
  return Tree::node(alpha, std::move(kids));
}

bool is_identity_tuple(const std::vector<Tree>& kids) {
  for (size_t i = 0; i < kids.size(); ++i)
    if (!kids[i].is_hole() || kids[i].hole_index() != static_cast<int>(i + 1)) return false;
  return true;
}

// One cut of `pattern` somewhere in u: every member replaces one occurrence
// of the pattern by @1 and increments every hole occurrence outside the cut.
// This is the shared shape of the eps and symbol quotients; on well-formed
// trees it coincides with the reindexing and union formulas.
void cut_pattern(const Tree& pattern, const Tree& u, std::set<Tree>& out) {
  if (u == pattern) out.insert(Tree::hole(1));
  if (u.is_hole()) return;
  const auto& kids = u.children();
  for (size_t j = 0; j < kids.size(); ++j) {
    std::set<Tree> inner;
    cut_pattern(pattern, kids[j], inner);
    for (const Tree& v : inner) {
      std::vector<Tree> rebuilt;
      rebuilt.reserve(kids.size());
      for (size_t l = 0; l < kids.size(); ++l)
        rebuilt.push_back(l == j ? v : inc_eps(1, kids[l]));
      out.insert(Tree::node(u.symbol(), std::move(rebuilt)));
    }
  }
}

}  // namespace

TreeSet quotient_by_symbol(const Alphabet& a, const std::string& alpha, const Tree& u) {
  int k = a.arity(alpha);
  std::set<Tree> out;
  cut_pattern(symbol_pattern(alpha, k), u, out);
  IndexSet pattern_indices;
  for (int i = 1; i <= k; ++i) pattern_indices.push_back(i);
  return make_tree_set(out, quotient_indices(pattern_indices, eps_index_set(u)));
}

TreeSet quotient_by_eps(int j, const TreeSet& s) {
  if (j < 1) throw analysis_error("hole index must be >= 1");
  std::set<Tree> out;
  for (const Tree& u : s.trees()) cut_pattern(Tree::hole(j), u, out);
  return make_tree_set(out, quotient_indices({j}, s.indices()));
}

TreeSet quotient_tree_by_tree(const Alphabet& a, const Tree& t, const Tree& u) {
  IndexSet law = quotient_indices(eps_index_set(t), eps_index_set(u));
  if (t.is_hole()) {
    TreeSet s(eps_index_set(u));
    s.insert(u);
    return quotient_by_eps(t.hole_index(), s);
  }
  if (is_identity_tuple(t.children())) return quotient_by_symbol(a, t.symbol(), u);
  if (!index_subset(eps_index_set(t), eps_index_set(u))) return TreeSet(law);

  // Right-to-left chain: quotient by Inc_eps(k-j, t_j) for j = k..1, then by
  // the root symbol. Each step shifts the surviving holes by one, so the
  // final recomposition maps every non-@1 hole w back to w - k.
  int k = static_cast<int>(t.children().size());
  std::set<Tree> current{u};
  for (int j = k; j >= 1; --j) {
    Tree divisor = inc_eps(k - j, t.children()[j - 1]);
    std::set<Tree> next;
    for (const Tree& w : current) {
      TreeSet step = quotient_tree_by_tree(a, divisor, w);
      for (const Tree& v : step.trees()) next.insert(v);
    }
    current.swap(next);
    if (current.empty()) return TreeSet(law);
  }
  std::set<Tree> after_symbol;
  for (const Tree& w : current) {
    TreeSet step = quotient_by_symbol(a, t.symbol(), w);
    for (const Tree& v : step.trees()) after_symbol.insert(v);
  }

  std::set<Tree> out;
  std::function<Tree(const Tree&)> unshift = [&](const Tree& v) -> Tree {
    if (v.is_hole()) return v.hole_index() == 1 ? v : Tree::hole(v.hole_index() - k);
    std::vector<Tree> kids;
    kids.reserve(v.children().size());
    for (const Tree& c : v.children()) kids.push_back(unshift(c));
    return Tree::node(v.symbol(), std::move(kids));
  };
  for (const Tree& v : after_symbol) out.insert(unshift(v));
  return make_tree_set(out, law);
}

TreeSet quotient_finite(const Alphabet& a, const Tree& t, const TreeSet& s) {
  TreeSet out(quotient_indices(eps_index_set(t), s.indices()));
  for (const Tree& u : s.trees())
    out = TreeSet::union_of(out, quotient_tree_by_tree(a, t, u));
  return out;
}

namespace {

// u with the subtree at `path` replaced by @1 and every hole occurrence
// outside the path incremented.
Tree cut_at(const Tree& u, const std::vector<int>& path, size_t depth) {
  if (depth == path.size()) return Tree::hole(1);
  if (u.is_hole()) return Tree::hole(u.hole_index() + 1);
  std::vector<Tree> kids;
  kids.reserve(u.children().size());
  for (size_t i = 0; i < u.children().size(); ++i) {
    if (static_cast<int>(i) == path[depth])
      kids.push_back(cut_at(u.children()[i], path, depth + 1));
    else
      kids.push_back(inc_eps(1, u.children()[i]));
  }
  return Tree::node(u.symbol(), std::move(kids));
}

void positions_equal_to(const Tree& u, const Tree& t, std::vector<int>& path,
                        std::vector<std::vector<int>>& hits) {
  if (u == t) hits.push_back(path);
  if (u.is_hole()) return;
  for (size_t i = 0; i < u.children().size(); ++i) {
    path.push_back(static_cast<int>(i));
    positions_equal_to(u.children()[i], t, path, hits);
    path.pop_back();
  }
}

}  // namespace

TreeSet brute_force_quotient(const Alphabet& a, const Tree& t, const Tree& u) {
  (void)a;
  std::vector<std::vector<int>> hits;
  std::vector<int> path;
  positions_equal_to(u, t, path, hits);
  std::set<Tree> out;
  for (const auto& p : hits) out.insert(cut_at(u, p, 0));
  return make_tree_set(out, quotient_indices(eps_index_set(t), eps_index_set(u)));
}

}  // namespace treeq
