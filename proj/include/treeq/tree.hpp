#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "treeq/alphabet.hpp"

namespace treeq {

// Sorted, duplicate-free set of hole indices. Small enough everywhere that a
// plain vector beats std::set.
using IndexSet = std::vector<int>;

IndexSet index_union(const IndexSet& a, const IndexSet& b);
IndexSet index_minus(const IndexSet& a, const IndexSet& b);
IndexSet index_shift(const IndexSet& a, int z);
bool index_contains(const IndexSet& a, int j);
bool index_subset(const IndexSet& a, const IndexSet& b);
bool index_disjoint(const IndexSet& a, const IndexSet& b);
std::string to_string(const IndexSet& a);

// Ranked tree whose leaves may be indexed holes. Immutable; copies share
// structure. size() counts every node including hole leaves.
class Tree {
 public:
  static Tree hole(int index);
  static Tree node(std::string symbol, std::vector<Tree> children = {});

  bool is_hole() const { return rep_->hole != 0; }
  int hole_index() const { return rep_->hole; }
  const std::string& symbol() const { return rep_->sym; }
  const std::vector<Tree>& children() const { return rep_->kids; }
  int size() const { return rep_->size; }

  friend bool operator==(const Tree& a, const Tree& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Tree& a, const Tree& b) { return compare(a, b) != 0; }
  friend bool operator<(const Tree& a, const Tree& b) { return compare(a, b) < 0; }

  // Canonical total order: holes before nodes, holes by index, nodes by
  // symbol then children lexicographically.
  static int compare(const Tree& a, const Tree& b);

 private:
  struct Rep {
    int hole = 0;  // 0 for nodes, >= 1 for holes
    std::string sym;
    std::vector<Tree> kids;
    int size = 1;
  };
  explicit Tree(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

// Ind_eps(t) in natural order; throws analysis_error if an index repeats
// (the disjoint-R_j invariant).
IndexSet eps_indices(const Tree& t);

// Set of hole indices with duplicates collapsed; never throws. The quotient
// algebra uses this where repeated indices must be tolerated.
IndexSet eps_index_set(const Tree& t);
bool has_duplicate_eps(const Tree& t);

// Grafts args[l] onto the hole of index x_l, where Ind_eps(t) = {x_1 < ...}.
// Requires one argument per hole index and pairwise disjoint hole sets among
// the arguments.
Tree compose(const Tree& t, const std::vector<Tree>& args);

// Partial composition: grafts u onto the least-indexed hole, keeping the
// remaining holes fixed.
Tree compose1(const Tree& t, const Tree& u);

// Substitutes every hole index x by x + z.
Tree inc_eps(int z, const Tree& t);

struct Diagnostic {
  std::string path;  // e.g. "root.2.1", child positions 1-based
  std::string message;
};

// Checks symbols, arities and hole-index distinctness over `a`.
std::vector<Diagnostic> validate(const Tree& t, const Alphabet& a);

// Finite homogeneous tree set. Carries its eps-index set explicitly so that
// the empty set still knows its arity. Iteration follows the canonical order.
class TreeSet {
 public:
  TreeSet() = default;
  explicit TreeSet(IndexSet indices) : indices_(std::move(indices)) {}
  TreeSet(std::initializer_list<Tree> trees);

  void insert(const Tree& t);
  bool contains(const Tree& t) const { return trees_.count(t) != 0; }
  bool empty() const { return trees_.empty(); }
  size_t size() const { return trees_.size(); }

  const std::set<Tree>& trees() const { return trees_; }
  const IndexSet& indices() const { return indices_; }
  int arity() const { return static_cast<int>(indices_.size()); }

  static TreeSet union_of(const TreeSet& a, const TreeSet& b);

  friend bool operator==(const TreeSet& a, const TreeSet& b) {
    return a.indices_ == b.indices_ && a.trees_ == b.trees_;
  }

 private:
  std::set<Tree> trees_;
  IndexSet indices_;
};

// Wraps a raw set: indices from the members when nonempty, `fallback` when
// empty. Members must agree on their index set.
TreeSet make_tree_set(const std::set<Tree>& trees, IndexSet fallback);

// Text syntax: `name` for nullary, `name(t1,...,tk)` for arity k, `@j` for a
// hole (j >= 1). Whitespace insignificant.
Tree parse_tree(const std::string& text, const Alphabet& a);
std::string to_string(const Tree& t);
std::string to_string(const TreeSet& s);  // `{ t1 ; t2 }`, `{}` when empty

// Every 0-ary tree over `a` with size <= max_size, in canonical order.
std::vector<Tree> all_trees(const Alphabet& a, int max_size);
// Every unary context (single hole, index 1) with size <= max_size.
std::vector<Tree> all_contexts(const Alphabet& a, int max_size);

}  // namespace treeq
