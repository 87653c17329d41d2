#pragma once

#include "treeq/enumerate.hpp"
#include "treeq/expr.hpp"
#include "treeq/quotients.hpp"

namespace treeq {

// ACI normal form plus the local rules that keep quotient outputs canonical:
// unions flattened/sorted/deduplicated, IncEps fused and pushed down to the
// holes, compositions by an identity hole tuple collapsed, Comp1 with a
// single-hole head rewritten to Comp. Idempotent; language-preserving
// (checked against enumerate).
ExprPtr normalize(const Alphabet& a, const ExprPtr& e);

// Structural test for eps_x in [[e]]; cross-validated against enumerate(_, 1).
bool eps_member(const Alphabet& a, int x, const ExprPtr& e);

// Canonical, duplicate-free, sorted set of normalized expressions denoting a
// union of languages. All members share one (arity, indices); the empty
// state carries them explicitly. Two states are identical iff their keys are.
class QuotientState {
 public:
  QuotientState() = default;

  const std::vector<ExprPtr>& members() const { return members_; }
  int arity() const { return static_cast<int>(indices_.size()); }
  const IndexSet& indices() const { return indices_; }
  bool empty() const { return members_.empty(); }
  bool nullable() const { return nullable_; }

  // Canonical print; the state's identity for hashing and worklists.
  const std::string& key() const { return key_; }

  friend bool operator==(const QuotientState& a, const QuotientState& b) {
    return a.key_ == b.key_;
  }

 private:
  friend QuotientState state_of(const Alphabet&, std::vector<ExprPtr>);
  friend QuotientState empty_state(IndexSet);
  std::vector<ExprPtr> members_;
  IndexSet indices_;
  bool nullable_ = false;
  std::string key_ = "{}";
};

// Normalizes, splits top-level unions into members, sorts and deduplicates,
// and checks union-compatibility. Throws analysis_error on a malformed
// member or mismatched homogeneity.
QuotientState state_of(const Alphabet& a, std::vector<ExprPtr> exprs);
QuotientState empty_state(IndexSet indices);

// alpha^-1 on states: dispatch over the per-operator quotient rules (union,
// symbol product, composition, iterated composition, iterated product,
// holes, and concrete-tree members).
QuotientState d_symbol(const Alphabet& a, const std::string& alpha, const QuotientState& s);

// eps_j^-1 on states: a reindexing of every member, empty when j is absent.
QuotientState d_eps(const Alphabet& a, int j, const QuotientState& s);

// t^-1 on states: the right-to-left chain over t's children with the
// Inc_eps(k-j, .) shifts, then the symbol quotient, then the final hole
// recomposition. Hole divisors dispatch to d_eps, flat patterns to d_symbol.
QuotientState d_tree(const Alphabet& a, const Tree& t, const QuotientState& s);

std::string to_string(const QuotientState& s);
// Parses `{ e1 ; e2 ; ... }` member-wise; `{}` needs explicit indices.
QuotientState parse_state(const std::string& text, const Alphabet& a, IndexSet empty_indices = {1});

// Union of the members' slices.
TreeSet enumerate(const Alphabet& a, const QuotientState& s, int max_size);

}  // namespace treeq
