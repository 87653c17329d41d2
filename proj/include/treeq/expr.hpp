#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "treeq/tree.hpp"

namespace treeq {

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Extended regular tree expression. Immutable, shared. Denotations:
//   Hole(j)          {eps_j}
//   Apply(f, cs)     {f(t1,...,tk) | ti in [[ci]]}
//   Union(l, r)      set union
//   Product(b, l, r) substitute every occurrence of nullary b in l by r
//   Star(b, body)    iterated b-product closure, contains the tree b
//   Comp(h; as)      graft as[i] onto the i-th hole (ascending index) of h
//   Comp1(l, r)      graft r onto the least hole of l, keep the others
//   CStar(body)      iterated self-composition of a 1-homogeneous body
//   IncEps(z, body)  shift every hole index by z
class Expr {
 public:
  enum class Kind { Hole, Apply, Union, Product, Star, Comp, Comp1, CStar, IncEps };

  Kind kind;
  int hole_index = 0;    // Hole
  std::string symbol;    // Apply head, Product/Star anchor
  std::vector<ExprPtr> kids;
  int inc = 0;           // IncEps shift
  int pos = -1;          // source offset, -1 when built in memory

  static ExprPtr hole(int index, int pos = -1);
  static ExprPtr apply(std::string symbol, std::vector<ExprPtr> children = {}, int pos = -1);
  static ExprPtr make_union(ExprPtr l, ExprPtr r, int pos = -1);
  static ExprPtr product(std::string anchor, ExprPtr l, ExprPtr r, int pos = -1);
  static ExprPtr star(std::string anchor, ExprPtr body, int pos = -1);
  static ExprPtr comp(ExprPtr head, std::vector<ExprPtr> args, int pos = -1);
  static ExprPtr comp1(ExprPtr l, ExprPtr r, int pos = -1);
  static ExprPtr cstar(ExprPtr body, int pos = -1);
  static ExprPtr inc_eps(int z, ExprPtr body, int pos = -1);
};

// Structural total order; drives canonical union sorting and state identity.
int compare(const ExprPtr& a, const ExprPtr& b);
bool equal(const ExprPtr& a, const ExprPtr& b);

struct NodeReport {
  int pos;
  int arity;
  IndexSet indices;
};

// Static analysis result: arity k and eps-index set of the denoted language,
// plus one entry per node in pre-order.
struct HomogeneityReport {
  int arity = 0;
  IndexSet indices;
  std::vector<NodeReport> annotations;
};

// Checks the homogeneity discipline of every operator and computes (arity,
// indices) for each node. Throws analysis_error at the offending node.
HomogeneityReport analyze(const Alphabet& a, const ExprPtr& e);

// Grammar (union is lowest precedence, left-associative):
//   E ::= atom | E '+' E
//   atom ::= '@' nat | sym | sym '(' E {',' E} ')' | '(' E ')'
//          | 'prod[' sym '](' E ',' E ')' | 'star[' sym '](' E ')'
//          | 'comp(' E ';' E {',' E} ')' | 'comp1(' E ',' E ')'
//          | 'cstar(' E ')' | 'inc[' nat '](' E ')'
ExprPtr parse_expr(const std::string& text, const Alphabet& a);
std::string to_string(const ExprPtr& e);

ExprPtr expr_of_tree(const Tree& t);
// The tree an Expr literally spells, if it is built from Apply/Hole only.
std::optional<Tree> tree_of_expr(const ExprPtr& e);

}  // namespace treeq
