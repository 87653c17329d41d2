#pragma once

#include "treeq/expr.hpp"

namespace treeq {

// Exactly { t in [[e]] : size(t) <= max_size }. Terminates for every bound
// because the product and the composition cannot shrink trees: anchors and
// holes have size 1 and every substituted tree has size >= 1.
TreeSet enumerate(const Alphabet& a, const ExprPtr& e, int max_size);

// t in [[e]] for 0-ary t and 0-homogeneous e; complete because enumerate is
// size-exact.
bool member(const Alphabet& a, const Tree& t, const ExprPtr& e);

struct Reified {
  ExprPtr expr;                             // Apply/Union/Product/Star only
  std::map<int, std::string> hole_symbols;  // free hole index -> anchor name
  Alphabet enlarged;                        // alphabet plus anchor symbols
};

// Replaces every hole by a fresh nullary anchor symbol and re-expresses the
// composition operators through symbol products over the enlarged alphabet.
// Language-preserving up to mapping anchors back to holes; checked by the
// enumerate-equality oracle, not trusted.
Reified reify_holes(const Alphabet& a, const ExprPtr& e);

}  // namespace treeq
