#pragma once

#include "treeq/tree.hpp"

namespace treeq {

// Bottom-up quotients of concrete trees and finite tree sets. The quotient
// of u by t is the set of trees v with one fresh hole @1 such that grafting
// t back at @1 (and mapping the shifted leftover holes back) rebuilds u:
// every hole occurrence of u outside the cut position is incremented by 1.

// alpha^-1(u): cuts occurrences of the pattern alpha(@1,...,@k).
TreeSet quotient_by_symbol(const Alphabet& a, const std::string& alpha, const Tree& u);

// eps_j^-1(s): a reindexing when j occurs in s, empty otherwise.
TreeSet quotient_by_eps(int j, const TreeSet& s);

// t^-1(u) by the inductive right-to-left chain over t's children, with the
// Inc_eps(k-j, .) shifts and the final hole recomposition.
TreeSet quotient_tree_by_tree(const Alphabet& a, const Tree& t, const Tree& u);

// t^-1(s): member-wise union.
TreeSet quotient_finite(const Alphabet& a, const Tree& t, const TreeSet& s);

// Independent oracle: scans every node position of u for a subtree equal to
// t (hole indices included); each hit yields u with that position replaced
// by @1 and every other hole occurrence incremented.
TreeSet brute_force_quotient(const Alphabet& a, const Tree& t, const Tree& u);

// Index set of any quotient of a set with indices `of` by a divisor with
// indices `by`: {1} + {y+1 : y in of \ by}. Used for empty results too, so
// unions stay homogeneous.
IndexSet quotient_indices(const IndexSet& by, const IndexSet& of);

}  // namespace treeq
