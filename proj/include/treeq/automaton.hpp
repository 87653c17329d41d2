#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "treeq/symbolic.hpp"

namespace treeq {

// Bottom-up tree automaton (Sigma, Q, F, delta). States are dense ids.
// Nullary transitions are stored under the empty argument tuple. delta maps
// (symbol, argument states) to a set of targets; deterministic means every
// entry has at most one target.
struct TreeAutomaton {
  Alphabet alphabet;
  int num_states = 0;
  std::set<int> finals;
  std::map<std::pair<std::string, std::vector<int>>, std::set<int>> delta;
  std::map<int, std::string> labels;  // optional, e.g. canonical state prints

  bool deterministic() const;
  std::set<int> step(const std::string& symbol, const std::vector<int>& args) const;
};

// Delta(t) for a hole-free tree.
std::set<int> run_delta(const TreeAutomaton& a, const Tree& t);
// Delta(c, q) for a unary context with hole index 1.
std::set<int> run_context(const TreeAutomaton& a, const Tree& c, int q);
bool accepts(const TreeAutomaton& a, const Tree& t);

// Drops non-accessible states; the recognized language is unchanged.
TreeAutomaton trim(const TreeAutomaton& a);

// Subset construction over the accessible subsets. The empty subset is not
// materialized, so determinizing a deterministic automaton is its trim.
TreeAutomaton determinize(const TreeAutomaton& a);

// Moore partition refinement on a deterministic accessible automaton: totals
// delta with an internal sink, refines by finality and successor blocks, and
// drops dead blocks (empty top language) on output. Throws analysis_error on
// nondeterministic input.
TreeAutomaton minimize(const TreeAutomaton& a);

// Compiles a 0-homogeneous expression to a nondeterministic automaton via
// hole reification, then compositional constructions for apply, union,
// product and star; anchor symbols are resolved away by the products.
TreeAutomaton expr_to_nfa(const Alphabet& a, const ExprPtr& e);

// The bottom-up quotient automaton A_L of a 0-homogeneous expression:
// states are the canonical quotient states t^-1(L), finals those containing
// eps_1, delta(f, t1^-1 L, ..., tk^-1 L) = { f(t1,...,tk)^-1 L }.
// Deterministic by construction. Witness trees (a down-language member per
// state) realize the chain state-wise. Throws budget_error when the number
// of distinct canonical states exceeds `budget`.
struct QuotientAutomaton {
  TreeAutomaton automaton;
  std::vector<QuotientState> states;  // by state id
  std::vector<Tree> witnesses;        // by state id, 0-ary
};
QuotientAutomaton build_quotient_automaton(const Alphabet& a, const ExprPtr& e, int budget = 512);

// Contexts c of size <= max_size with Delta(c, q) meeting the finals.
TreeSet top_language_slice(const TreeAutomaton& a, int q, int max_size);

// t^-1(L(A)) restricted to contexts of size <= max_size, via the union of
// the top languages over Delta(t).
TreeSet quotient_via_automaton(const TreeAutomaton& a, const Tree& t, int max_size);

// Total map from states of A1 to states of A2 with phi(F1) inside F2 and
// transitions mapped to transitions.
struct Morphism {
  std::map<int, int> phi;
};
bool check_morphism(const TreeAutomaton& a1, const TreeAutomaton& a2, const Morphism& m);

// Shortest down-language witness per state (ties broken by canonical tree
// order); throws analysis_error if some state is not accessible.
std::vector<Tree> state_witnesses(const TreeAutomaton& a);

// The morphism of Prop-11 shape: maps each state q of an accessible
// deterministic automaton for [[e]] to the quotient state witness(q)^-1(L),
// located inside `target` (a built quotient automaton for e).
Morphism compute_phi(const TreeAutomaton& a, const QuotientAutomaton& target, const Alphabet& sigma,
                     const ExprPtr& e);

// Bijective-morphism check in both directions by synchronized traversal from
// the nullary transitions; expects deterministic, accessible, trim inputs.
bool isomorphic(const TreeAutomaton& a1, const TreeAutomaton& a2);

std::string to_json(const TreeAutomaton& a);
TreeAutomaton automaton_from_json(const std::string& text);
std::string to_dot(const TreeAutomaton& a);

}  // namespace treeq
