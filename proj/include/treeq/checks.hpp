#pragma once

#include <cstdint>
#include <ostream>

#include "treeq/automaton.hpp"

namespace treeq {

// The fixed expression corpus used by the equivalence suites: the worked
// example's languages and intermediates plus assorted coverage of every
// operator. All expressions are over corpus_alphabet().
Alphabet corpus_alphabet();
std::vector<ExprPtr> corpus();

// Options for the cross-validation suites wired into `treeq check`.
struct CheckOptions {
  uint64_t seed = 1;
  int random_cases = 1000;  // tree-quotient oracle pairs
  int max_tree_size = 12;   // dividend size for random pairs
  int slice = 8;            // slice bound for symbolic-vs-enumeration
  int budget = 512;
};

struct CheckResult {
  int cases = 0;
  int failures = 0;
  std::string first_failure;  // minimal counterexample description
};

// Runs every property suite: compose vs textual substitution, the Eq-style
// identities, chain-vs-brute-force quotients, symbolic-vs-enumeration per
// operator rule, normalize preservation, nullability vs enumeration, and
// reification equality. Logs one line per suite; deterministic in the seed.
CheckResult run_checks(const CheckOptions& opt, std::ostream& log);

}  // namespace treeq
