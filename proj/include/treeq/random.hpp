#pragma once

#include <cstdint>

#include "treeq/tree.hpp"

namespace treeq {

// Deterministic generator for the property suites. Thin xorshift-style PRNG
// so outputs are identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  uint64_t next();
  int below(int n);  // uniform in [0, n)
  bool chance(int num, int den);

 private:
  uint64_t state_;
};

// Random tree over `a` with size <= max_size. Holes appear with probability
// hole_percent/100 at leaf positions; indices are drawn from 1..9 and made
// pairwise distinct afterwards.
Tree random_tree(Rng& rng, const Alphabet& a, int max_size, int hole_percent = 0);

// Dividend u and divisor t for quotient testing: u random, t either a
// subtree of u (likely hit) or an independent random tree (likely miss).
struct QuotientCase {
  Tree divisor;
  Tree dividend;
};
QuotientCase random_quotient_case(Rng& rng, const Alphabet& a, int max_dividend);

}  // namespace treeq
