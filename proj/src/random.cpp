#include "treeq/random.hpp"

#include <algorithm>
#include <functional>

namespace treeq {

uint64_t Rng::next() {
  // xorshift64star
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 0x2545F4914F6CDD1Dull;
}

int Rng::below(int n) { return n <= 1 ? 0 : static_cast<int>(next() % static_cast<uint64_t>(n)); }

bool Rng::chance(int num, int den) { return below(den) < num; }

namespace {

// Shape first (hole leaves carry a placeholder index), distinct indices after.
Tree random_shape(Rng& rng, const Alphabet& a, int budget, int hole_percent) {
  if (budget >= 2 && !rng.chance(3, 5)) {
    std::vector<std::pair<std::string, int>> candidates;
    for (const auto& [name, k] : a.symbols())
      if (k >= 1 && 1 + k <= budget) candidates.emplace_back(name, k);
    if (!candidates.empty()) {
      auto [name, k] = candidates[rng.below(static_cast<int>(candidates.size()))];
      int left = budget - 1;
      std::vector<Tree> kids;
      for (int i = 0; i < k; ++i) {
        int reserve = k - i - 1;
        int share = 1 + rng.below(std::max(1, left - reserve));
        kids.push_back(random_shape(rng, a, share, hole_percent));
        left -= kids.back().size();
      }
      return Tree::node(name, std::move(kids));
    }
  }
  if (rng.chance(hole_percent, 100)) return Tree::hole(1);
  std::vector<std::string> leaves = a.with_arity(0);
  return Tree::node(leaves[rng.below(static_cast<int>(leaves.size()))]);
}

int count_holes(const Tree& t) {
  if (t.is_hole()) return 1;
  int n = 0;
  for (const Tree& c : t.children()) n += count_holes(c);
  return n;
}

Tree assign_hole_indices(const Tree& t, const std::vector<int>& indices, int& next) {
  if (t.is_hole()) return Tree::hole(indices[next++]);
  std::vector<Tree> kids;
  kids.reserve(t.children().size());
  for (const Tree& c : t.children()) kids.push_back(assign_hole_indices(c, indices, next));
  return Tree::node(t.symbol(), std::move(kids));
}

}  // namespace

Tree random_tree(Rng& rng, const Alphabet& a, int max_size, int hole_percent) {
  int budget = 1 + rng.below(std::max(1, max_size));
  Tree shape = random_shape(rng, a, budget, hole_percent);
  int holes = count_holes(shape);
  if (holes == 0) return shape;
  int range = std::max(9, holes);
  std::vector<int> pool;
  for (int i = 1; i <= range; ++i) pool.push_back(i);
  for (int i = range - 1; i > 0; --i) std::swap(pool[i], pool[rng.below(i + 1)]);
  pool.resize(holes);
  int cursor = 0;
  return assign_hole_indices(shape, pool, cursor);
}

namespace {

void collect_subtrees(const Tree& t, std::vector<Tree>& out) {
  out.push_back(t);
  for (const Tree& c : t.children()) collect_subtrees(c, out);
}

}  // namespace

QuotientCase random_quotient_case(Rng& rng, const Alphabet& a, int max_dividend) {
  Tree u = random_tree(rng, a, max_dividend, 15);
  Tree t = u;
  if (rng.chance(1, 2)) {
    std::vector<Tree> subs;
    collect_subtrees(u, subs);
    t = subs[rng.below(static_cast<int>(subs.size()))];
  } else {
    t = random_tree(rng, a, 4, 15);
  }
  return {t, u};
}

}  // namespace treeq
