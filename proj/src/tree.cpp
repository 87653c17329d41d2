#include "treeq/tree.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <functional>
#include <sstream>

namespace treeq {

IndexSet index_union(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

IndexSet index_minus(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

IndexSet index_shift(const IndexSet& a, int z) {
  IndexSet out;
  out.reserve(a.size());
  for (int x : a) out.push_back(x + z);
  return out;
}

bool index_contains(const IndexSet& a, int j) {
  return std::binary_search(a.begin(), a.end(), j);
}

bool index_subset(const IndexSet& a, const IndexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool index_disjoint(const IndexSet& a, const IndexSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j)
      ++i;
    else if (*j < *i)
      ++j;
    else
      return false;
  }
  return true;
}

std::string to_string(const IndexSet& a) {
  std::ostringstream out;
  out << "{";
  for (size_t i = 0; i < a.size(); ++i) out << (i ? "," : "") << a[i];
  out << "}";
  return out.str();
}

Tree Tree::hole(int index) {
  if (index < 1) throw analysis_error("hole index must be >= 1, got " + std::to_string(index));
  auto rep = std::make_shared<Rep>();
  rep->hole = index;
  return Tree(std::move(rep));
}

Tree Tree::node(std::string symbol, std::vector<Tree> children) {
  auto rep = std::make_shared<Rep>();
  rep->sym = std::move(symbol);
  int size = 1;
  for (const Tree& c : children) size += c.size();
  rep->kids = std::move(children);
  rep->size = size;
  return Tree(std::move(rep));
}

int Tree::compare(const Tree& a, const Tree& b) {
  if (a.rep_ == b.rep_) return 0;
  if (a.is_hole() != b.is_hole()) return a.is_hole() ? -1 : 1;
  if (a.is_hole()) return a.hole_index() - b.hole_index();
  if (int c = a.symbol().compare(b.symbol())) return c < 0 ? -1 : 1;
  const auto& ka = a.children();
  const auto& kb = b.children();
  for (size_t i = 0; i < ka.size() && i < kb.size(); ++i)
    if (int c = compare(ka[i], kb[i])) return c;
  if (ka.size() != kb.size()) return ka.size() < kb.size() ? -1 : 1;
  return 0;
}

namespace {

void collect_holes(const Tree& t, std::vector<int>& out) {
  if (t.is_hole()) {
    out.push_back(t.hole_index());
    return;
  }
  for (const Tree& c : t.children()) collect_holes(c, out);
}

}  // namespace

IndexSet eps_indices(const Tree& t) {
  std::vector<int> occ;
  collect_holes(t, occ);
  std::sort(occ.begin(), occ.end());
  for (size_t i = 1; i < occ.size(); ++i)
    if (occ[i] == occ[i - 1])
      throw analysis_error("malformed tree: hole index " + std::to_string(occ[i]) +
                           " occurs more than once");
  return occ;
}

IndexSet eps_index_set(const Tree& t) {
  std::vector<int> occ;
  collect_holes(t, occ);
  std::sort(occ.begin(), occ.end());
  occ.erase(std::unique(occ.begin(), occ.end()), occ.end());
  return occ;
}

bool has_duplicate_eps(const Tree& t) {
  std::vector<int> occ;
  collect_holes(t, occ);
  std::sort(occ.begin(), occ.end());
  return std::adjacent_find(occ.begin(), occ.end()) != occ.end();
}

namespace {

Tree substitute_holes(const Tree& t, const std::map<int, Tree>& by_index) {
  if (t.is_hole()) {
    auto it = by_index.find(t.hole_index());
    return it == by_index.end() ? t : it->second;
  }
  std::vector<Tree> kids;
  kids.reserve(t.children().size());
  for (const Tree& c : t.children()) kids.push_back(substitute_holes(c, by_index));
  return Tree::node(t.symbol(), std::move(kids));
}

}  // namespace

Tree compose(const Tree& t, const std::vector<Tree>& args) {
  IndexSet holes = eps_index_set(t);
  if (holes.size() != args.size())
    throw analysis_error("compose: tree has " + std::to_string(holes.size()) +
                         " holes but got " + std::to_string(args.size()) + " arguments");
  for (size_t i = 0; i < args.size(); ++i)
    for (size_t j = i + 1; j < args.size(); ++j)
      if (!index_disjoint(eps_index_set(args[i]), eps_index_set(args[j])))
        throw analysis_error("compose: argument hole sets overlap");
  std::map<int, Tree> by_index;
  for (size_t i = 0; i < args.size(); ++i) by_index.emplace(holes[i], args[i]);
  return substitute_holes(t, by_index);
}

Tree compose1(const Tree& t, const Tree& u) {
  IndexSet holes = eps_index_set(t);
  if (holes.empty()) throw analysis_error("compose1: tree has no hole");
  std::vector<Tree> args;
  args.push_back(u);
  for (size_t i = 1; i < holes.size(); ++i) args.push_back(Tree::hole(holes[i]));
  return compose(t, args);
}

Tree inc_eps(int z, const Tree& t) {
  if (z < 0) throw analysis_error("inc_eps: negative shift");
  if (z == 0) return t;
  if (t.is_hole()) return Tree::hole(t.hole_index() + z);
  std::vector<Tree> kids;
  kids.reserve(t.children().size());
  for (const Tree& c : t.children()) kids.push_back(inc_eps(z, c));
  return Tree::node(t.symbol(), std::move(kids));
}

namespace {

void validate_rec(const Tree& t, const Alphabet& a, const std::string& path,
                  std::vector<Diagnostic>& out) {
  if (t.is_hole()) return;
  if (!a.contains(t.symbol())) {
    out.push_back({path, "undeclared symbol '" + t.symbol() + "'"});
  } else if (a.arity(t.symbol()) != static_cast<int>(t.children().size())) {
    out.push_back({path, "symbol '" + t.symbol() + "' has arity " +
                             std::to_string(a.arity(t.symbol())) + " but " +
                             std::to_string(t.children().size()) + " children"});
  }
  for (size_t i = 0; i < t.children().size(); ++i)
    validate_rec(t.children()[i], a, path + "." + std::to_string(i + 1), out);
}

}  // namespace

std::vector<Diagnostic> validate(const Tree& t, const Alphabet& a) {
  std::vector<Diagnostic> out;
  validate_rec(t, a, "root", out);
  std::vector<int> occ;
  collect_holes(t, occ);
  std::sort(occ.begin(), occ.end());
  for (size_t i = 1; i < occ.size(); ++i)
    if (occ[i] == occ[i - 1]) {
      out.push_back({"root", "hole index " + std::to_string(occ[i]) + " occurs more than once"});
      break;
    }
  return out;
}

TreeSet::TreeSet(std::initializer_list<Tree> trees) {
  for (const Tree& t : trees) insert(t);
}

void TreeSet::insert(const Tree& t) {
  IndexSet is = eps_index_set(t);
  if (trees_.empty() && indices_.empty())
    indices_ = is;
  else if (is != indices_)
    throw analysis_error("tree set is not homogeneous: member indices " + to_string(is) +
                         " differ from " + to_string(indices_));
  trees_.insert(t);
}

TreeSet TreeSet::union_of(const TreeSet& a, const TreeSet& b) {
  if (!a.empty() && !b.empty() && a.indices() != b.indices())
    throw analysis_error("union of tree sets with different indices " + to_string(a.indices()) +
                         " vs " + to_string(b.indices()));
  TreeSet out(a.empty() ? (b.empty() ? a.indices() : b.indices()) : a.indices());
  for (const Tree& t : a.trees()) out.insert(t);
  for (const Tree& t : b.trees()) out.insert(t);
  return out;
}

TreeSet make_tree_set(const std::set<Tree>& trees, IndexSet fallback) {
  if (trees.empty()) return TreeSet(std::move(fallback));
  TreeSet out(eps_index_set(*trees.begin()));
  for (const Tree& t : trees) out.insert(t);
  return out;
}

namespace {

struct TreeCursor {
  const std::string& text;
  const Alphabet& alphabet;
  size_t at = 0;

  void skip_ws() {
    while (at < text.size() && std::isspace(static_cast<unsigned char>(text[at]))) ++at;
  }
  char peek() {
    skip_ws();
    return at < text.size() ? text[at] : '\0';
  }

  Tree parse() {
    skip_ws();
    int pos = static_cast<int>(at);
    if (peek() == '@') {
      ++at;
      size_t start = at;
      while (at < text.size() && std::isdigit(static_cast<unsigned char>(text[at]))) ++at;
      if (at == start) throw parse_error("expected a hole index after '@'", pos);
      int j = std::stoi(text.substr(start, at - start));
      if (j < 1) throw parse_error("hole index must be >= 1", pos);
      return Tree::hole(j);
    }
    size_t start = at;
    while (at < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[at])) || text[at] == '_' || text[at] == '\''))
      ++at;
    if (at == start) throw parse_error("expected a symbol or '@'", pos);
    std::string name = text.substr(start, at - start);
    if (!alphabet.contains(name)) throw parse_error("undeclared symbol '" + name + "'", pos);
    int k = alphabet.arity(name);
    std::vector<Tree> kids;
    if (peek() == '(') {
      ++at;
      if (peek() != ')') {
        kids.push_back(parse());
        while (peek() == ',') {
          ++at;
          kids.push_back(parse());
        }
      }
      skip_ws();
      if (peek() != ')') throw parse_error("expected ')'", static_cast<int>(at));
      ++at;
    }
    if (static_cast<int>(kids.size()) != k)
      throw parse_error("symbol '" + name + "' has arity " + std::to_string(k) + " but " +
                            std::to_string(kids.size()) + " arguments",
                        pos);
    return Tree::node(name, std::move(kids));
  }
};

}  // namespace

Tree parse_tree(const std::string& text, const Alphabet& a) {
  TreeCursor c{text, a};
  Tree t = c.parse();
  c.skip_ws();
  if (c.at != text.size()) throw parse_error("trailing input after tree", static_cast<int>(c.at));
  return t;
}

namespace {

void print_tree(const Tree& t, std::string& out) {
  if (t.is_hole()) {
    out += "@";
    out += std::to_string(t.hole_index());
    return;
  }
  out += t.symbol();
  if (!t.children().empty()) {
    out += "(";
    for (size_t i = 0; i < t.children().size(); ++i) {
      if (i) out += ",";
      print_tree(t.children()[i], out);
    }
    out += ")";
  }
}

}  // namespace

std::string to_string(const Tree& t) {
  std::string out;
  print_tree(t, out);
  return out;
}

std::string to_string(const TreeSet& s) {
  if (s.empty()) return "{}";
  std::string out = "{ ";
  bool first = true;
  for (const Tree& t : s.trees()) {
    if (!first) out += " ; ";
    print_tree(t, out);
    first = false;
  }
  out += " }";
  return out;
}

namespace {

// All trees of exactly `size` nodes; `with_hole` selects contexts that carry
// the single hole @1 vs hole-free trees. Memoized per call in `memo`.
using SliceKey = std::pair<int, bool>;

const std::vector<Tree>& slice(const Alphabet& a, int size, bool with_hole,
                               std::map<SliceKey, std::vector<Tree>>& memo) {
  auto it = memo.find({size, with_hole});
  if (it != memo.end()) return it->second;
  std::vector<Tree> out;
  if (size >= 1) {
    if (size == 1 && with_hole) out.push_back(Tree::hole(1));
    for (const auto& [name, k] : a.symbols()) {
      if (k == 0) {
        if (size == 1 && !with_hole) out.push_back(Tree::node(name));
        continue;
      }
      if (size < k + 1) continue;
      // distribute size-1 nodes over k children; the hole, when requested,
      // goes into exactly one child
      std::vector<Tree> kids;
      std::function<void(int, int, int)> build = [&](int child, int left, int hole_at) {
        if (child == k) {
          if (left == 0) out.push_back(Tree::node(name, kids));
          return;
        }
        int remaining_min = k - child - 1;
        for (int s = 1; s + remaining_min <= left; ++s) {
          bool child_hole = with_hole && hole_at == child;
          for (const Tree& c : slice(a, s, child_hole, memo)) {
            kids.push_back(c);
            build(child + 1, left - s, hole_at);
            kids.pop_back();
          }
        }
      };
      if (with_hole) {
        for (int hole_at = 0; hole_at < k; ++hole_at) build(0, size - 1, hole_at);
      } else {
        build(0, size - 1, -1);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return memo.emplace(SliceKey{size, with_hole}, std::move(out)).first->second;
}

std::vector<Tree> all_up_to(const Alphabet& a, int max_size, bool with_hole) {
  std::map<SliceKey, std::vector<Tree>> memo;
  std::vector<Tree> out;
  for (int s = 1; s <= max_size; ++s) {
    const auto& at_s = slice(a, s, with_hole, memo);
    out.insert(out.end(), at_s.begin(), at_s.end());
  }
  return out;
}

}  // namespace

std::vector<Tree> all_trees(const Alphabet& a, int max_size) {
  return all_up_to(a, max_size, false);
}

std::vector<Tree> all_contexts(const Alphabet& a, int max_size) {
  return all_up_to(a, max_size, true);
}

}  // namespace treeq
