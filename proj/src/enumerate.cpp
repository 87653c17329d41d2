#include "treeq/enumerate.hpp"

#include <functional>
#include <map>

namespace treeq {

namespace {

// Slice evaluator. Every operator is size-non-decreasing (anchors and holes
// weigh 1, substituted trees weigh >= 1), so evaluating each subexpression
// to the full bound and filtering at combination time is exact.
struct Enumerator {
  const Alphabet& a;
  int max;
  std::map<const Expr*, std::set<Tree>> memo;

  const std::set<Tree>& eval(const ExprPtr& e) {
    auto it = memo.find(e.get());
    if (it != memo.end()) return it->second;
    std::set<Tree> out = compute(e);
    return memo.emplace(e.get(), std::move(out)).first->second;
  }

  // All b-substitutions of t by members of `repl`, pruned to the bound.
  std::set<Tree> substitute(const Tree& t, const std::string& b, const std::set<Tree>& repl) {
    if (t.is_hole()) return {t};
    if (t.children().empty()) {
      if (t.symbol() == b) {
        std::set<Tree> out;
        for (const Tree& r : repl)
          if (r.size() <= max) out.insert(r);
        return out;
      }
      return {t};
    }
    std::set<Tree> out;
    std::vector<std::set<Tree>> per_child;
    per_child.reserve(t.children().size());
    for (const Tree& c : t.children()) per_child.push_back(substitute(c, b, repl));
    std::vector<Tree> combo;
    std::function<void(size_t, int)> build = [&](size_t i, int used) {
      if (used > max) return;
      if (i == per_child.size()) {
        out.insert(Tree::node(t.symbol(), combo));
        return;
      }
      for (const Tree& c : per_child[i]) {
        combo.push_back(c);
        build(i + 1, used + c.size());
        combo.pop_back();
      }
    };
    build(0, 1);
    return out;
  }

  std::set<Tree> compute(const ExprPtr& e) {
    std::set<Tree> out;
    if (max < 1) return out;
    switch (e->kind) {
      case Expr::Kind::Hole:
        out.insert(Tree::hole(e->hole_index));
        break;
      case Expr::Kind::Apply: {
        std::vector<Tree> combo;
        std::function<void(size_t, int)> build = [&](size_t i, int used) {
          if (used > max) return;
          if (i == e->kids.size()) {
            out.insert(Tree::node(e->symbol, combo));
            return;
          }
          for (const Tree& c : eval(e->kids[i])) {
            if (used + c.size() > max) continue;
            combo.push_back(c);
            build(i + 1, used + c.size());
            combo.pop_back();
          }
        };
        build(0, 1);
        break;
      }
      case Expr::Kind::Union: {
        out = eval(e->kids[0]);
        for (const Tree& t : eval(e->kids[1])) out.insert(t);
        break;
      }
      case Expr::Kind::Product: {
        const auto& right = eval(e->kids[1]);
        for (const Tree& t : eval(e->kids[0]))
          for (const Tree& s : substitute(t, e->symbol, right)) out.insert(s);
        break;
      }
      case Expr::Kind::Star: {
        // L^0 = {b}, L^(n+1) = L^n + L .b L^n, iterated to the slice fixpoint
        const auto& body = eval(e->kids[0]);
        out.insert(Tree::node(e->symbol));
        bool grew = true;
        while (grew) {
          grew = false;
          std::set<Tree> next = out;
          for (const Tree& t : body)
            for (const Tree& s : substitute(t, e->symbol, out))
              if (next.insert(s).second) grew = true;
          out.swap(next);
        }
        break;
      }
      case Expr::Kind::Comp: {
        const auto& head = eval(e->kids[0]);
        int k = static_cast<int>(e->kids.size()) - 1;
        std::vector<Tree> combo;
        for (const Tree& t : head) {
          std::function<void(int, int)> build = [&](int i, int total) {
            if (total > max) return;
            if (i == k) {
              out.insert(compose(t, combo));
              return;
            }
            for (const Tree& u : eval(e->kids[i + 1])) {
              combo.push_back(u);
              build(i + 1, total + u.size() - 1);
              combo.pop_back();
            }
          };
          build(0, t.size());
        }
        break;
      }
      case Expr::Kind::Comp1: {
        const auto& left = eval(e->kids[0]);
        const auto& right = eval(e->kids[1]);
        for (const Tree& t : left)
          for (const Tree& u : right)
            if (t.size() + u.size() - 1 <= max) out.insert(compose1(t, u));
        break;
      }
      case Expr::Kind::CStar: {
        // L^0 = {eps_x}, L^(n+1) = L^n + L^n o L
        const auto& body = eval(e->kids[0]);
        IndexSet idx = analyze(a, e->kids[0]).indices;
        out.insert(Tree::hole(idx.at(0)));
        bool grew = true;
        while (grew) {
          grew = false;
          std::set<Tree> next = out;
          for (const Tree& t : out)
            for (const Tree& u : body) {
              if (t.size() + u.size() - 1 > max) continue;
              if (next.insert(compose(t, {u})).second) grew = true;
            }
          out.swap(next);
        }
        break;
      }
      case Expr::Kind::IncEps: {
        for (const Tree& t : eval(e->kids[0])) out.insert(inc_eps(e->inc, t));
        break;
      }
    }
    return out;
  }
};

}  // namespace

TreeSet enumerate(const Alphabet& a, const ExprPtr& e, int max_size) {
  HomogeneityReport report = analyze(a, e);
  Enumerator en{a, max_size, {}};
  TreeSet out(report.indices);
  for (const Tree& t : en.eval(e)) out.insert(t);
  return out;
}

bool member(const Alphabet& a, const Tree& t, const ExprPtr& e) {
  HomogeneityReport report = analyze(a, e);
  if (report.arity != 0) throw analysis_error("membership needs a 0-homogeneous expression");
  if (!eps_index_set(t).empty()) throw analysis_error("membership needs a 0-ary tree");
  return enumerate(a, e, t.size()).contains(t);
}

namespace {

struct Reifier {
  const Alphabet& original;
  Alphabet enlarged;
  int fresh = 0;

  std::string natural_anchor(int j) {
    std::string name = "<eps" + std::to_string(j) + ">";
    if (!enlarged.contains(name)) enlarged.declare(name, 0);
    return name;
  }
  std::string fresh_anchor() {
    std::string name = "<c" + std::to_string(++fresh) + ">";
    enlarged.declare(name, 0);
    return name;
  }

  using AnchorOf = std::function<std::string(int)>;

  ExprPtr reify(const ExprPtr& e, const AnchorOf& anchor_of) {
    switch (e->kind) {
      case Expr::Kind::Hole:
        return Expr::apply(anchor_of(e->hole_index));
      case Expr::Kind::Apply: {
        std::vector<ExprPtr> kids;
        kids.reserve(e->kids.size());
        for (const ExprPtr& c : e->kids) kids.push_back(reify(c, anchor_of));
        return Expr::apply(e->symbol, std::move(kids));
      }
      case Expr::Kind::Union:
        return Expr::make_union(reify(e->kids[0], anchor_of), reify(e->kids[1], anchor_of));
      case Expr::Kind::Product:
        return Expr::product(e->symbol, reify(e->kids[0], anchor_of), reify(e->kids[1], anchor_of));
      case Expr::Kind::Star:
        return Expr::star(e->symbol, reify(e->kids[0], anchor_of));
      case Expr::Kind::CStar: {
        // the closure anchor doubles as the body's hole symbol
        IndexSet idx = analyze(original, e->kids[0]).indices;
        std::string anchor = anchor_of(idx.at(0));
        return Expr::star(anchor, reify(e->kids[0], anchor_of));
      }
      case Expr::Kind::IncEps: {
        int z = e->inc;
        AnchorOf shifted = [&anchor_of, z](int j) { return anchor_of(j + z); };
        return reify(e->kids[0], shifted);
      }
      case Expr::Kind::Comp1: {
        // l o1 r == l o (r, remaining holes)
        IndexSet idx = analyze(original, e->kids[0]).indices;
        std::vector<ExprPtr> args;
        args.push_back(e->kids[1]);
        for (size_t i = 1; i < idx.size(); ++i) args.push_back(Expr::hole(idx[i]));
        return reify(Expr::comp(e->kids[0], std::move(args)), anchor_of);
      }
      case Expr::Kind::Comp: {
        IndexSet head_idx = analyze(original, e->kids[0]).indices;
        int k = static_cast<int>(head_idx.size());
        std::vector<IndexSet> arg_idx;
        for (int i = 0; i < k; ++i) arg_idx.push_back(analyze(original, e->kids[i + 1]).indices);
        // A product anchoring head hole x_i captures anchors exposed by an
        // already substituted argument a_j exactly when x_i occurs in a_j
        // (j != i); fall back to fresh anchor names in that case.
        bool cross = false;
        for (int i = 0; i < k && !cross; ++i)
          for (int j = 0; j < k && !cross; ++j)
            if (i != j && index_contains(arg_idx[j], head_idx[i])) cross = true;
        std::map<int, std::string> head_anchor;
        for (int i = 0; i < k; ++i)
          head_anchor[head_idx[i]] = cross ? fresh_anchor() : natural_anchor(head_idx[i]);
        AnchorOf head_of = [&head_anchor](int j) {
          auto it = head_anchor.find(j);
          if (it == head_anchor.end())
            throw analysis_error("composition head exposes an unexpected hole " + std::to_string(j));
          return it->second;
        };
        ExprPtr cur = reify(e->kids[0], head_of);
        for (int i = k - 1; i >= 0; --i)  // innermost product = largest index
          cur = Expr::product(head_anchor[head_idx[i]], cur, reify(e->kids[i + 1], anchor_of));
        return cur;
      }
    }
    throw analysis_error("unreachable");
  }
};

}  // namespace

Reified reify_holes(const Alphabet& a, const ExprPtr& e) {
  HomogeneityReport report = analyze(a, e);
  Reifier r{a, a};
  Reified out;
  for (int j : report.indices) out.hole_symbols[j] = r.natural_anchor(j);
  out.expr = r.reify(e, [&r](int j) { return r.natural_anchor(j); });
  out.enlarged = r.enlarged;
  return out;
}

}  // namespace treeq
