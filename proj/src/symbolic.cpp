#include "treeq/symbolic.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

namespace treeq {

namespace {

using Members = std::vector<ExprPtr>;

void flatten_union(const ExprPtr& e, Members& out) {
  if (e->kind == Expr::Kind::Union) {
    flatten_union(e->kids[0], out);
    flatten_union(e->kids[1], out);
  } else {
    out.push_back(e);
  }
}

void sort_dedup(Members& ms) {
  std::sort(ms.begin(), ms.end(), [](const ExprPtr& x, const ExprPtr& y) { return compare(x, y) < 0; });
  ms.erase(std::unique(ms.begin(), ms.end(), [](const ExprPtr& x, const ExprPtr& y) { return equal(x, y); }),
           ms.end());
}

// Left-nested union of sorted members; requires at least one member.
ExprPtr union_of(const Members& ms) {
  assert(!ms.empty());
  ExprPtr acc = ms[0];
  for (size_t i = 1; i < ms.size(); ++i) acc = Expr::make_union(acc, ms[i]);
  return acc;
}

IndexSet indices_of(const Alphabet& a, const ExprPtr& e) { return analyze(a, e).indices; }

// An injective relabeling of hole indices. Shifts are the special case
// x -> x + z; compositions whose arguments are all holes are the general one.
struct Rename {
  std::map<int, int> map;
  int shift = 0;  // applied to indices missing from the map

  int operator()(int j) const {
    auto it = map.find(j);
    return it == map.end() ? j + shift : it->second;
  }
  Rename after_shift(int z) const {
    // composing with Inc: first add z, then apply this renaming
    Rename out;
    out.shift = shift + z;
    for (const auto& [from, to] : map) out.map.emplace(from - z, to);
    return out;
  }
};

// Relabels every free hole of a normalized expression, pushing down to the
// leaves. Composition heads are untouched (their holes are consumed and
// matched by rank); a partial-composition head keeps its least hole bound,
// so the node is expanded into a full composition first. Union members are
// re-sorted because the relabeling can reorder them. The result stays
// normalized.
ExprPtr push_rename(const Alphabet& a, const Rename& rho, const ExprPtr& body) {
  switch (body->kind) {
    case Expr::Kind::Hole:
      return Expr::hole(rho(body->hole_index));
    case Expr::Kind::IncEps:
      return push_rename(a, rho.after_shift(body->inc), body->kids[0]);
    case Expr::Kind::Apply: {
      std::vector<ExprPtr> kids;
      kids.reserve(body->kids.size());
      for (const ExprPtr& c : body->kids) kids.push_back(push_rename(a, rho, c));
      return Expr::apply(body->symbol, std::move(kids));
    }
    case Expr::Kind::Union: {
      Members ms;
      flatten_union(body, ms);
      for (ExprPtr& m : ms) m = push_rename(a, rho, m);
      sort_dedup(ms);
      return union_of(ms);
    }
    case Expr::Kind::Product:
      return Expr::product(body->symbol, push_rename(a, rho, body->kids[0]), body->kids[1]);
    case Expr::Kind::Star:
      return body;  // 0-homogeneous, hole-free
    case Expr::Kind::Comp: {
      std::vector<ExprPtr> args;
      for (size_t i = 1; i < body->kids.size(); ++i)
        args.push_back(push_rename(a, rho, body->kids[i]));
      return Expr::comp(body->kids[0], std::move(args));
    }
    case Expr::Kind::Comp1: {
      IndexSet idx = indices_of(a, body->kids[0]);
      std::vector<ExprPtr> args;
      args.push_back(push_rename(a, rho, body->kids[1]));
      for (size_t i = 1; i < idx.size(); ++i) args.push_back(Expr::hole(rho(idx[i])));
      return Expr::comp(body->kids[0], std::move(args));
    }
    case Expr::Kind::CStar:
      return Expr::cstar(push_rename(a, rho, body->kids[0]));
  }
  return body;
}

ExprPtr push_inc(const Alphabet& a, int z, const ExprPtr& body) {
  if (z == 0) return body;
  Rename rho;
  rho.shift = z;
  return push_rename(a, rho, body);
}

bool all_holes(const std::vector<ExprPtr>& args) {
  for (const ExprPtr& arg : args)
    if (arg->kind != Expr::Kind::Hole) return false;
  return true;
}

}  // namespace

ExprPtr normalize(const Alphabet& a, const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Hole:
      return e;
    case Expr::Kind::Apply: {
      std::vector<ExprPtr> kids;
      kids.reserve(e->kids.size());
      bool same = true;
      for (const ExprPtr& c : e->kids) {
        kids.push_back(normalize(a, c));
        same = same && kids.back().get() == c.get();
      }
      return same ? e : Expr::apply(e->symbol, std::move(kids));
    }
    case Expr::Kind::Union: {
      Members ms;
      flatten_union(e, ms);
      for (ExprPtr& m : ms) m = normalize(a, m);
      Members flat;
      for (const ExprPtr& m : ms) flatten_union(m, flat);
      sort_dedup(flat);
      return union_of(flat);
    }
    case Expr::Kind::Product:
      return Expr::product(e->symbol, normalize(a, e->kids[0]), normalize(a, e->kids[1]));
    case Expr::Kind::Star:
      return Expr::star(e->symbol, normalize(a, e->kids[0]));
    case Expr::Kind::Comp: {
      ExprPtr head = normalize(a, e->kids[0]);
      std::vector<ExprPtr> args;
      for (size_t i = 1; i < e->kids.size(); ++i) args.push_back(normalize(a, e->kids[i]));
      if (head->kind == Expr::Kind::Hole && args.size() == 1) return args[0];
      if (all_holes(args)) {
        // pure reindexing: push the hole relabeling into the head
        IndexSet idx = indices_of(a, head);
        Rename rho;
        for (size_t i = 0; i < args.size(); ++i) rho.map.emplace(idx[i], args[i]->hole_index);
        return push_rename(a, rho, head);
      }
      return Expr::comp(head, std::move(args));
    }
    case Expr::Kind::Comp1: {
      ExprPtr l = normalize(a, e->kids[0]);
      ExprPtr r = normalize(a, e->kids[1]);
      if (l->kind == Expr::Kind::Hole) return r;
      IndexSet idx = indices_of(a, l);
      if (idx.size() == 1) return normalize(a, Expr::comp(l, {r}));
      return Expr::comp1(l, r);
    }
    case Expr::Kind::CStar:
      return Expr::cstar(normalize(a, e->kids[0]));
    case Expr::Kind::IncEps:
      return push_inc(a, e->inc, normalize(a, e->kids[0]));
  }
  return e;
}

bool eps_member(const Alphabet& a, int x, const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Hole:
      return e->hole_index == x;
    case Expr::Kind::Apply:
      return false;
    case Expr::Kind::Union:
      return eps_member(a, x, e->kids[0]) || eps_member(a, x, e->kids[1]);
    case Expr::Kind::Product:
      // substitution of a nullary anchor cannot create or destroy a bare hole
      return eps_member(a, x, e->kids[0]);
    case Expr::Kind::Star:
      return eps_member(a, x, e->kids[0]);
    case Expr::Kind::Comp: {
      if (e->kids.size() != 2) return false;
      IndexSet head_idx = indices_of(a, e->kids[0]);
      return head_idx.size() == 1 && eps_member(a, head_idx[0], e->kids[0]) &&
             eps_member(a, x, e->kids[1]);
    }
    case Expr::Kind::Comp1: {
      IndexSet idx = indices_of(a, e->kids[0]);
      return idx.size() == 1 && eps_member(a, idx[0], e->kids[0]) && eps_member(a, x, e->kids[1]);
    }
    case Expr::Kind::CStar: {
      IndexSet idx = indices_of(a, e->kids[0]);
      return idx.size() == 1 && idx[0] == x;
    }
    case Expr::Kind::IncEps:
      return x > e->inc && eps_member(a, x - e->inc, e->kids[0]);
  }
  return false;
}

QuotientState empty_state(IndexSet indices) {
  QuotientState s;
  s.indices_ = std::move(indices);
  return s;
}

QuotientState state_of(const Alphabet& a, std::vector<ExprPtr> exprs) {
  Members flat;
  for (const ExprPtr& e : exprs) flatten_union(normalize(a, e), flat);
  sort_dedup(flat);
  if (flat.empty()) throw analysis_error("an empty state needs explicit indices");

  QuotientState s;
  HomogeneityReport first = analyze(a, flat[0]);
  for (size_t i = 1; i < flat.size(); ++i) {
    HomogeneityReport r = analyze(a, flat[i]);
    if (r.indices != first.indices)
      throw analysis_error("state members are not union-compatible: " + to_string(first.indices) +
                           " vs " + to_string(r.indices));
  }
  s.indices_ = first.indices;
  s.nullable_ = false;
  for (const ExprPtr& m : flat) s.nullable_ = s.nullable_ || eps_member(a, 1, m);
  s.members_ = std::move(flat);
  std::string key = "{ ";
  for (size_t i = 0; i < s.members_.size(); ++i) {
    if (i) key += " ; ";
    key += to_string(s.members_[i]);
  }
  key += " }";
  s.key_ = key;
  return s;
}

std::string to_string(const QuotientState& s) { return s.key(); }

QuotientState parse_state(const std::string& text, const Alphabet& a, IndexSet empty_indices) {
  size_t open = text.find('{');
  size_t close = text.rfind('}');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw parse_error("expected '{ ... }'", 0);
  std::string inner = text.substr(open + 1, close - open - 1);
  std::vector<ExprPtr> members;
  size_t start = 0;
  while (start <= inner.size()) {
    size_t semi = inner.find(';', start);
    std::string piece = inner.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
    if (piece.find_first_not_of(" \t\n") != std::string::npos) members.push_back(parse_expr(piece, a));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  if (members.empty()) return empty_state(std::move(empty_indices));
  return state_of(a, std::move(members));
}

TreeSet enumerate(const Alphabet& a, const QuotientState& s, int max_size) {
  TreeSet out(s.indices());
  for (const ExprPtr& m : s.members())
    out = TreeSet::union_of(out, enumerate(a, m, max_size));
  return out;
}

namespace {

// ---- quotient rules -------------------------------------------------------

Members dsym_expr(const Alphabet& a, const std::string& alpha, const ExprPtr& e);

QuotientState make_state(const Alphabet& a, Members ms, IndexSet law) {
  if (ms.empty()) return empty_state(std::move(law));
  std::vector<ExprPtr> exprs(ms.begin(), ms.end());
  return state_of(a, std::move(exprs));
}

QuotientState dsym_sub(const Alphabet& a, const std::string& alpha, const ExprPtr& sub) {
  int k = a.arity(alpha);
  IndexSet consumed;
  for (int i = 1; i <= k; ++i) consumed.push_back(i);
  IndexSet law = quotient_indices(consumed, indices_of(a, sub));
  Members out = dsym_expr(a, alpha, sub);
  return make_state(a, std::move(out), std::move(law));
}

ExprPtr shift1(const Alphabet& a, const ExprPtr& e) { return push_inc(a, 1, normalize(a, e)); }

// Composition of a language, given as members, with expression arguments.
void append_comp(const Alphabet& a, const ExprPtr& head, std::vector<ExprPtr> args, Members& out) {
  out.push_back(normalize(a, Expr::comp(head, std::move(args))));
}

// The quotient of a composition head .. o (args): one term per argument cut
// plus the junction term that cuts alpha at the grafted hole positions.
Members prop_comp(const Alphabet& a, const std::string& alpha, const ExprPtr& head,
                  const std::vector<ExprPtr>& args) {
  Members out;
  int k = static_cast<int>(args.size());
  // cut inside one lower language, incrementing the others
  for (int p = 0; p < k; ++p) {
    QuotientState sp = dsym_sub(a, alpha, args[p]);
    for (const ExprPtr& x : sp.members()) {
      std::vector<ExprPtr> newargs;
      newargs.reserve(k);
      for (int l = 0; l < k; ++l) newargs.push_back(l == p ? x : shift1(a, args[l]));
      append_comp(a, head, std::move(newargs), out);
    }
  }
  // junction: every pattern hole eps_l must be provided by some argument
  int n = a.arity(alpha);
  IndexSet head_idx = indices_of(a, head);
  std::vector<int> assignment(n, -1);
  bool junction = true;
  for (int l = 1; l <= n && junction; ++l) {
    for (int p = 0; p < k; ++p) {
      if (eps_member(a, l, args[p])) {
        if (assignment[l - 1] != -1)
          throw analysis_error("ambiguous junction assignment in composition quotient");
        assignment[l - 1] = p;
      }
    }
    junction = assignment[l - 1] != -1;
  }
  if (junction) {
    std::vector<Tree> pattern_kids;
    pattern_kids.reserve(n);
    for (int l = 0; l < n; ++l) pattern_kids.push_back(Tree::hole(head_idx[assignment[l]]));
    Tree pattern = Tree::node(alpha, std::move(pattern_kids));
    QuotientState t2 = d_tree(a, pattern, state_of(a, {head}));
    for (const ExprPtr& y : t2.members()) {
      std::vector<ExprPtr> cargs;
      cargs.push_back(Expr::hole(1));
      for (int l = 0; l < k; ++l) {
        if (std::find(assignment.begin(), assignment.end(), l) != assignment.end()) continue;
        cargs.push_back(shift1(a, args[l]));
      }
      append_comp(a, y, std::move(cargs), out);
    }
  }
  return out;
}

// alpha^-1(L1 .b L2)
Members prop_product(const Alphabet& a, const std::string& alpha, const std::string& b,
                     const ExprPtr& l1, const ExprPtr& l2) {
  Members out;
  if (alpha != b) {
    QuotientState s = dsym_sub(a, alpha, l1);
    for (const ExprPtr& x : s.members()) out.push_back(normalize(a, Expr::product(b, x, l2)));
  }
  if (a.arity(alpha) == 0) {
    QuotientState sb = dsym_sub(a, b, l1);
    QuotientState sa = dsym_sub(a, alpha, l2);
    for (const ExprPtr& x : sb.members())
      for (const ExprPtr& y : sa.members())
        out.push_back(normalize(a, Expr::comp1(Expr::product(b, x, l2), y)));
  }
  return out;
}

// alpha^-1(body^cstar); `self` is the closure expression itself
Members prop_cstar(const Alphabet& a, const std::string& alpha, const ExprPtr& self) {
  const ExprPtr& body = self->kids[0];
  QuotientState q = dsym_sub(a, alpha, body);
  Members out;
  for (const ExprPtr& x : q.members()) {
    ExprPtr inner = normalize(a, Expr::comp(self, {x}));
    if (a.arity(alpha) == 0) {
      ExprPtr tail = push_inc(a, 1, self);
      out.push_back(normalize(a, Expr::comp(inner, {Expr::hole(1), tail})));
    } else {
      out.push_back(inner);
    }
  }
  return out;
}

// alpha^-1(body^*b); `self` is the star expression itself
Members prop_star(const Alphabet& a, const std::string& alpha, const ExprPtr& self) {
  const std::string& b = self->symbol;
  const ExprPtr& body = self->kids[0];
  QuotientState qb = dsym_sub(a, b, body);
  // (b^-1 body)^cstar; the closure of the empty 1-homogeneous set is {eps_1}
  ExprPtr closure =
      qb.empty() ? Expr::hole(1) : normalize(a, Expr::cstar(union_of(qb.members())));
  Members out;
  if (alpha == b) {
    out.push_back(normalize(a, Expr::product(b, closure, self)));
  } else {
    QuotientState qa = dsym_sub(a, alpha, body);
    for (const ExprPtr& y : qa.members()) {
      ExprPtr grafted = normalize(a, Expr::comp(closure, {y}));
      out.push_back(normalize(a, Expr::product(b, grafted, self)));
    }
  }
  return out;
}

Members dsym_expr(const Alphabet& a, const std::string& alpha, const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Hole:
      return {};
    case Expr::Kind::Union: {
      Members out = dsym_expr(a, alpha, e->kids[0]);
      Members r = dsym_expr(a, alpha, e->kids[1]);
      out.insert(out.end(), r.begin(), r.end());
      return out;
    }
    case Expr::Kind::Apply: {
      if (auto t = tree_of_expr(e)) {
        Members out;
        TreeSet cut = quotient_by_symbol(a, alpha, *t);
        for (const Tree& v : cut.trees()) out.push_back(expr_of_tree(v));
        return out;
      }
      // general children reduce to a composition with a flat pattern head
      IndexSet used = indices_of(a, e);
      int base = used.empty() ? 0 : used.back();
      std::vector<ExprPtr> pattern;
      for (size_t i = 0; i < e->kids.size(); ++i)
        pattern.push_back(Expr::hole(base + static_cast<int>(i) + 1));
      ExprPtr head = Expr::apply(e->symbol, std::move(pattern));
      return prop_comp(a, alpha, head, e->kids);
    }
    case Expr::Kind::Product:
      return prop_product(a, alpha, e->symbol, e->kids[0], e->kids[1]);
    case Expr::Kind::Star:
      return prop_star(a, alpha, e);
    case Expr::Kind::Comp: {
      std::vector<ExprPtr> args(e->kids.begin() + 1, e->kids.end());
      return prop_comp(a, alpha, e->kids[0], args);
    }
    case Expr::Kind::Comp1: {
      // l o1 r == l o (r, remaining holes)
      IndexSet idx = indices_of(a, e->kids[0]);
      std::vector<ExprPtr> args;
      args.push_back(e->kids[1]);
      for (size_t i = 1; i < idx.size(); ++i) args.push_back(Expr::hole(idx[i]));
      return prop_comp(a, alpha, e->kids[0], args);
    }
    case Expr::Kind::CStar:
      return prop_cstar(a, alpha, e);
    case Expr::Kind::IncEps:
      return dsym_expr(a, alpha, normalize(a, e));
  }
  return {};
}

}  // namespace

QuotientState d_symbol(const Alphabet& a, const std::string& alpha, const QuotientState& s) {
  int k = a.arity(alpha);
  IndexSet consumed;
  for (int i = 1; i <= k; ++i) consumed.push_back(i);
  IndexSet law = quotient_indices(consumed, s.indices());
  Members out;
  for (const ExprPtr& m : s.members()) {
    Members d = dsym_expr(a, alpha, m);
    out.insert(out.end(), d.begin(), d.end());
  }
  return make_state(a, std::move(out), std::move(law));
}

QuotientState d_eps(const Alphabet& a, int j, const QuotientState& s) {
  IndexSet law = quotient_indices({j}, s.indices());
  if (!index_contains(s.indices(), j)) return empty_state(std::move(law));
  const IndexSet& idx = s.indices();
  Members out;
  for (const ExprPtr& m : s.members()) {
    std::vector<ExprPtr> args;
    args.reserve(idx.size());
    for (int x : idx) args.push_back(x == j ? Expr::hole(1) : Expr::hole(x + 1));
    out.push_back(normalize(a, Expr::comp(m, std::move(args))));
  }
  return make_state(a, std::move(out), std::move(law));
}

QuotientState d_tree(const Alphabet& a, const Tree& t, const QuotientState& s) {
  if (t.is_hole()) return d_eps(a, t.hole_index(), s);
  bool identity_children = true;
  for (size_t i = 0; i < t.children().size(); ++i)
    identity_children = identity_children && t.children()[i].is_hole() &&
                        t.children()[i].hole_index() == static_cast<int>(i) + 1;
  if (identity_children) return d_symbol(a, t.symbol(), s);

  IndexSet t_idx = eps_index_set(t);
  IndexSet law = quotient_indices(t_idx, s.indices());
  if (!index_subset(t_idx, s.indices())) return empty_state(law);

  // right-to-left chain with Inc_eps(k-j, t_j) shifts, then the root symbol,
  // then the recomposition that maps survivors y+k+1 back to y+1
  int k = static_cast<int>(t.children().size());
  QuotientState cur = s;
  for (int j = k; j >= 1; --j) {
    cur = d_tree(a, inc_eps(k - j, t.children()[j - 1]), cur);
    if (cur.empty()) return empty_state(law);
  }
  cur = d_symbol(a, t.symbol(), cur);
  if (cur.empty()) return empty_state(law);

  IndexSet survivors = index_minus(s.indices(), t_idx);
  Members out;
  for (const ExprPtr& m : cur.members()) {
    std::vector<ExprPtr> args;
    args.push_back(Expr::hole(1));
    for (int y : survivors) args.push_back(Expr::hole(y + 1));
    out.push_back(normalize(a, Expr::comp(m, std::move(args))));
  }
  return make_state(a, std::move(out), std::move(law));
}

}  // namespace treeq
