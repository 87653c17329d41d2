#include "treeq/expr.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace treeq {

namespace {

ExprPtr make(Expr&& e) { return std::make_shared<const Expr>(std::move(e)); }

}  // namespace

ExprPtr Expr::hole(int index, int pos) {
  if (index < 1) throw analysis_error("hole index must be >= 1", pos);
  Expr e;
  e.kind = Kind::Hole;
  e.hole_index = index;
  e.pos = pos;
  return make(std::move(e));
}

ExprPtr Expr::apply(std::string symbol, std::vector<ExprPtr> children, int pos) {
  Expr e;
  e.kind = Kind::Apply;
  e.symbol = std::move(symbol);
  e.kids = std::move(children);
  e.pos = pos;
  return make(std::move(e));
}

ExprPtr Expr::make_union(ExprPtr l, ExprPtr r, int pos) {
  Expr e;
  e.kind = Kind::Union;
  e.kids = {std::move(l), std::move(r)};
  e.pos = pos;
  return make(std::move(e));
}

ExprPtr Expr::product(std::string anchor, ExprPtr l, ExprPtr r, int pos) {
  Expr e;
  e.kind = Kind::Product;
  e.symbol = std::move(anchor);
  e.kids = {std::move(l), std::move(r)};
  e.pos = pos;
  return make(std::move(e));
}

ExprPtr Expr::star(std::string anchor, ExprPtr body, int pos) {
  Expr e;
  e.kind = Kind::Star;
  e.symbol = std::move(anchor);
  e.kids = {std::move(body)};
  e.pos = pos;
  return make(std::move(e));
}

ExprPtr Expr::comp(ExprPtr head, std::vector<ExprPtr> args, int pos) {
  Expr e;
  e.kind = Kind::Comp;
  e.kids.push_back(std::move(head));
  for (auto& a : args) e.kids.push_back(std::move(a));
  e.pos = pos;
  return make(std::move(e));
}

ExprPtr Expr::comp1(ExprPtr l, ExprPtr r, int pos) {
  Expr e;
  e.kind = Kind::Comp1;
  e.kids = {std::move(l), std::move(r)};
  e.pos = pos;
  return make(std::move(e));
}

ExprPtr Expr::cstar(ExprPtr body, int pos) {
  Expr e;
  e.kind = Kind::CStar;
  e.kids = {std::move(body)};
  e.pos = pos;
  return make(std::move(e));
}

ExprPtr Expr::inc_eps(int z, ExprPtr body, int pos) {
  if (z < 0) throw analysis_error("inc shift must be >= 0", pos);
  Expr e;
  e.kind = Kind::IncEps;
  e.inc = z;
  e.kids = {std::move(body)};
  e.pos = pos;
  return make(std::move(e));
}

int compare(const ExprPtr& a, const ExprPtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind) return static_cast<int>(a->kind) < static_cast<int>(b->kind) ? -1 : 1;
  switch (a->kind) {
    case Expr::Kind::Hole:
      return a->hole_index - b->hole_index;
    case Expr::Kind::IncEps:
      if (a->inc != b->inc) return a->inc < b->inc ? -1 : 1;
      break;
    case Expr::Kind::Apply:
    case Expr::Kind::Product:
    case Expr::Kind::Star:
      if (int c = a->symbol.compare(b->symbol)) return c < 0 ? -1 : 1;
      break;
    default:
      break;
  }
  const auto& ka = a->kids;
  const auto& kb = b->kids;
  for (size_t i = 0; i < ka.size() && i < kb.size(); ++i)
    if (int c = compare(ka[i], kb[i])) return c;
  if (ka.size() != kb.size()) return ka.size() < kb.size() ? -1 : 1;
  return 0;
}

bool equal(const ExprPtr& a, const ExprPtr& b) { return compare(a, b) == 0; }

namespace {

struct Info {
  int arity;
  IndexSet indices;
};

Info analyze_rec(const Alphabet& a, const ExprPtr& e, std::vector<NodeReport>& notes) {
  size_t slot = notes.size();
  notes.push_back({e->pos, 0, {}});
  Info info;
  switch (e->kind) {
    case Expr::Kind::Hole:
      info = {1, {e->hole_index}};
      break;
    case Expr::Kind::Apply: {
      if (!a.contains(e->symbol)) throw analysis_error("undeclared symbol '" + e->symbol + "'", e->pos);
      if (a.arity(e->symbol) != static_cast<int>(e->kids.size()))
        throw analysis_error("symbol '" + e->symbol + "' has arity " +
                                 std::to_string(a.arity(e->symbol)) + " but " +
                                 std::to_string(e->kids.size()) + " arguments",
                             e->pos);
      info = {0, {}};
      for (const ExprPtr& c : e->kids) {
        Info ci = analyze_rec(a, c, notes);
        if (!index_disjoint(info.indices, ci.indices))
          throw analysis_error("argument hole index sets overlap", c->pos);
        info.arity += ci.arity;
        info.indices = index_union(info.indices, ci.indices);
      }
      break;
    }
    case Expr::Kind::Union: {
      Info l = analyze_rec(a, e->kids[0], notes);
      Info r = analyze_rec(a, e->kids[1], notes);
      if (l.indices != r.indices)
        throw analysis_error("union of languages with indices " + to_string(l.indices) + " and " +
                                 to_string(r.indices),
                             e->pos);
      info = l;
      break;
    }
    case Expr::Kind::Product: {
      if (!a.contains(e->symbol)) throw analysis_error("undeclared symbol '" + e->symbol + "'", e->pos);
      if (a.arity(e->symbol) != 0)
        throw analysis_error("product anchor '" + e->symbol + "' is not nullary", e->pos);
      Info l = analyze_rec(a, e->kids[0], notes);
      Info r = analyze_rec(a, e->kids[1], notes);
      if (r.arity != 0)
        throw analysis_error("product right operand must be 0-homogeneous", e->kids[1]->pos);
      info = l;
      break;
    }
    case Expr::Kind::Star: {
      if (!a.contains(e->symbol)) throw analysis_error("undeclared symbol '" + e->symbol + "'", e->pos);
      if (a.arity(e->symbol) != 0)
        throw analysis_error("star anchor '" + e->symbol + "' is not nullary", e->pos);
      Info b = analyze_rec(a, e->kids[0], notes);
      if (b.arity != 0) throw analysis_error("star body must be 0-homogeneous", e->kids[0]->pos);
      info = {0, {}};
      break;
    }
    case Expr::Kind::Comp: {
      Info h = analyze_rec(a, e->kids[0], notes);
      int k = static_cast<int>(e->kids.size()) - 1;
      if (h.arity != k)
        throw analysis_error("composition head has arity " + std::to_string(h.arity) + " but " +
                                 std::to_string(k) + " arguments",
                             e->pos);
      info = {0, {}};
      for (size_t i = 1; i < e->kids.size(); ++i) {
        Info ci = analyze_rec(a, e->kids[i], notes);
        if (!index_disjoint(info.indices, ci.indices))
          throw analysis_error("composition argument hole index sets overlap", e->kids[i]->pos);
        info.arity += ci.arity;
        info.indices = index_union(info.indices, ci.indices);
      }
      break;
    }
    case Expr::Kind::Comp1: {
      Info l = analyze_rec(a, e->kids[0], notes);
      Info r = analyze_rec(a, e->kids[1], notes);
      if (l.arity < 1) throw analysis_error("partial composition head has no hole", e->pos);
      IndexSet kept(l.indices.begin() + 1, l.indices.end());
      if (!index_disjoint(kept, r.indices))
        throw analysis_error("partial composition hole index sets overlap", e->pos);
      info = {l.arity - 1 + r.arity, index_union(kept, r.indices)};
      break;
    }
    case Expr::Kind::CStar: {
      Info b = analyze_rec(a, e->kids[0], notes);
      if (b.arity != 1)
        throw analysis_error("composition closure body must be 1-homogeneous", e->kids[0]->pos);
      info = b;
      break;
    }
    case Expr::Kind::IncEps: {
      Info b = analyze_rec(a, e->kids[0], notes);
      info = {b.arity, index_shift(b.indices, e->inc)};
      break;
    }
  }
  notes[slot].arity = info.arity;
  notes[slot].indices = info.indices;
  return info;
}

}  // namespace

HomogeneityReport analyze(const Alphabet& a, const ExprPtr& e) {
  HomogeneityReport report;
  Info root = analyze_rec(a, e, report.annotations);
  report.arity = root.arity;
  report.indices = root.indices;
  return report;
}

namespace {

struct ExprCursor {
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
  void expect(char c) {
    if (peek() != c) throw parse_error(std::string("expected '") + c + "'", static_cast<int>(at));
    ++at;
  }
  int number() {
    skip_ws();
    size_t start = at;
    while (at < text.size() && std::isdigit(static_cast<unsigned char>(text[at]))) ++at;
    if (at == start) throw parse_error("expected a number", static_cast<int>(at));
    return std::stoi(text.substr(start, at - start));
  }
  std::string ident() {
    skip_ws();
    size_t start = at;
    while (at < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[at])) || text[at] == '_' || text[at] == '\''))
      ++at;
    if (at == start) throw parse_error("expected an identifier", static_cast<int>(at));
    return text.substr(start, at - start);
  }

  ExprPtr parse_union() {
    ExprPtr e = parse_atom();
    while (peek() == '+') {
      int pos = static_cast<int>(at);
      ++at;
      e = Expr::make_union(e, parse_atom(), pos);
    }
    return e;
  }

  std::string anchor() {
    expect('[');
    int pos = static_cast<int>(at);
    std::string name = ident();
    if (!alphabet.contains(name)) throw parse_error("undeclared symbol '" + name + "'", pos);
    if (alphabet.arity(name) != 0) throw parse_error("anchor '" + name + "' is not nullary", pos);
    expect(']');
    return name;
  }

  ExprPtr parse_atom() {
    int pos = static_cast<int>(at);
    char c = peek();
    if (c == '@') {
      ++at;
      int j = number();
      if (j < 1) throw parse_error("hole index must be >= 1", pos);
      return Expr::hole(j, pos);
    }
    if (c == '(') {
      ++at;
      ExprPtr e = parse_union();
      expect(')');
      return e;
    }
    std::string name = ident();
    if (name == "prod") {
      std::string b = anchor();
      expect('(');
      ExprPtr l = parse_union();
      expect(',');
      ExprPtr r = parse_union();
      expect(')');
      return Expr::product(b, l, r, pos);
    }
    if (name == "star") {
      std::string b = anchor();
      expect('(');
      ExprPtr body = parse_union();
      expect(')');
      return Expr::star(b, body, pos);
    }
    if (name == "inc") {
      expect('[');
      int z = number();
      expect(']');
      expect('(');
      ExprPtr body = parse_union();
      expect(')');
      return Expr::inc_eps(z, body, pos);
    }
    if (name == "comp") {
      expect('(');
      ExprPtr head = parse_union();
      expect(';');
      std::vector<ExprPtr> args;
      args.push_back(parse_union());
      while (peek() == ',') {
        ++at;
        args.push_back(parse_union());
      }
      expect(')');
      return Expr::comp(head, std::move(args), pos);
    }
    if (name == "comp1") {
      expect('(');
      ExprPtr l = parse_union();
      expect(',');
      ExprPtr r = parse_union();
      expect(')');
      return Expr::comp1(l, r, pos);
    }
    if (name == "cstar") {
      expect('(');
      ExprPtr body = parse_union();
      expect(')');
      return Expr::cstar(body, pos);
    }
    if (!alphabet.contains(name)) throw parse_error("undeclared symbol '" + name + "'", pos);
    std::vector<ExprPtr> kids;
    if (peek() == '(') {
      ++at;
      kids.push_back(parse_union());
      while (peek() == ',') {
        ++at;
        kids.push_back(parse_union());
      }
      expect(')');
    }
    if (alphabet.arity(name) != static_cast<int>(kids.size()))
      throw parse_error("symbol '" + name + "' has arity " + std::to_string(alphabet.arity(name)) +
                            " but " + std::to_string(kids.size()) + " arguments",
                        pos);
    return Expr::apply(name, std::move(kids), pos);
  }
};

}  // namespace

ExprPtr parse_expr(const std::string& text, const Alphabet& a) {
  ExprCursor c{text, a};
  ExprPtr e = c.parse_union();
  c.skip_ws();
  if (c.at != text.size()) throw parse_error("trailing input after expression", static_cast<int>(c.at));
  return e;
}

namespace {

void print_expr(const ExprPtr& e, std::string& out) {
  switch (e->kind) {
    case Expr::Kind::Hole:
      out += "@" + std::to_string(e->hole_index);
      break;
    case Expr::Kind::Apply:
      out += e->symbol;
      if (!e->kids.empty()) {
        out += "(";
        for (size_t i = 0; i < e->kids.size(); ++i) {
          if (i) out += ",";
          print_expr(e->kids[i], out);
        }
        out += ")";
      }
      break;
    case Expr::Kind::Union:
      print_expr(e->kids[0], out);
      out += "+";
      print_expr(e->kids[1], out);
      break;
    case Expr::Kind::Product:
      out += "prod[" + e->symbol + "](";
      print_expr(e->kids[0], out);
      out += ", ";
      print_expr(e->kids[1], out);
      out += ")";
      break;
    case Expr::Kind::Star:
      out += "star[" + e->symbol + "](";
      print_expr(e->kids[0], out);
      out += ")";
      break;
    case Expr::Kind::Comp:
      out += "comp(";
      print_expr(e->kids[0], out);
      out += "; ";
      for (size_t i = 1; i < e->kids.size(); ++i) {
        if (i > 1) out += ", ";
        print_expr(e->kids[i], out);
      }
      out += ")";
      break;
    case Expr::Kind::Comp1:
      out += "comp1(";
      print_expr(e->kids[0], out);
      out += ", ";
      print_expr(e->kids[1], out);
      out += ")";
      break;
    case Expr::Kind::CStar:
      out += "cstar(";
      print_expr(e->kids[0], out);
      out += ")";
      break;
    case Expr::Kind::IncEps:
      out += "inc[" + std::to_string(e->inc) + "](";
      print_expr(e->kids[0], out);
      out += ")";
      break;
  }
}

}  // namespace

std::string to_string(const ExprPtr& e) {
  std::string out;
  print_expr(e, out);
  return out;
}

ExprPtr expr_of_tree(const Tree& t) {
  if (t.is_hole()) return Expr::hole(t.hole_index());
  std::vector<ExprPtr> kids;
  kids.reserve(t.children().size());
  for (const Tree& c : t.children()) kids.push_back(expr_of_tree(c));
  return Expr::apply(t.symbol(), std::move(kids));
}

std::optional<Tree> tree_of_expr(const ExprPtr& e) {
  if (e->kind == Expr::Kind::Hole) return Tree::hole(e->hole_index);
  if (e->kind != Expr::Kind::Apply) return std::nullopt;
  std::vector<Tree> kids;
  kids.reserve(e->kids.size());
  for (const ExprPtr& c : e->kids) {
    auto t = tree_of_expr(c);
    if (!t) return std::nullopt;
    kids.push_back(*t);
  }
  return Tree::node(e->symbol, std::move(kids));
}

}  // namespace treeq
