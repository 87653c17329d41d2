#include <functional>
#include <map>

#include "doctest.h"
#include "treeq/checks.hpp"
#include "treeq/enumerate.hpp"
#include "treeq/expr.hpp"

using namespace treeq;

namespace {

Alphabet sigma() { return corpus_alphabet(); }

ExprPtr E(const std::string& text) { return parse_expr(text, sigma()); }

Tree T(const std::string& text) { return parse_tree(text, sigma()); }

TreeSet slice(const std::string& text, int n) { return enumerate(sigma(), E(text), n); }

}  // namespace

TEST_CASE("expression parsing") {
  ExprPtr l2 = E("star[b](h(a) + f(b,b))");
  REQUIRE(l2->kind == Expr::Kind::Star);
  CHECK(l2->symbol == "b");
  CHECK(l2->kids[0]->kind == Expr::Kind::Union);

  ExprPtr l1 = E("comp(cstar(h(@1)); star[b](h(a)+f(b,b)))");
  REQUIRE(l1->kind == Expr::Kind::Comp);
  CHECK(l1->kids[0]->kind == Expr::Kind::CStar);
  CHECK(l1->kids.size() == 2);

  CHECK(E("@3")->hole_index == 3);
  CHECK(E("comp1(f(@1,@2), h(@1))")->kind == Expr::Kind::Comp1);
  CHECK(E("inc[2](f(@1,@2))")->inc == 2);
  CHECK(E("(a+b)")->kind == Expr::Kind::Union);

  CHECK_THROWS_AS(E("prod[c](a, b)"), parse_error);   // undeclared anchor
  CHECK_THROWS_AS(E("star[h](a)"), parse_error);      // non-nullary anchor
  CHECK_THROWS_AS(E("f(a)"), parse_error);            // arity misuse
  CHECK_THROWS_AS(E("@0"), parse_error);
  CHECK_THROWS_AS(E("a b"), parse_error);
}

TEST_CASE("printing round-trips through the parser") {
  for (const ExprPtr& e : corpus()) {
    ExprPtr again = parse_expr(to_string(e), sigma());
    CHECK(equal(e, again));
  }
}

TEST_CASE("static analysis computes arity and indices") {
  Alphabet a = sigma();
  HomogeneityReport r = analyze(a, E("cstar(h(@1))"));
  CHECK(r.arity == 1);
  CHECK(r.indices == IndexSet{1});

  r = analyze(a, E("star[b](h(a)+f(b,b))"));
  CHECK(r.arity == 0);
  CHECK(r.indices.empty());

  r = analyze(a, E("comp(f(@1,@2); a, b)"));
  CHECK(r.arity == 0);

  r = analyze(a, E("comp1(f(@1,@2), h(@1))"));
  CHECK(r.arity == 2);
  CHECK(r.indices == IndexSet{1, 2});

  r = analyze(a, E("inc[1](f(@1,@2))"));
  CHECK(r.indices == IndexSet{2, 3});

  CHECK_THROWS_AS(analyze(a, Expr::apply("f", {Expr::hole(1), Expr::hole(1)})), analysis_error);
  CHECK_THROWS_AS(analyze(a, Expr::make_union(E("a"), E("@1"))), analysis_error);
  CHECK_THROWS_AS(analyze(a, Expr::product("b", E("a"), E("@1"))), analysis_error);
  CHECK_THROWS_AS(analyze(a, Expr::cstar(E("f(@1,@2)"))), analysis_error);
  CHECK_THROWS_AS(analyze(a, Expr::comp(E("h(@1)"), {E("a"), E("b")})), analysis_error);
}

TEST_CASE("enumeration is the exact size slice") {
  CHECK(slice("star[b](h(a)+f(b,b))", 1) == TreeSet{T("b")});
  CHECK(slice("star[b](h(a)+f(b,b))", 3) == TreeSet{T("b"), T("h(a)"), T("f(b,b)")});
  // hand expansion of the same closure up to size 5
  TreeSet five = slice("star[b](h(a)+f(b,b))", 5);
  TreeSet expected{T("b"),          T("h(a)"),      T("f(b,b)"),      T("f(h(a),b)"),
                   T("f(b,h(a))"),  T("f(f(b,b),b)"), T("f(b,f(b,b))"), T("f(h(a),h(a))")};
  CHECK(five == expected);

  TreeSet closure = slice("cstar(h(@1))", 3);
  CHECK(closure == TreeSet{Tree::hole(1), T("h(@1)"), T("h(h(@1))")});

  CHECK(slice("cstar(@1)", 5) == TreeSet{Tree::hole(1)});
  CHECK(slice("prod[a](h(a), b)", 4) == TreeSet{T("h(b)")});
  CHECK(slice("prod[a](f(a,a), h(b))", 9) == TreeSet{T("f(h(b),h(b))")});
  CHECK(slice("inc[1](f(@1,@2))", 4) == TreeSet{T("f(@2,@3)")});
  CHECK(slice("comp1(f(@1,@2), h(@1))", 5) == TreeSet{T("f(h(@1),@2)")});
  CHECK(slice("star[b](b)", 6) == TreeSet{T("b")});
}

TEST_CASE("membership") {
  Alphabet a = sigma();
  CHECK(member(a, T("h(a)"), E("star[b](h(a)+f(b,b))")));
  CHECK(member(a, T("b"), E("star[b](h(a)+f(b,b))")));
  CHECK_FALSE(member(a, T("h(b)"), E("star[b](h(a)+f(b,b))")));
  CHECK(member(a, T("f(h(a),b)"), E("star[b](h(a)+f(b,b))")));
  CHECK(member(a, T("h(h(b))"), E("comp(cstar(h(@1)); star[b](h(a)+f(b,b)))")));
  CHECK_FALSE(member(a, T("a"), E("comp(cstar(h(@1)); star[b](h(a)+f(b,b)))")));
  CHECK_THROWS_AS(member(a, T("a"), E("cstar(h(@1))")), analysis_error);
}

namespace {

TreeSet demap(const Reified& re, int n) {
  std::map<std::string, int> back;
  for (const auto& [j, name] : re.hole_symbols) back[name] = j;
  std::function<Tree(const Tree&)> walk = [&](const Tree& t) -> Tree {
    if (t.is_hole()) return t;
    auto it = back.find(t.symbol());
    if (it != back.end() && t.children().empty()) return Tree::hole(it->second);
    std::vector<Tree> kids;
    for (const Tree& c : t.children()) kids.push_back(walk(c));
    return Tree::node(t.symbol(), std::move(kids));
  };
  std::set<Tree> mapped;
  TreeSet raw = enumerate(re.enlarged, re.expr, n);
  for (const Tree& t : raw.trees()) mapped.insert(walk(t));
  IndexSet idx;
  for (const auto& [j, name] : re.hole_symbols) idx.push_back(j);
  return make_tree_set(mapped, idx);
}

}  // namespace

TEST_CASE("hole reification preserves the language") {
  Alphabet a = sigma();

  SUBCASE("closure anchors reuse the hole symbol") {
    Reified re = reify_holes(a, E("cstar(h(@1))"));
    REQUIRE(re.expr->kind == Expr::Kind::Star);
    CHECK(re.expr->symbol == "<eps1>");
    CHECK(re.hole_symbols.at(1) == "<eps1>");
    CHECK(demap(re, 6).trees() == slice("cstar(h(@1))", 6).trees());
  }

  SUBCASE("compositions become nested products") {
    Reified re = reify_holes(a, E("comp(f(@1,@2); a, b)"));
    REQUIRE(re.expr->kind == Expr::Kind::Product);
    CHECK(demap(re, 6).trees() == slice("comp(f(@1,@2); a, b)", 6).trees());
  }

  SUBCASE("hole-free expressions are untouched") {
    ExprPtr e = E("star[b](h(a)+f(b,b))");
    Reified re = reify_holes(a, e);
    CHECK(equal(re.expr, e));
  }

  SUBCASE("hole permutation does not capture") {
    Reified re = reify_holes(a, E("comp(f(@1,@2); @2, @1)"));
    CHECK(demap(re, 4).trees() == std::set<Tree>{T("f(@2,@1)")});
  }

  SUBCASE("whole corpus, slice equality") {
    for (const ExprPtr& e : corpus()) {
      Reified re = reify_holes(a, e);
      CHECK_MESSAGE(demap(re, 6).trees() == enumerate(a, e, 6).trees(), to_string(e));
    }
  }
}
