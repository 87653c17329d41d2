#include "doctest.h"
#include "treeq/checks.hpp"
#include "treeq/symbolic.hpp"

using namespace treeq;

namespace {

Alphabet sigma() { return corpus_alphabet(); }

ExprPtr E(const std::string& text) { return parse_expr(text, sigma()); }

Tree T(const std::string& text) { return parse_tree(text, sigma()); }

QuotientState S(const std::string& text) { return state_of(sigma(), {E(text)}); }

// the worked example's languages
const char* kL2 = "star[b](h(a)+f(b,b))";
const char* kL3 = "cstar(f(@1,b)+f(b,@1))";
const char* kL1 = "comp(cstar(h(@1)); star[b](h(a)+f(b,b)))";
const char* kX1 =
    "comp(cstar(h(@1)); prod[b](comp(cstar(f(@1,b)+f(b,@1)); h(@1)), star[b](h(a)+f(b,b))))";
const char* kX2 = "comp(cstar(h(@1)); prod[b](cstar(f(@1,b)+f(b,@1)), star[b](h(a)+f(b,b))))";
const char* kX3 = "cstar(h(@1))";

}  // namespace

TEST_CASE("normalization") {
  Alphabet a = sigma();

  SUBCASE("union is flattened, sorted, deduplicated") {
    ExprPtr e = Expr::make_union(E("h(a)"), Expr::make_union(E("f(b,b)"), E("h(a)")));
    CHECK(to_string(normalize(a, e)) == "f(b,b)+h(a)");
  }
  SUBCASE("shifts vanish on hole-free expressions") {
    CHECK(to_string(normalize(a, E("inc[1](star[b](h(a)+f(b,b)))"))) ==
          "star[b](f(b,b)+h(a))");
  }
  SUBCASE("shifts are pushed to the holes") {
    CHECK(to_string(normalize(a, E("inc[1](cstar(f(@1,b)+f(b,@1)))"))) ==
          "cstar(f(@2,b)+f(b,@2))");
    CHECK(to_string(normalize(a, E("inc[2](inc[1](@1))"))) == "@4");
    CHECK(to_string(normalize(a, E("inc[1](comp(f(@1,@2); @1, h(@2)))"))) ==
          "comp(f(@1,@2); @2, h(@3))");
  }
  SUBCASE("hole-tuple compositions collapse to relabelings") {
    CHECK(to_string(normalize(a, E("comp(f(@1,@2); @1, @2)"))) == "f(@1,@2)");
    CHECK(to_string(normalize(a, E("comp(f(@2,@5); @2, @5)"))) == "f(@2,@5)");
    CHECK(to_string(normalize(a, E("comp(@3; h(a)+b)"))) == "b+h(a)");
    CHECK(to_string(normalize(a, E("comp(f(@1,@2); @2, @1)"))) == "f(@2,@1)");
    CHECK(to_string(normalize(a, E("comp(cstar(f(@1,b)+f(b,@1)); @4)"))) ==
          "cstar(f(@4,b)+f(b,@4))");
    CHECK(to_string(normalize(a, E("comp(comp1(f(@1,@2), h(@1)); @3, @1)"))) ==
          "comp(f(@1,@2); h(@3), @1)");
  }
  SUBCASE("partial composition with a single-hole head becomes composition") {
    CHECK(to_string(normalize(a, E("comp1(cstar(h(@1)), h(@1))"))) ==
          "comp(cstar(h(@1)); h(@1))");
    CHECK(to_string(normalize(a, E("comp1(@1, h(a))"))) == "h(a)");
    CHECK(E("comp1(f(@1,@2), h(@1))")->kind == Expr::Kind::Comp1);
    CHECK(normalize(a, E("comp1(f(@1,@2), h(@1))"))->kind == Expr::Kind::Comp1);
  }
  SUBCASE("idempotent and language-preserving on the corpus") {
    for (const ExprPtr& e : corpus()) {
      ExprPtr n1 = normalize(a, e);
      CHECK(equal(n1, normalize(a, n1)));
      CHECK(enumerate(a, e, 7).trees() == enumerate(a, n1, 7).trees());
    }
  }
}

TEST_CASE("structural hole membership") {
  Alphabet a = sigma();
  CHECK(eps_member(a, 1, E("@1")));
  CHECK_FALSE(eps_member(a, 2, E("@1")));
  CHECK_FALSE(eps_member(a, 1, E("h(@1)")));
  CHECK(eps_member(a, 1, E("@1+h(@1)")));
  CHECK(eps_member(a, 1, E(kL3)));
  CHECK(eps_member(a, 2, E("cstar(f(@2,b)+f(b,@2))")));
  CHECK(eps_member(a, 1, E("prod[b](cstar(f(@1,b)+f(b,@1)), star[b](h(a)+f(b,b)))")));
  CHECK_FALSE(eps_member(a, 1, E("comp(cstar(h(@1)); h(@1))")));
  CHECK(eps_member(a, 1, E("comp(cstar(h(@1)); cstar(f(@1,b)+f(b,@1)))")));
  CHECK(eps_member(a, 3, E("inc[2](@1)")));
  CHECK_FALSE(eps_member(a, 1, E("inc[2](@1)")));
  // cross-validated against the size-1 slice
  for (const ExprPtr& e : corpus())
    for (int x = 1; x <= 3; ++x)
      CHECK(eps_member(a, x, e) == enumerate(a, e, 1).contains(Tree::hole(x)));
}

TEST_CASE("states are canonical") {
  Alphabet a = sigma();
  QuotientState s = state_of(a, {E("h(a)+b"), E("b+h(a)"), E("b")});
  CHECK(s.members().size() == 2);
  CHECK(s.key() == "{ b ; h(a) }");
  CHECK(to_string(s) == "{ b ; h(a) }");
  QuotientState again = parse_state(to_string(s), a);
  CHECK(again == s);
  CHECK(parse_state("{}", a, {1}).empty());
  CHECK(empty_state({1}).indices() == IndexSet{1});
  CHECK_THROWS_AS(state_of(a, {E("a"), E("@1")}), analysis_error);
}

TEST_CASE("quotients of the worked example's star language") {
  Alphabet a = sigma();
  QuotientState l2 = S(kL2);

  QuotientState by_b = d_symbol(a, "b", l2);
  CHECK(by_b == S("prod[b](cstar(f(@1,b)+f(b,@1)), star[b](h(a)+f(b,b)))"));
  CHECK(by_b.nullable());

  QuotientState by_a = d_symbol(a, "a", l2);
  CHECK(by_a == S("prod[b](comp1(cstar(f(@1,b)+f(b,@1)), h(@1)), star[b](h(a)+f(b,b)))"));
  CHECK_FALSE(by_a.nullable());

  QuotientState by_h = d_symbol(a, "h", l2);
  CHECK(by_h.empty());

  // b^-1(b^-1(L2)) matches the paper's (L4 .b L2) o1 (L3 .b L2) as a language
  QuotientState twice = d_symbol(a, "b", by_b);
  const char* kL4 =
      "comp(comp(cstar(f(@1,b)+f(b,@1)); f(@1,@2)+f(@2,@1)); @1, cstar(f(@2,b)+f(b,@2)))";
  ExprPtr formula = parse_expr("comp1(prod[b](" + std::string(kL4) + ", " + kL2 + "), prod[b](" +
                                   kL3 + ", " + kL2 + "))",
                               a);
  for (int n = 2; n <= 8; ++n)
    CHECK(enumerate(a, twice, n).trees() == enumerate(a, formula, n).trees());
}

TEST_CASE("quotients of the composition closure") {
  Alphabet a = sigma();
  CHECK(d_symbol(a, "h", S(kX3)) == S(kX3));
  CHECK(d_symbol(a, "a", S(kX3)).empty());
  CHECK(d_symbol(a, "b", S(kX3)).empty());
  // closures with deeper bodies keep the self-similar shape
  QuotientState hh = d_symbol(a, "h", S("cstar(h(h(@1)))"));
  CHECK_FALSE(hh.empty());
  for (int n = 1; n <= 7; ++n) {
    TreeSet lhs = enumerate(a, hh, n);
    TreeSet rhs(IndexSet{1, 2});
    TreeSet up = enumerate(a, E("cstar(h(h(@1)))"), n + 1);
    for (const Tree& u : up.trees())
      rhs = TreeSet::union_of(rhs, quotient_by_symbol(a, "h", u));
    std::set<Tree> bounded;
    for (const Tree& v : rhs.trees())
      if (v.size() <= n) bounded.insert(v);
    CHECK(lhs.trees() == bounded);
  }
}

TEST_CASE("quotients of the worked example's full language") {
  Alphabet a = sigma();
  QuotientState l1 = S(kL1);

  QuotientState x1 = d_tree(a, T("a"), l1);
  CHECK(x1 == S(kX1));
  CHECK_FALSE(x1.nullable());

  QuotientState x2 = d_tree(a, T("b"), l1);
  CHECK(x2 == S(kX2));
  CHECK(x2.nullable());

  CHECK(d_tree(a, T("h(a)"), l1) == S(kX2));
  CHECK(d_tree(a, T("h(b)"), l1) == S(kX3));
  CHECK(d_tree(a, T("h(h(b))"), l1) == S(kX3));
  CHECK(d_tree(a, T("f(b,b)"), l1) == S(kX2));
  CHECK(S(kX3).nullable());

  // deterministic continuation: the h-images of the discovered states
  CHECK(d_symbol(a, "h", x1) == S(kX2));
  CHECK(d_symbol(a, "h", x2) == S(kX3));
}

TEST_CASE("hole quotients on states") {
  Alphabet a = sigma();
  CHECK(d_eps(a, 1, S(kX3)) == S(kX3));
  CHECK(d_eps(a, 2, S(kX3)).empty());
  CHECK(d_eps(a, 2, S(kX3)).indices() == IndexSet{1, 2});
  // reindexing pushes into the members
  CHECK(d_eps(a, 2, S("cstar(f(@2,b)+f(b,@2))")) == S(kL3));
  CHECK(d_eps(a, 1, S("f(@1,@2)")) == S("f(@1,@3)"));
}

TEST_CASE("union of states quotients member-wise") {
  Alphabet a = sigma();
  QuotientState both = state_of(a, {E(kL2), E("h(a)")});
  QuotientState dj = d_symbol(a, "a", both);
  QuotientState left = d_symbol(a, "a", S(kL2));
  QuotientState right = d_symbol(a, "a", S("h(a)"));
  std::vector<ExprPtr> merged;
  for (const ExprPtr& m : left.members()) merged.push_back(m);
  for (const ExprPtr& m : right.members()) merged.push_back(m);
  CHECK(dj == state_of(a, merged));
}

TEST_CASE("star quotients when the anchor or the symbol is absent") {
  Alphabet a = sigma();
  // no b anywhere in the body: the quotient degenerates to the bare hole
  QuotientState q = d_symbol(a, "b", S("star[b](h(a))"));
  REQUIRE(q.members().size() == 1);
  CHECK(to_string(q.members()[0]) == "prod[b](@1, star[b](h(a)))");
  for (int n = 1; n <= 5; ++n)
    CHECK(enumerate(a, q, n).trees() == std::set<Tree>{Tree::hole(1)});

  CHECK(d_symbol(a, "b", S("star[a](h(a))")).empty());
  QuotientState by_a = d_symbol(a, "a", S("star[a](h(a))"));
  CHECK(by_a == S("prod[a](cstar(h(@1)), star[a](h(a)))"));
  CHECK(d_symbol(a, "h", by_a) == by_a);
}

TEST_CASE("tree quotients by hole-carrying divisors") {
  Alphabet a = sigma();
  CHECK(d_tree(a, T("h(@2)"), S("f(@1,h(@2))")) == S("f(@2,@1)"));
  CHECK(d_tree(a, T("h(@1)"), S("f(@1,h(@2))")).empty());
  CHECK(d_tree(a, T("f(@1,@2)"), S("f(@1,@2)")) == S("@1"));
  // against the tree-level oracle on a slice of a closure
  QuotientState q = d_tree(a, T("h(@2)"), S("cstar(f(h(@2),b)+f(b,@2))"));
  for (int n = 1; n <= 6; ++n) {
    TreeSet lhs = enumerate(a, q, n);
    TreeSet up = enumerate(a, S("cstar(f(h(@2),b)+f(b,@2))"), n + 1);
    std::set<Tree> rhs;
    for (const Tree& u : up.trees()) {
      TreeSet cut = brute_force_quotient(a, T("h(@2)"), u);
      for (const Tree& v : cut.trees())
        if (v.size() <= n) rhs.insert(v);
    }
    CHECK(lhs.trees() == rhs);
  }
}

TEST_CASE("tree quotients chain through compositions") {
  Alphabet a = sigma();
  // f(b,b)^-1(L2) per the worked example equals L3 .b L2
  QuotientState q = d_tree(a, T("f(b,b)"), S(kL2));
  CHECK(q == S("prod[b](cstar(f(@1,b)+f(b,@1)), star[b](h(a)+f(b,b)))"));
  // h(a)^-1(L2) = L3 .b L2 as well
  CHECK(d_tree(a, T("h(a)"), S(kL2)) == q);
  // missing divisor indices give the empty state with the bookkeeping law
  QuotientState none = d_tree(a, T("f(@7,b)"), S(kL2));
  CHECK(none.empty());
  CHECK(none.indices() == IndexSet{1});
}
