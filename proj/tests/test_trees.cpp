#include "doctest.h"
#include "treeq/quotients.hpp"
#include "treeq/random.hpp"
#include "treeq/tree.hpp"

using namespace treeq;

namespace {

Alphabet sigma() { return Alphabet{{"a", 0}, {"b", 0}, {"h", 1}, {"g", 2}, {"f", 2}}; }

Tree T(const std::string& text) { return parse_tree(text, sigma()); }

}  // namespace

TEST_CASE("tree parsing and printing") {
  Alphabet a = sigma();
  CHECK(to_string(T("f(a,g(b,a))")) == "f(a,g(b,a))");
  CHECK(to_string(T("  f( @2 , g( @1 ,@3) ) ")) == "f(@2,g(@1,@3))");
  CHECK(T("a") == Tree::node("a"));
  CHECK_THROWS_AS(parse_tree("k(a)", a), parse_error);
  CHECK_THROWS_AS(parse_tree("f(a)", a), parse_error);
  CHECK_THROWS_AS(parse_tree("@0", a), parse_error);
  CHECK_THROWS_AS(parse_tree("f(a,b) junk", a), parse_error);
}

TEST_CASE("eps indices") {
  CHECK(eps_indices(T("f(@2,g(@1,@3))")) == IndexSet{1, 2, 3});
  CHECK(eps_indices(T("a")) == IndexSet{});
  CHECK(eps_indices(T("f(@3,b)")) == IndexSet{3});
  CHECK_THROWS_AS(eps_indices(T("f(@1,@1)")), analysis_error);
  CHECK(eps_index_set(T("f(@1,@1)")) == IndexSet{1});
  CHECK(has_duplicate_eps(T("f(@1,@1)")));
  CHECK_FALSE(has_duplicate_eps(T("f(@1,@2)")));
}

TEST_CASE("composition") {
  CHECK(compose(T("f(@1,g(@2,@3))"), {T("a"), T("b"), T("a")}) == T("f(a,g(b,a))"));
  // occurrences are not indexed by apparition order
  CHECK(compose(T("f(@2,g(@1,@3))"), {T("a"), T("b"), T("a")}) == T("f(b,g(a,a))"));
  CHECK(compose(T("@1"), {T("g(a,b)")}) == T("g(a,b)"));
  CHECK_THROWS_AS(compose(T("f(@1,@2)"), {T("a")}), analysis_error);
  CHECK_THROWS_AS(compose(T("f(@1,@2)"), {T("h(@4)"), T("g(@4,b)")}), analysis_error);

  SUBCASE("identity laws") {
    Tree t = T("f(g(@2,a),@7)");
    CHECK(compose(t, {Tree::hole(2), Tree::hole(7)}) == t);
    CHECK(compose(Tree::hole(1), {t}) == t);
  }
}

TEST_CASE("partial composition grafts the least hole") {
  CHECK(compose1(T("g(@1,@2)"), T("h(@5)")) == T("g(h(@5),@2)"));
  CHECK(compose1(T("g(@1,@2)"), T("h(@5)")) == compose(T("g(@1,@2)"), {T("h(@5)"), Tree::hole(2)}));
  CHECK(compose1(Tree::hole(1), T("g(a,b)")) == T("g(a,b)"));
  CHECK(compose1(T("f(@2,@7)"), T("a")) == T("f(a,@7)"));
  CHECK(compose1(T("f(@2,@7)"), T("a")) == compose(T("f(@2,@7)"), {T("a"), Tree::hole(7)}));
  CHECK_THROWS_AS(compose1(T("a"), T("b")), analysis_error);
}

TEST_CASE("index shifting") {
  CHECK(inc_eps(1, T("g(h(@1),@2)")) == T("g(h(@2),@3)"));
  Tree t = T("f(g(@4,a),@1)");
  CHECK(inc_eps(0, t) == t);
  CHECK(compose(inc_eps(1, T("f(@2,@4)")), {Tree::hole(2), Tree::hole(4)}) == T("f(@2,@4)"));

  SUBCASE("round trip holds for arbitrary trees") {
    Rng rng(7);
    Alphabet a = sigma();
    for (int i = 0; i < 200; ++i) {
      Tree u = random_tree(rng, a, 9, 35);
      std::vector<Tree> eps;
      for (int j : eps_indices(u)) eps.push_back(Tree::hole(j));
      CHECK(compose(inc_eps(1, u), eps) == u);
      CHECK(eps_index_set(inc_eps(3, u)) == index_shift(eps_index_set(u), 3));
    }
  }
}

TEST_CASE("validation diagnostics") {
  Alphabet a{{"a", 0}, {"b", 0}, {"f", 2}};
  CHECK(validate(parse_tree("f(a,b)", a), a).empty());
  Tree bad_arity = Tree::node("f", {Tree::node("a")});
  auto diags = validate(bad_arity, a);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].message.find("arity") != std::string::npos);
  Tree dup = Tree::node("f", {Tree::hole(1), Tree::hole(1)});
  diags = validate(dup, a);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].message.find("more than once") != std::string::npos);
  Tree undeclared = Tree::node("z");
  CHECK(validate(undeclared, a).size() == 1);
}

TEST_CASE("canonical order and tree sets") {
  // holes sort before nodes, then symbol, then children
  CHECK(Tree::compare(Tree::hole(1), T("a")) < 0);
  CHECK(Tree::compare(T("f(@1,a)"), T("f(a,@1)")) < 0);
  CHECK(Tree::compare(T("a"), T("b")) < 0);

  TreeSet s(IndexSet{1});
  s.insert(T("h(@1)"));
  s.insert(T("@1"));
  CHECK(to_string(s) == "{ @1 ; h(@1) }");
  CHECK_THROWS_AS(s.insert(T("a")), analysis_error);
  CHECK(to_string(TreeSet(IndexSet{2})) == "{}");
  CHECK_THROWS_AS(TreeSet::union_of(TreeSet{T("@1")}, TreeSet{T("@2")}), analysis_error);
}

TEST_CASE("slice generators") {
  Alphabet small{{"a", 0}, {"b", 0}, {"h", 1}, {"f", 2}};
  auto trees1 = all_trees(small, 1);
  REQUIRE(trees1.size() == 2);
  CHECK(trees1[0] == Tree::node("a"));
  auto trees2 = all_trees(small, 2);
  CHECK(trees2.size() == 4);  // a, b, h(a), h(b)
  auto ctx1 = all_contexts(small, 1);
  REQUIRE(ctx1.size() == 1);
  CHECK(ctx1[0] == Tree::hole(1));
  for (const Tree& c : all_contexts(small, 4)) CHECK(eps_indices(c) == IndexSet{1});
}

TEST_CASE("compose agrees with textual hole substitution") {
  Alphabet a = sigma();
  Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    Tree t = random_tree(rng, a, 8, 40);
    IndexSet holes = eps_indices(t);
    std::vector<Tree> args;
    for (size_t k = 0; k < holes.size(); ++k) args.push_back(random_tree(rng, a, 4, 0));
    Tree composed = compose(t, args);
    std::string text = to_string(t);
    std::string expected;
    for (size_t p = 0; p < text.size();) {
      if (text[p] != '@') {
        expected += text[p++];
        continue;
      }
      size_t q = p + 1;
      while (q < text.size() && isdigit(static_cast<unsigned char>(text[q]))) ++q;
      int idx = std::stoi(text.substr(p + 1, q - p - 1));
      size_t rank = std::lower_bound(holes.begin(), holes.end(), idx) - holes.begin();
      expected += to_string(args[rank]);
      p = q;
    }
    CHECK(composed == parse_tree(expected, a));
    IndexSet want;
    for (const Tree& arg : args) want = index_union(want, eps_index_set(arg));
    CHECK(eps_index_set(composed) == want);
  }
}
