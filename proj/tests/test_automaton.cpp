#include "doctest.h"
#include "treeq/automaton.hpp"
#include "treeq/checks.hpp"

using namespace treeq;

namespace {

Alphabet sigma() { return corpus_alphabet(); }

Tree T(const std::string& text) { return parse_tree(text, sigma()); }

ExprPtr E(const std::string& text) { return parse_expr(text, sigma()); }

// The minimal automaton of the worked example: a -> X1, b -> X2,
// h: X1 -> X2 -> X3 -> X3, f(X2,X2) -> X2, finals {X2, X3}.
TreeAutomaton figure_automaton() {
  TreeAutomaton a;
  a.alphabet = sigma();
  a.num_states = 3;
  a.finals = {1, 2};
  a.delta[{"a", {}}] = {0};
  a.delta[{"b", {}}] = {1};
  a.delta[{"h", {0}}] = {1};
  a.delta[{"h", {1}}] = {2};
  a.delta[{"h", {2}}] = {2};
  a.delta[{"f", {1, 1}}] = {1};
  return a;
}

const char* kL1 = "comp(cstar(h(@1)); star[b](h(a)+f(b,b)))";

}  // namespace

TEST_CASE("runs over the figure automaton") {
  TreeAutomaton a = figure_automaton();
  CHECK(run_delta(a, T("a")) == std::set<int>{0});
  CHECK(run_delta(a, T("f(b,b)")) == std::set<int>{1});
  CHECK(run_delta(a, T("f(a,a)")).empty());
  CHECK(run_context(a, Tree::hole(1), 2) == std::set<int>{2});
  CHECK(run_context(a, T("h(@1)"), 0) == std::set<int>{1});
  CHECK(run_context(a, T("h(h(@1))"), 1) == std::set<int>{2});
  CHECK(accepts(a, T("b")));
  CHECK_FALSE(accepts(a, T("a")));
  CHECK(accepts(a, T("h(h(b))")));
  CHECK(accepts(a, T("f(h(a),b)")));
  CHECK(accepts(a, T("h(b)")));  // runs X2 -> X3, final
  CHECK(a.deterministic());
}

TEST_CASE("trim removes inaccessible states") {
  TreeAutomaton a = figure_automaton();
  a.num_states = 5;
  a.delta[{"h", {3}}] = {4};  // island
  a.finals.insert(4);
  TreeAutomaton t = trim(a);
  CHECK(t.num_states == 3);
  CHECK(isomorphic(t, figure_automaton()));
  CHECK(isomorphic(trim(t), t));
}

TEST_CASE("subset construction") {
  // two-state ambiguous automaton and its hand-built subset table
  TreeAutomaton n;
  n.alphabet = Alphabet{{"a", 0}, {"b", 0}, {"h", 1}};
  n.num_states = 2;
  n.finals = {1};
  n.delta[{"a", {}}] = {0};
  n.delta[{"b", {}}] = {0, 1};
  n.delta[{"h", {0}}] = {1};
  n.delta[{"h", {1}}] = {0, 1};
  CHECK_FALSE(n.deterministic());
  TreeAutomaton d = determinize(n);
  CHECK(d.deterministic());
  CHECK(d.num_states == 3);  // {0}, {0,1}, {1}
  for (const Tree& t : all_trees(n.alphabet, 7)) CHECK(accepts(d, t) == accepts(n, t));

  // determinizing a deterministic automaton is its trim
  TreeAutomaton fig = figure_automaton();
  CHECK(isomorphic(determinize(fig), fig));
}

TEST_CASE("minimization") {
  TreeAutomaton fig = figure_automaton();
  TreeAutomaton m = minimize(fig);
  CHECK(m.num_states == 3);
  CHECK(isomorphic(m, fig));

  SUBCASE("a duplicated state merges back") {
    // split X2 into 1 and 3 with the incoming edges divided between them
    TreeAutomaton dup;
    dup.alphabet = sigma();
    dup.num_states = 4;
    dup.finals = {1, 2, 3};
    dup.delta[{"a", {}}] = {0};
    dup.delta[{"b", {}}] = {1};
    dup.delta[{"h", {0}}] = {3};
    dup.delta[{"h", {1}}] = {2};
    dup.delta[{"h", {3}}] = {2};
    dup.delta[{"h", {2}}] = {2};
    dup.delta[{"f", {1, 1}}] = {3};
    dup.delta[{"f", {1, 3}}] = {1};
    dup.delta[{"f", {3, 1}}] = {3};
    dup.delta[{"f", {3, 3}}] = {1};
    TreeAutomaton dm = minimize(dup);
    CHECK(dm.num_states == 3);
    CHECK(isomorphic(dm, fig));
  }

  SUBCASE("one accepting state is already minimal") {
    TreeAutomaton one;
    one.alphabet = Alphabet{{"a", 0}, {"h", 1}};
    one.num_states = 1;
    one.finals = {0};
    one.delta[{"a", {}}] = {0};
    one.delta[{"h", {0}}] = {0};
    TreeAutomaton m1 = minimize(one);
    CHECK(m1.num_states == 1);
    CHECK(isomorphic(m1, one));
  }

  SUBCASE("nondeterministic input is rejected") {
    TreeAutomaton bad = fig;
    bad.delta[{"a", {}}] = {0, 1};
    CHECK_THROWS_AS(minimize(bad), analysis_error);
  }
}

TEST_CASE("expression compilation preserves slice languages") {
  Alphabet a = sigma();
  for (const char* src : {"h(a)", "a+b", "star[b](h(a)+f(b,b))", "prod[a](h(a), b)",
                          "comp(f(@1,@2); a, b)", "star[a](h(a))", kL1}) {
    ExprPtr e = E(src);
    TreeAutomaton nfa = expr_to_nfa(a, e);
    TreeSet slice = enumerate(a, e, 6);
    for (const Tree& t : all_trees(a, 6))
      CHECK_MESSAGE(accepts(nfa, t) == slice.contains(t), src << " on " << to_string(t));
  }
  CHECK_THROWS_AS(expr_to_nfa(a, E("cstar(h(@1))")), analysis_error);
}

TEST_CASE("the quotient automaton of the worked example") {
  Alphabet a = sigma();
  QuotientAutomaton qa = build_quotient_automaton(a, E(kL1), 64);
  CHECK(qa.automaton.deterministic());
  // X1, X2, X3 plus the empty quotient
  CHECK(qa.automaton.num_states == 4);
  TreeAutomaton m = minimize(qa.automaton);
  CHECK(m.num_states == 3);
  CHECK(isomorphic(m, figure_automaton()));

  // the other pipeline reaches the same minimal automaton
  TreeAutomaton m2 = minimize(determinize(expr_to_nfa(a, E(kL1))));
  CHECK(isomorphic(m, m2));

  SUBCASE("acceptance matches membership on the slice") {
    TreeSet slice = enumerate(a, E(kL1), 6);
    for (const Tree& t : all_trees(a, 6)) CHECK(accepts(qa.automaton, t) == slice.contains(t));
  }

  SUBCASE("every run lands on the canonical quotient state") {
    QuotientState root = state_of(a, {E(kL1)});
    for (const Tree& t : all_trees(a, 5)) {
      std::set<int> states = run_delta(qa.automaton, t);
      REQUIRE(states.size() == 1);
      CHECK(qa.states[*states.begin()].key() == d_tree(a, t, root).key());
    }
  }

  SUBCASE("budget exhaustion reports the frontier") {
    CHECK_THROWS_AS(build_quotient_automaton(a, E(kL1), 2), budget_error);
  }
}

TEST_CASE("degenerate quotient automata") {
  Alphabet a = sigma();
  QuotientAutomaton qa = build_quotient_automaton(a, E("a"), 16);
  // every tree is either a (accepted) or lands in the empty quotient
  CHECK(accepts(qa.automaton, T("a")));
  CHECK_FALSE(accepts(qa.automaton, T("b")));
  CHECK_FALSE(accepts(qa.automaton, T("h(a)")));
  CHECK(qa.automaton.num_states == 2);

  // substitution chains collapse to the substituted language
  QuotientAutomaton subst = build_quotient_automaton(a, E("prod[a](a, prod[b](b, h(a)))"), 16);
  for (const Tree& t : all_trees(a, 4))
    CHECK(accepts(subst.automaton, t) == (t == T("h(a)")));
}

TEST_CASE("top languages and automaton-level quotients") {
  TreeAutomaton fig = figure_automaton();
  TreeSet x3 = top_language_slice(fig, 2, 3);
  CHECK(x3 == TreeSet{Tree::hole(1), T("h(@1)"), T("h(h(@1))")});
  CHECK(top_language_slice(fig, 0, 1).empty());
  CHECK(top_language_slice(fig, 1, 1) == TreeSet{Tree::hole(1)});
  CHECK(quotient_via_automaton(fig, T("b"), 1) == TreeSet{Tree::hole(1)});
  CHECK(quotient_via_automaton(fig, T("a"), 1).empty());

  // against the symbolic quotient, on slices
  Alphabet a = sigma();
  QuotientState l1 = state_of(a, {E(kL1)});
  for (const char* src : {"a", "b", "h(b)", "f(b,b)"}) {
    TreeSet via_automaton = quotient_via_automaton(fig, T(src), 4);
    TreeSet via_dtree = enumerate(a, d_tree(a, T(src), l1), 4);
    CHECK(via_automaton.trees() == via_dtree.trees());
  }
}

TEST_CASE("morphisms") {
  TreeAutomaton fig = figure_automaton();

  SUBCASE("the identity is a morphism") {
    Morphism id;
    for (int q = 0; q < 3; ++q) id.phi[q] = q;
    CHECK(check_morphism(fig, fig, id));
  }

  SUBCASE("collapsing the two finals breaks a transition") {
    TreeAutomaton collapsed;
    collapsed.alphabet = sigma();
    collapsed.num_states = 2;
    collapsed.finals = {1};
    collapsed.delta[{"a", {}}] = {0};
    collapsed.delta[{"b", {}}] = {1};
    collapsed.delta[{"h", {0}}] = {1};
    collapsed.delta[{"h", {1}}] = {1};
    collapsed.delta[{"f", {1, 1}}] = {1};
    // mapping the collapsed final onto X3 loses the f-transition, onto X2
    // the h-loop; either way condition (2) fails
    Morphism onto_x3;
    onto_x3.phi = {{0, 0}, {1, 2}};
    CHECK_FALSE(check_morphism(collapsed, fig, onto_x3));
    Morphism onto_x2;
    onto_x2.phi = {{0, 0}, {1, 1}};
    CHECK_FALSE(check_morphism(collapsed, fig, onto_x2));
    CHECK_FALSE(isomorphic(collapsed, fig));
  }

  SUBCASE("every accessible DFA maps onto the quotient automaton") {
    Alphabet a = sigma();
    QuotientAutomaton target = build_quotient_automaton(a, E(kL1), 64);
    Morphism phi = compute_phi(figure_automaton(), target, a, E(kL1));
    CHECK(check_morphism(figure_automaton(), target.automaton, phi));
  }
}

TEST_CASE("isomorphism is a bijection both ways") {
  TreeAutomaton fig = figure_automaton();
  // relabel the states
  TreeAutomaton relabeled;
  relabeled.alphabet = sigma();
  relabeled.num_states = 3;
  relabeled.finals = {0, 2};
  relabeled.delta[{"a", {}}] = {1};
  relabeled.delta[{"b", {}}] = {2};
  relabeled.delta[{"h", {1}}] = {2};
  relabeled.delta[{"h", {2}}] = {0};
  relabeled.delta[{"h", {0}}] = {0};
  relabeled.delta[{"f", {2, 2}}] = {2};
  CHECK(isomorphic(fig, relabeled));
  TreeAutomaton other = relabeled;
  other.finals = {0, 1};
  CHECK_FALSE(isomorphic(fig, other));
}

TEST_CASE("serialization") {
  TreeAutomaton fig = figure_automaton();
  fig.labels[0] = "X1";
  TreeAutomaton back = automaton_from_json(to_json(fig));
  CHECK(back.num_states == fig.num_states);
  CHECK(back.finals == fig.finals);
  CHECK(back.delta == fig.delta);
  CHECK(back.labels.at(0) == "X1");
  CHECK(isomorphic(back, fig));

  std::string dot = to_dot(fig);
  CHECK(dot.find("doublecircle") != std::string::npos);
  CHECK(dot.find("shape=point") != std::string::npos);

  CHECK_THROWS_AS(automaton_from_json("{"), parse_error);
  CHECK_THROWS_AS(automaton_from_json(R"({"alphabet":{"a":0},"states":[0],"final":[3],"delta":[]})"),
                  parse_error);
}
