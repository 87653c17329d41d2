#include "treeq/checks.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include "treeq/random.hpp"

namespace treeq {

Alphabet corpus_alphabet() { return Alphabet{{"a", 0}, {"b", 0}, {"h", 1}, {"f", 2}}; }

std::vector<ExprPtr> corpus() {
  static const char* kSources[] = {
      "a",
      "b",
      "h(a)",
      "f(a,b)",
      "a+b",
      "h(a)+f(b,b)",
      "star[b](h(a)+f(b,b))",                                                        // L2
      "cstar(f(@1,b)+f(b,@1))",                                                      // L3
      "comp(comp(cstar(f(@1,b)+f(b,@1)); f(@1,@2)+f(@2,@1)); @1, cstar(f(@2,b)+f(b,@2)))",  // L4
      "comp(cstar(h(@1)); star[b](h(a)+f(b,b)))",                                    // L1
      "comp(cstar(h(@1)); prod[b](comp(cstar(f(@1,b)+f(b,@1)); h(@1)), star[b](h(a)+f(b,b))))",  // X1
      "comp(cstar(h(@1)); prod[b](cstar(f(@1,b)+f(b,@1)), star[b](h(a)+f(b,b))))",   // X2
      "cstar(h(@1))",                                                                // X3
      "prod[a](h(a), b)",
      "prod[b](f(b,b), h(a)+b)",
      "star[a](h(a))",
      "cstar(h(h(@1)))",
      "comp1(f(@1,@2), h(@1))",
      "inc[1](f(@1,@2))",
      "comp(f(@1,@2); a, b)",
      "star[b](b)",
      "cstar(@1)",
      "prod[a](f(a,a), h(b))",
      "f(@2,@1)",
      "prod[b](star[b](h(a)+f(b,b)), h(b))",
      "comp(f(@2,@1); h(@1), b)",
      "cstar(f(h(@1),b)+f(b,@1))",
      "star[b](f(b,b))",
      "prod[b](cstar(f(@1,b)+f(b,@1)), star[b](h(a)+f(b,b)))",
      "comp(cstar(h(@1)); cstar(h(@1)))",
      "comp1(comp1(f(@1,@2), h(@1)), b)",
      "prod[b](b, h(a))",
      "f(h(a),f(b,a))",
  };
  Alphabet sigma = corpus_alphabet();
  std::vector<ExprPtr> out;
  for (const char* src : kSources) out.push_back(parse_expr(src, sigma));
  return out;
}

namespace {

struct Suite {
  const CheckOptions& opt;
  std::ostream& log;
  CheckResult result;

  void record(bool ok, const std::string& what) {
    ++result.cases;
    if (!ok) {
      ++result.failures;
      if (result.first_failure.empty()) result.first_failure = what;
    }
  }

  void line(const std::string& name, int cases_before, int failures_before) {
    log << "  " << name << ": " << (result.cases - cases_before) << " cases, "
        << (result.failures - failures_before) << " failures\n";
  }
};

std::string textual_substitution(const Tree& t, const std::vector<Tree>& args) {
  IndexSet holes = eps_index_set(t);
  std::string text = to_string(t);
  std::string out;
  for (size_t i = 0; i < text.size();) {
    if (text[i] != '@') {
      out += text[i++];
      continue;
    }
    size_t j = i + 1;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    int index = std::stoi(text.substr(i + 1, j - i - 1));
    size_t rank = std::lower_bound(holes.begin(), holes.end(), index) - holes.begin();
    out += to_string(args[rank]);
    i = j;
  }
  return out;
}

// enumerate the reified language and map anchor leaves back to holes
TreeSet map_anchors_back(const Alphabet& a, const Reified& re, int n) {
  std::map<std::string, int> back;
  for (const auto& [j, name] : re.hole_symbols) back[name] = j;
  std::function<Tree(const Tree&)> demap = [&](const Tree& t) -> Tree {
    if (t.is_hole()) return t;
    auto it = back.find(t.symbol());
    if (it != back.end() && t.children().empty()) return Tree::hole(it->second);
    std::vector<Tree> kids;
    for (const Tree& c : t.children()) kids.push_back(demap(c));
    return Tree::node(t.symbol(), std::move(kids));
  };
  TreeSet raw = enumerate(re.enlarged, re.expr, n);
  std::set<Tree> mapped;
  for (const Tree& t : raw.trees()) mapped.insert(demap(t));
  IndexSet idx;
  for (const auto& [j, name] : re.hole_symbols) idx.push_back(j);
  std::sort(idx.begin(), idx.end());
  (void)a;
  return make_tree_set(mapped, idx);
}

}  // namespace

CheckResult run_checks(const CheckOptions& opt, std::ostream& log) {
  Alphabet sigma = corpus_alphabet();
  Alphabet wide{{"a", 0}, {"b", 0}, {"h", 1}, {"g", 2}, {"f", 3}};
  std::vector<ExprPtr> exprs = corpus();
  Suite s{opt, log, {}};

  // compose against the textual hole-substitution oracle
  {
    int c0 = s.result.cases, f0 = s.result.failures;
    Rng rng(opt.seed);
    for (int i = 0; i < opt.random_cases; ++i) {
      Tree t = random_tree(rng, wide, 8, 40);
      IndexSet holes = eps_index_set(t);
      std::vector<Tree> args;
      for (size_t h = 0; h < holes.size(); ++h) args.push_back(random_tree(rng, wide, 4, 0));
      Tree composed = compose(t, args);
      Tree expected = parse_tree(textual_substitution(t, args), wide);
      s.record(composed == expected, "compose mismatch on " + to_string(t));
      // identity law and the Inc_eps round trip
      std::vector<Tree> eps_args;
      for (int j : holes) eps_args.push_back(Tree::hole(j));
      s.record(compose(t, eps_args) == t, "identity composition changed " + to_string(t));
      s.record(compose(inc_eps(1, t), eps_args) == t, "Inc round-trip broke " + to_string(t));
      IndexSet got = eps_index_set(composed);
      IndexSet want;
      for (const Tree& arg : args) want = index_union(want, eps_index_set(arg));
      s.record(got == want, "composed index set law failed on " + to_string(t));
    }
    s.line("compose-oracle", c0, f0);
  }

  // chain quotient against the brute-force position scan
  {
    int c0 = s.result.cases, f0 = s.result.failures;
    Rng rng(opt.seed + 1);
    for (int i = 0; i < opt.random_cases; ++i) {
      QuotientCase qc = random_quotient_case(rng, wide, opt.max_tree_size);
      TreeSet chain = quotient_tree_by_tree(wide, qc.divisor, qc.dividend);
      TreeSet brute = brute_force_quotient(wide, qc.divisor, qc.dividend);
      std::string what = "quotient mismatch: by=" + to_string(qc.divisor) +
                         " of=" + to_string(qc.dividend) + " chain=" + to_string(chain) +
                         " brute=" + to_string(brute);
      s.record(chain.trees() == brute.trees(), what);
      for (const Tree& v : chain.trees()) {
        s.record(v.size() == qc.dividend.size() - qc.divisor.size() + 1,
                 "size law failed on " + to_string(v));
        // soundness: rebuilding the dividend through composition
        std::vector<Tree> args;
        args.push_back(qc.divisor);
        for (int y : index_minus(eps_index_set(qc.dividend), eps_index_set(qc.divisor)))
          args.push_back(Tree::hole(y));
        Tree rebuilt = compose(v, args);
        s.record(rebuilt == qc.dividend, "rebuild failed for " + to_string(v));
      }
    }
    s.line("quotient-vs-brute", c0, f0);
  }

  // membership via quotient (Prop 1 shape) and union distribution
  {
    int c0 = s.result.cases, f0 = s.result.failures;
    Rng rng(opt.seed + 2);
    for (int i = 0; i < 200; ++i) {
      TreeSet s1((IndexSet()));
      TreeSet s2((IndexSet()));
      for (int m = 0; m < 3; ++m) s1.insert(random_tree(rng, wide, 6, 0));
      for (int m = 0; m < 3; ++m) s2.insert(random_tree(rng, wide, 6, 0));
      Tree t = rng.chance(1, 2) ? *s1.trees().begin() : random_tree(rng, wide, 6, 0);
      TreeSet q = quotient_finite(wide, t, s1);
      s.record(q.contains(Tree::hole(1)) == s1.contains(t),
               "membership test failed for " + to_string(t));
      TreeSet united = quotient_finite(wide, t, TreeSet::union_of(s1, s2));
      TreeSet split = TreeSet::union_of(quotient_finite(wide, t, s1), quotient_finite(wide, t, s2));
      s.record(united.trees() == split.trees(), "union distribution failed for " + to_string(t));
    }
    s.line("membership-and-union", c0, f0);
  }

  // symbolic rules against enumeration, one slice per corpus expression
  {
    int c0 = s.result.cases, f0 = s.result.failures;
    int n = opt.slice;
    for (const ExprPtr& e : exprs) {
      QuotientState base = state_of(sigma, {e});
      TreeSet slice_e = enumerate(sigma, e, n);
      for (const auto& [alpha, k] : sigma.symbols()) {
        QuotientState d = d_symbol(sigma, alpha, base);
        TreeSet lhs = enumerate(sigma, d, n - k);
        IndexSet consumed;
        for (int i = 1; i <= k; ++i) consumed.push_back(i);
        TreeSet rhs(quotient_indices(consumed, base.indices()));
        for (const Tree& u : slice_e.trees())
          rhs = TreeSet::union_of(rhs, quotient_by_symbol(sigma, alpha, u));
        s.record(lhs.trees() == rhs.trees(),
                 "d_symbol(" + alpha + ") disagrees with enumeration on " + to_string(e));
      }
      for (int j = 1; j <= 3; ++j) {
        QuotientState d = d_eps(sigma, j, base);
        TreeSet lhs = enumerate(sigma, d, n);
        TreeSet rhs(quotient_indices({j}, base.indices()));
        for (const Tree& u : slice_e.trees()) {
          TreeSet one(eps_index_set(u));
          one.insert(u);
          rhs = TreeSet::union_of(rhs, quotient_by_eps(j, one));
        }
        s.record(lhs.trees() == rhs.trees(),
                 "d_eps(" + std::to_string(j) + ") disagrees with enumeration on " + to_string(e));
      }
    }
    s.line("symbolic-vs-enumeration", c0, f0);
  }

  // d_tree (the chained rule) against brute-force quotients of the slice
  {
    int c0 = s.result.cases, f0 = s.result.failures;
    int n = opt.slice;
    std::vector<Tree> divisors = all_trees(sigma, 3);
    for (const ExprPtr& e : exprs) {
      QuotientState base = state_of(sigma, {e});
      TreeSet slice_e = enumerate(sigma, e, n);
      for (const Tree& t : divisors) {
        int m = n - t.size() + 1;
        QuotientState d = d_tree(sigma, t, base);
        TreeSet lhs = enumerate(sigma, d, m);
        TreeSet rhs(quotient_indices(eps_index_set(t), base.indices()));
        for (const Tree& u : slice_e.trees())
          rhs = TreeSet::union_of(rhs, brute_force_quotient(sigma, t, u));
        std::set<Tree> bounded;
        for (const Tree& v : rhs.trees())
          if (v.size() <= m) bounded.insert(v);
        s.record(lhs.trees() == bounded, "d_tree(" + to_string(t) + ") disagrees with brute force on " +
                                             to_string(e));
      }
    }
    s.line("dtree-vs-bruteforce", c0, f0);
  }

  // normalization: idempotent and language-preserving; nullability agrees
  // with the size-1 slice; reification agrees after mapping anchors back
  {
    int c0 = s.result.cases, f0 = s.result.failures;
    int n = std::min(opt.slice, 8);
    for (const ExprPtr& e : exprs) {
      ExprPtr ne = normalize(sigma, e);
      s.record(equal(normalize(sigma, ne), ne), "normalize not idempotent on " + to_string(e));
      s.record(enumerate(sigma, e, n).trees() == enumerate(sigma, ne, n).trees(),
               "normalize changed the language of " + to_string(e));
      QuotientState st = state_of(sigma, {e});
      s.record(st.nullable() == enumerate(sigma, st, 1).contains(Tree::hole(1)),
               "nullability mismatch on " + to_string(e));
      for (int x = 1; x <= 3; ++x)
        s.record(eps_member(sigma, x, ne) == enumerate(sigma, ne, 1).contains(Tree::hole(x)),
                 "eps-membership mismatch on " + to_string(e));
      Reified re = reify_holes(sigma, e);
      s.record(map_anchors_back(sigma, re, n).trees() == enumerate(sigma, e, n).trees(),
               "reification changed the language of " + to_string(e));
    }
    s.line("normalize-nullable-reify", c0, f0);
  }

  if (s.result.failures > 0) log << "first counterexample: " << s.result.first_failure << "\n";
  return s.result;
}

}  // namespace treeq
