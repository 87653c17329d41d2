#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "treeq/automaton.hpp"
#include "treeq/checks.hpp"

namespace {

using namespace treeq;

std::string slurp(std::istream& in) {
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string read_arg(const std::string& value) {
  if (value == "-") return slurp(std::cin);
  return value;
}

std::string read_file_or_stdin(const std::string& value) {
  if (value == "-") return slurp(std::cin);
  std::ifstream in(value);
  if (!in) throw parse_error("cannot open file '" + value + "'");
  return slurp(in);
}

Alphabet load_alphabet(const std::string& source) {
  if (source.find('{') != std::string::npos) return parse_alphabet(source);
  std::ifstream in(source);
  if (!in) throw parse_error("cannot open alphabet file '" + source + "'");
  return parse_alphabet(slurp(in));
}

nlohmann::ordered_json tree_set_json(const TreeSet& s) {
  nlohmann::ordered_json j;
  std::vector<std::string> trees;
  for (const Tree& t : s.trees()) trees.push_back(to_string(t));
  j["trees"] = trees;
  j["indices"] = s.indices();
  return j;
}

nlohmann::ordered_json state_json(const QuotientState& s) {
  nlohmann::ordered_json j;
  std::vector<std::string> members;
  for (const ExprPtr& m : s.members()) members.push_back(to_string(m));
  j["members"] = members;
  j["indices"] = s.indices();
  j["nullable"] = s.nullable();
  return j;
}

void emit_automaton(const TreeAutomaton& a, const std::string& format) {
  if (format == "dot")
    std::cout << to_dot(a);
  else
    std::cout << to_json(a) << "\n";
}

int run(int argc, char** argv) {
  CLI::App app{"bottom-up quotients of regular tree languages"};
  app.require_subcommand(1);

  std::string alphabet_src = "alphabet { a:0, b:0, h:1, f:2 }";
  std::string format = "text";
  int max_size = 8;
  int budget = 512;
  uint64_t seed = 1;
  app.add_option("--alphabet", alphabet_src, "alphabet, inline `alphabet { a:0, ... }` or a file");
  app.add_option("--format", format, "text | json | dot")
      ->check(CLI::IsMember({"text", "json", "dot"}));
  app.add_option("--max-size", max_size, "tree size bound for enumerations")->check(CLI::PositiveNumber);
  app.add_option("--budget", budget, "state budget for automaton construction")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "seed for randomized suites");

  // quotient
  auto* quotient = app.add_subcommand("quotient", "bottom-up quotient of a tree or an expression");
  std::string by_arg, of_arg, of_expr_arg;
  quotient->add_option("--by", by_arg, "divisor tree (symbols are nullary trees)")->required();
  auto* of_opt = quotient->add_option("--of", of_arg, "dividend tree");
  auto* of_expr_opt = quotient->add_option("--of-expr", of_expr_arg, "dividend expression");
  quotient->callback([&] {
    Alphabet sigma = load_alphabet(alphabet_src);
    Tree by = parse_tree(read_arg(by_arg), sigma);
    if ((of_opt->count() == 0) == (of_expr_opt->count() == 0))
      throw parse_error("quotient needs exactly one of --of / --of-expr");
    if (of_opt->count()) {
      Tree of = parse_tree(read_arg(of_arg), sigma);
      TreeSet result = quotient_tree_by_tree(sigma, by, of);
      if (format == "json")
        std::cout << tree_set_json(result).dump(2) << "\n";
      else
        std::cout << to_string(result) << "\n";
    } else {
      ExprPtr of = parse_expr(read_arg(of_expr_arg), sigma);
      QuotientState result = d_tree(sigma, by, state_of(sigma, {of}));
      if (format == "json")
        std::cout << state_json(result).dump(2) << "\n";
      else
        std::cout << to_string(result) << "\n";
    }
  });

  // member
  auto* member_cmd = app.add_subcommand("member", "membership of a tree in an expression language");
  std::string member_tree, member_expr;
  member_cmd->add_option("tree", member_tree, "candidate tree")->required();
  member_cmd->add_option("expr", member_expr, "expression")->required();
  int member_verdict = 0;
  member_cmd->callback([&] {
    Alphabet sigma = load_alphabet(alphabet_src);
    Tree t = parse_tree(read_arg(member_tree), sigma);
    ExprPtr e = parse_expr(read_arg(member_expr), sigma);
    bool by_enumeration = member(sigma, t, e);
    bool by_quotient = d_tree(sigma, t, state_of(sigma, {e})).nullable();
    if (format == "json") {
      nlohmann::ordered_json j;
      j["enumeration"] = by_enumeration;
      j["quotient_nullable"] = by_quotient;
      j["member"] = by_enumeration;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "enumeration: " << (by_enumeration ? "true" : "false") << "\n";
      std::cout << "quotient-nullable: " << (by_quotient ? "true" : "false") << "\n";
      std::cout << "member: " << (by_enumeration ? "true" : "false") << "\n";
    }
    if (by_enumeration != by_quotient) {
      std::cerr << "property violation: enumeration and quotient membership disagree\n";
      member_verdict = 1;
      return;
    }
    member_verdict = by_enumeration ? 0 : 1;
  });

  // build
  auto* build = app.add_subcommand("build", "compile an expression to a tree automaton");
  std::string build_expr, via = "quotient";
  build->add_option("expr", build_expr, "0-homogeneous expression")->required();
  build->add_option("--via", via, "quotient | subset")->check(CLI::IsMember({"quotient", "subset"}));
  build->callback([&] {
    Alphabet sigma = load_alphabet(alphabet_src);
    ExprPtr e = parse_expr(read_arg(build_expr), sigma);
    if (via == "quotient") {
      QuotientAutomaton qa = build_quotient_automaton(sigma, e, budget);
      emit_automaton(qa.automaton, format);
    } else {
      emit_automaton(determinize(expr_to_nfa(sigma, e)), format);
    }
  });

  // minimize
  auto* minimize_cmd = app.add_subcommand("minimize", "minimize a deterministic automaton (JSON)");
  std::string minimize_in;
  minimize_cmd->add_option("automaton", minimize_in, "automaton JSON file, or - for stdin")->required();
  minimize_cmd->callback([&] {
    TreeAutomaton a = automaton_from_json(read_file_or_stdin(minimize_in));
    emit_automaton(minimize(a), format);
  });

  // equiv
  auto* equiv = app.add_subcommand("equiv", "language equivalence via minimal automata");
  std::vector<std::string> equiv_args;
  bool equiv_automata = false;
  equiv->add_option("inputs", equiv_args, "two expressions, or two automaton files with --automata")
      ->expected(2);
  equiv->add_flag("--automata", equiv_automata, "inputs are automaton JSON files");
  int equiv_verdict = 0;
  equiv->callback([&] {
    TreeAutomaton m1, m2;
    if (equiv_automata) {
      m1 = minimize(determinize(automaton_from_json(read_file_or_stdin(equiv_args[0]))));
      m2 = minimize(determinize(automaton_from_json(read_file_or_stdin(equiv_args[1]))));
    } else {
      Alphabet sigma = load_alphabet(alphabet_src);
      ExprPtr e1 = parse_expr(read_arg(equiv_args[0]), sigma);
      ExprPtr e2 = parse_expr(read_arg(equiv_args[1]), sigma);
      m1 = minimize(build_quotient_automaton(sigma, e1, budget).automaton);
      m2 = minimize(build_quotient_automaton(sigma, e2, budget).automaton);
    }
    bool same = isomorphic(m1, m2);
    if (format == "json") {
      nlohmann::ordered_json j;
      j["equivalent"] = same;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "equivalent: " << (same ? "true" : "false") << "\n";
    }
    equiv_verdict = same ? 0 : 1;
  });

  // enumerate
  auto* enum_cmd = app.add_subcommand("enumerate", "all language members up to --max-size");
  std::string enum_expr;
  enum_cmd->add_option("expr", enum_expr, "expression")->required();
  enum_cmd->callback([&] {
    Alphabet sigma = load_alphabet(alphabet_src);
    ExprPtr e = parse_expr(read_arg(enum_expr), sigma);
    TreeSet slice = enumerate(sigma, e, max_size);
    if (format == "json") {
      std::cout << tree_set_json(slice).dump(2) << "\n";
    } else {
      for (const Tree& t : slice.trees()) std::cout << to_string(t) << "\n";
    }
  });

  // check
  auto* check = app.add_subcommand("check", "run the cross-validation property suites");
  int cases = 1000;
  int slice = 8;
  check->add_option("--cases", cases, "random quotient pairs")->check(CLI::PositiveNumber);
  check->add_option("--slice", slice, "slice bound for the symbolic suites")->check(CLI::PositiveNumber);
  int check_verdict = 0;
  check->callback([&] {
    CheckOptions opt;
    opt.seed = seed;
    opt.random_cases = cases;
    opt.max_tree_size = 12;
    opt.slice = slice;
    opt.budget = budget;
    std::cout << "running property suites (seed " << seed << ")\n";
    CheckResult result = run_checks(opt, std::cout);
    std::cout << result.cases << " cases, " << result.failures << " failures\n";
    check_verdict = result.failures == 0 ? 0 : 1;
  });

  // global options may also appear after the subcommand name
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const budget_error& e) {
    std::cerr << "error: " << e.what() << "\nfrontier:\n" << e.frontier << "\n";
    return 3;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what();
    if (e.pos >= 0) std::cerr << " at offset " << e.pos;
    std::cerr << "\n";
    return 2;
  } catch (const analysis_error& e) {
    std::cerr << "error: " << e.what();
    if (e.pos >= 0) std::cerr << " at offset " << e.pos;
    std::cerr << "\n";
    return 2;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return member_verdict + equiv_verdict + check_verdict;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
