#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace treeq {

// Positioned failure. `pos` is a byte offset into the source text that was
// being parsed or analyzed, -1 for values built in memory.
struct error : std::runtime_error {
  int pos;
  explicit error(const std::string& msg, int at = -1) : std::runtime_error(msg), pos(at) {}
};

struct parse_error : error {
  using error::error;
};

struct analysis_error : error {
  using error::error;
};

// Raised when a state-space exploration exceeds its budget. `frontier` holds
// the canonical prints of the states that were still pending, for diagnosis.
struct budget_error : error {
  std::string frontier;
  budget_error(const std::string& msg, std::string pending)
      : error(msg), frontier(std::move(pending)) {}
};

// Graded alphabet: finite map from symbol name to arity. Lookup of an
// undeclared name is an error, never a silent default.
class Alphabet {
 public:
  Alphabet() = default;
  Alphabet(std::initializer_list<std::pair<const std::string, int>> syms);

  void declare(const std::string& name, int arity);
  bool contains(const std::string& name) const { return symbols_.count(name) != 0; }
  int arity(const std::string& name) const;

  const std::map<std::string, int>& symbols() const { return symbols_; }
  std::vector<std::string> with_arity(int k) const;
  int max_arity() const;

 private:
  std::map<std::string, int> symbols_;
};

// Parses `alphabet { a:0, b:0, h:1, f:2 }`; whitespace insignificant.
Alphabet parse_alphabet(const std::string& text);
std::string to_string(const Alphabet& a);

}  // namespace treeq
