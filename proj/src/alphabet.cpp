#include "treeq/alphabet.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace treeq {

namespace {

// Operator keywords of the expression grammar; not usable as symbol names.
bool reserved(const std::string& name) {
  return name == "prod" || name == "star" || name == "comp" || name == "comp1" ||
         name == "cstar" || name == "inc" || name == "alphabet";
}

}  // namespace

Alphabet::Alphabet(std::initializer_list<std::pair<const std::string, int>> syms) {
  for (const auto& [name, k] : syms) declare(name, k);
}

void Alphabet::declare(const std::string& name, int arity) {
  if (name.empty()) throw analysis_error("empty symbol name");
  if (arity < 0) throw analysis_error("negative arity for symbol '" + name + "'");
  if (reserved(name)) throw analysis_error("'" + name + "' is a reserved word");
  auto [it, fresh] = symbols_.emplace(name, arity);
  if (!fresh && it->second != arity)
    throw analysis_error("symbol '" + name + "' redeclared with a different arity");
}

int Alphabet::arity(const std::string& name) const {
  auto it = symbols_.find(name);
  if (it == symbols_.end()) throw analysis_error("undeclared symbol '" + name + "'");
  return it->second;
}

std::vector<std::string> Alphabet::with_arity(int k) const {
  std::vector<std::string> out;
  for (const auto& [name, arity] : symbols_)
    if (arity == k) out.push_back(name);
  return out;
}

int Alphabet::max_arity() const {
  int m = 0;
  for (const auto& [name, arity] : symbols_) m = std::max(m, arity);
  return m;
}

namespace {

struct Cursor {
  const std::string& text;
  size_t at = 0;

  void skip_ws() {
    while (at < text.size() && std::isspace(static_cast<unsigned char>(text[at]))) ++at;
  }
  bool eat(char c) {
    skip_ws();
    if (at < text.size() && text[at] == c) {
      ++at;
      return true;
    }
    return false;
  }
  void expect(char c, const char* what) {
    if (!eat(c)) throw parse_error(std::string("expected '") + c + "' in " + what, static_cast<int>(at));
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
  int number() {
    skip_ws();
    size_t start = at;
    while (at < text.size() && std::isdigit(static_cast<unsigned char>(text[at]))) ++at;
    if (at == start) throw parse_error("expected a number", static_cast<int>(at));
    return std::stoi(text.substr(start, at - start));
  }
  bool done() {
    skip_ws();
    return at >= text.size();
  }
};

}  // namespace

Alphabet parse_alphabet(const std::string& text) {
  Cursor c{text};
  c.skip_ws();
  if (text.compare(c.at, 8, "alphabet") == 0) c.at += 8;
  c.expect('{', "alphabet declaration");
  Alphabet a;
  if (!c.eat('}')) {
    do {
      int pos = static_cast<int>(c.at);
      std::string name = c.ident();
      c.expect(':', "alphabet declaration");
      int k = c.number();
      try {
        a.declare(name, k);
      } catch (const analysis_error& e) {
        throw parse_error(e.what(), pos);
      }
    } while (c.eat(','));
    c.expect('}', "alphabet declaration");
  }
  if (!c.done()) throw parse_error("trailing input after alphabet", static_cast<int>(c.at));
  return a;
}

std::string to_string(const Alphabet& a) {
  std::ostringstream out;
  out << "alphabet { ";
  bool first = true;
  for (const auto& [name, k] : a.symbols()) {
    if (!first) out << ", ";
    out << name << ":" << k;
    first = false;
  }
  out << " }";
  return out.str();
}

}  // namespace treeq
