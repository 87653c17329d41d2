#include "treeq/automaton.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <functional>
#include <sstream>

#include "json.hpp"

namespace treeq {

bool TreeAutomaton::deterministic() const {
  for (const auto& [key, targets] : delta)
    if (targets.size() > 1) return false;
  return true;
}

std::set<int> TreeAutomaton::step(const std::string& symbol, const std::vector<int>& args) const {
  auto it = delta.find({symbol, args});
  return it == delta.end() ? std::set<int>{} : it->second;
}

std::set<int> run_delta(const TreeAutomaton& a, const Tree& t) {
  if (t.is_hole()) throw analysis_error("run_delta needs a hole-free tree");
  if (!a.alphabet.contains(t.symbol()))
    throw analysis_error("undeclared symbol '" + t.symbol() + "'");
  std::vector<std::set<int>> child_states;
  child_states.reserve(t.children().size());
  for (const Tree& c : t.children()) child_states.push_back(run_delta(a, c));
  std::set<int> out;
  std::vector<int> tuple(t.children().size(), 0);
  std::function<void(size_t)> walk = [&](size_t i) {
    if (i == child_states.size()) {
      for (int q : a.step(t.symbol(), tuple)) out.insert(q);
      return;
    }
    for (int q : child_states[i]) {
      tuple[i] = q;
      walk(i + 1);
    }
  };
  walk(0);
  return out;
}

std::set<int> run_context(const TreeAutomaton& a, const Tree& c, int q) {
  if (c.is_hole()) {
    if (c.hole_index() != 1) throw analysis_error("contexts use the hole @1");
    return {q};
  }
  std::vector<std::set<int>> child_states;
  for (const Tree& child : c.children()) {
    if (eps_index_set(child).empty())
      child_states.push_back(run_delta(a, child));
    else
      child_states.push_back(run_context(a, child, q));
  }
  std::set<int> out;
  std::vector<int> tuple(c.children().size(), 0);
  std::function<void(size_t)> walk = [&](size_t i) {
    if (i == child_states.size()) {
      for (int t : a.step(c.symbol(), tuple)) out.insert(t);
      return;
    }
    for (int s : child_states[i]) {
      tuple[i] = s;
      walk(i + 1);
    }
  };
  walk(0);
  return out;
}

bool accepts(const TreeAutomaton& a, const Tree& t) {
  std::set<int> states = run_delta(a, t);
  for (int q : states)
    if (a.finals.count(q)) return true;
  return false;
}

namespace {

TreeAutomaton restrict_to(const TreeAutomaton& a, const std::set<int>& keep) {
  TreeAutomaton out;
  out.alphabet = a.alphabet;
  std::map<int, int> renum;
  for (int q = 0; q < a.num_states; ++q)
    if (keep.count(q)) {
      int id = static_cast<int>(renum.size());
      renum[q] = id;
    }
  out.num_states = static_cast<int>(renum.size());
  for (int q : a.finals)
    if (keep.count(q)) out.finals.insert(renum.at(q));
  for (const auto& [key, targets] : a.delta) {
    bool ok = true;
    std::vector<int> args;
    for (int s : key.second) {
      if (!keep.count(s)) {
        ok = false;
        break;
      }
      args.push_back(renum.at(s));
    }
    if (!ok) continue;
    for (int t : targets)
      if (keep.count(t)) out.delta[{key.first, args}].insert(renum.at(t));
  }
  for (const auto& [q, label] : a.labels)
    if (keep.count(q)) out.labels[renum.at(q)] = label;
  return out;
}

}  // namespace

TreeAutomaton trim(const TreeAutomaton& a) {
  std::set<int> accessible;
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& [key, targets] : a.delta) {
      bool args_ok = true;
      for (int s : key.second) args_ok = args_ok && accessible.count(s);
      if (!args_ok) continue;
      for (int t : targets)
        if (accessible.insert(t).second) grew = true;
    }
  }
  return restrict_to(a, accessible);
}

TreeAutomaton determinize(const TreeAutomaton& a) {
  std::map<std::set<int>, int> id_of;
  std::vector<std::set<int>> subsets;
  TreeAutomaton out;
  out.alphabet = a.alphabet;

  auto intern = [&](const std::set<int>& s) {
    auto it = id_of.find(s);
    if (it != id_of.end()) return it->second;
    int id = static_cast<int>(subsets.size());
    id_of.emplace(s, id);
    subsets.push_back(s);
    for (int q : s)
      if (a.finals.count(q)) {
        out.finals.insert(id);
        break;
      }
    return id;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [name, k] : a.alphabet.symbols()) {
      if (k == 0) {
        std::set<int> image = a.step(name, {});
        if (image.empty()) continue;
        std::pair<std::string, std::vector<int>> key{name, {}};
        size_t before = subsets.size();
        int id = intern(image);
        if (subsets.size() != before || !out.delta.count(key)) changed = true;
        out.delta[key] = {id};
        continue;
      }
      // every k-tuple over the subsets known so far
      std::vector<int> tuple(k, 0);
      std::function<void(int)> walk = [&](int i) {
        if (i == k) {
          std::pair<std::string, std::vector<int>> key{name, tuple};
          if (out.delta.count(key)) return;
          std::set<int> image;
          std::vector<int> qs(k, 0);
          std::function<void(int)> inner = [&](int j) {
            if (j == k) {
              for (int t : a.step(name, qs)) image.insert(t);
              return;
            }
            for (int q : subsets[tuple[j]]) {
              qs[j] = q;
              inner(j + 1);
            }
          };
          inner(0);
          if (image.empty()) return;
          intern(image);
          out.delta[key] = {id_of.at(image)};
          changed = true;
          return;
        }
        int known = static_cast<int>(subsets.size());
        for (int s = 0; s < known; ++s) {
          tuple[i] = s;
          walk(i + 1);
        }
      };
      walk(0);
    }
  }
  out.num_states = static_cast<int>(subsets.size());
  return out;
}

TreeAutomaton minimize(const TreeAutomaton& input) {
  if (!input.deterministic()) throw analysis_error("minimize needs a deterministic automaton");
  TreeAutomaton a = trim(input);
  int n = a.num_states;
  int sink = n;  // internal sink making delta total

  auto total_step = [&](const std::string& f, const std::vector<int>& args) {
    for (int s : args)
      if (s == sink) return sink;
    std::set<int> t = a.step(f, args);
    return t.empty() ? sink : *t.begin();
  };

  std::vector<int> block(n + 1);
  for (int q = 0; q < n; ++q) block[q] = a.finals.count(q) ? 1 : 0;
  block[sink] = 0;

  // Moore refinement: split on (symbol, position, co-argument blocks, target
  // block) signatures until stable.
  while (true) {
    std::map<std::pair<int, std::string>, int> next_id;
    std::vector<int> next_block(n + 1);
    for (int q = 0; q <= n; ++q) {
      // Moore signature: target blocks over every symbol, argument position
      // and raw co-argument tuple, streamed in a fixed order.
      std::ostringstream sig;
      for (const auto& [name, k] : a.alphabet.symbols()) {
        if (k == 0) continue;
        std::vector<int> args(k, 0);
        std::function<void(int, int)> walk = [&](int i, int pos) {
          if (i == k) {
            sig << "," << block[total_step(name, args)];
            return;
          }
          if (i == pos) {
            args[i] = q;
            walk(i + 1, pos);
            return;
          }
          for (int s = 0; s <= n; ++s) {
            args[i] = s;
            walk(i + 1, pos);
          }
        };
        for (int pos = 0; pos < k; ++pos) walk(0, pos);
      }
      auto key = std::make_pair(block[q], sig.str());
      auto it = next_id.find(key);
      if (it == next_id.end()) it = next_id.emplace(key, static_cast<int>(next_id.size())).first;
      next_block[q] = it->second;
    }
    int old_count = *std::max_element(block.begin(), block.end()) + 1;
    int new_count = static_cast<int>(next_id.size());
    block = next_block;
    if (new_count == old_count) break;
  }

  // Quotient automaton over the blocks of the real states.
  std::map<int, int> block_renum;
  for (int q = 0; q < n; ++q)
    if (!block_renum.count(block[q])) block_renum[block[q]] = static_cast<int>(block_renum.size());
  TreeAutomaton out;
  out.alphabet = a.alphabet;
  out.num_states = static_cast<int>(block_renum.size());
  for (int q = 0; q < n; ++q) {
    int b = block_renum.at(block[q]);
    if (a.finals.count(q)) out.finals.insert(b);
    if (a.labels.count(q) && !out.labels.count(b)) out.labels[b] = a.labels.at(q);
  }
  for (const auto& [key, targets] : a.delta) {
    std::vector<int> args;
    for (int s : key.second) args.push_back(block_renum.at(block[s]));
    for (int t : targets) out.delta[{key.first, args}].insert(block_renum.at(block[t]));
  }

  // Drop dead blocks (empty top language) so the minimal automaton matches
  // the usual trimmed presentation.
  std::set<int> alive(out.finals.begin(), out.finals.end());
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& [key, targets] : out.delta) {
      bool target_alive = false;
      for (int t : targets) target_alive = target_alive || alive.count(t);
      if (!target_alive) continue;
      for (int s : key.second)
        if (alive.insert(s).second) grew = true;
    }
  }
  return restrict_to(out, alive);
}

namespace {

// Nondeterministic fragment under construction; states are 0..n-1.
struct Frag {
  int n = 0;
  std::set<int> finals;
  std::map<std::pair<std::string, std::vector<int>>, std::set<int>> delta;
};

Frag shift_frag(const Frag& f, int off) {
  Frag out;
  out.n = f.n;
  for (int q : f.finals) out.finals.insert(q + off);
  for (const auto& [key, targets] : f.delta) {
    std::vector<int> args;
    for (int s : key.second) args.push_back(s + off);
    for (int t : targets) out.delta[{key.first, args}].insert(t + off);
  }
  return out;
}

void merge_into(Frag& dst, const Frag& src) {
  Frag moved = shift_frag(src, dst.n);
  dst.n += src.n;
  for (int q : moved.finals) dst.finals.insert(q);
  for (const auto& [key, targets] : moved.delta)
    for (int t : targets) dst.delta[key].insert(t);
}

Frag build_frag(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Apply: {
      Frag out;
      std::vector<std::set<int>> child_finals;
      for (const ExprPtr& c : e->kids) {
        Frag cf = build_frag(c);
        int off = out.n;
        merge_into(out, cf);
        std::set<int> fins;
        for (int q : cf.finals) fins.insert(q + off);
        child_finals.push_back(std::move(fins));
        out.finals.clear();  // children's finals are internal here
      }
      int target = out.n++;
      std::vector<int> tuple(e->kids.size(), 0);
      std::function<void(size_t)> walk = [&](size_t i) {
        if (i == child_finals.size()) {
          out.delta[{e->symbol, tuple}].insert(target);
          return;
        }
        for (int q : child_finals[i]) {
          tuple[i] = q;
          walk(i + 1);
        }
      };
      walk(0);
      out.finals = {target};
      return out;
    }
    case Expr::Kind::Union: {
      Frag out = build_frag(e->kids[0]);
      Frag r = build_frag(e->kids[1]);
      std::set<int> keep = out.finals;
      merge_into(out, r);
      for (int q : keep) out.finals.insert(q);
      return out;
    }
    case Expr::Kind::Product: {
      // substitute the anchor's leaves by the right language: drop the
      // anchor transitions of the left part and alias every right-final
      // completion onto their former targets
      Frag left = build_frag(e->kids[0]);
      Frag right = build_frag(e->kids[1]);
      std::pair<std::string, std::vector<int>> anchor_key{e->symbol, {}};
      std::set<int> anchor_targets;
      if (auto it = left.delta.find(anchor_key); it != left.delta.end()) {
        anchor_targets = it->second;
        left.delta.erase(it);
      }
      Frag out = left;
      int off = out.n;
      merge_into(out, right);
      out.finals = left.finals;
      for (const auto& [key, targets] : right.delta) {
        bool completes = false;
        for (int t : targets) completes = completes || right.finals.count(t);
        if (!completes) continue;
        std::vector<int> args;
        for (int s : key.second) args.push_back(s + off);
        for (int q : anchor_targets) out.delta[{key.first, args}].insert(q);
      }
      return out;
    }
    case Expr::Kind::Star: {
      Frag body = build_frag(e->kids[0]);
      std::pair<std::string, std::vector<int>> anchor_key{e->symbol, {}};
      std::set<int> anchor_targets;
      if (auto it = body.delta.find(anchor_key); it != body.delta.end()) anchor_targets = it->second;
      Frag out = body;
      int closure = out.n++;
      std::vector<std::pair<std::pair<std::string, std::vector<int>>, std::set<int>>> completing;
      for (const auto& [key, targets] : body.delta) {
        bool completes = false;
        for (int t : targets) completes = completes || body.finals.count(t);
        if (completes) completing.push_back({key, targets});
      }
      out.delta[anchor_key].insert(closure);
      for (const auto& [key, targets] : completing) {
        out.delta[key].insert(closure);
        for (int q : anchor_targets) out.delta[key].insert(q);
      }
      out.finals = {closure};
      return out;
    }
    default:
      throw analysis_error("reified expressions use apply, union, product and star only");
  }
}

}  // namespace

TreeAutomaton expr_to_nfa(const Alphabet& a, const ExprPtr& e) {
  HomogeneityReport report = analyze(a, e);
  if (report.arity != 0) throw analysis_error("expr_to_nfa needs a 0-homogeneous expression");
  Reified re = reify_holes(a, e);
  Frag frag = build_frag(re.expr);
  TreeAutomaton out;
  out.alphabet = a;
  out.num_states = frag.n;
  out.finals = frag.finals;
  for (const auto& [key, targets] : frag.delta) {
    if (!a.contains(key.first)) continue;  // anchor transitions are unreachable leftovers
    out.delta[key] = targets;
  }
  return trim(out);
}

QuotientAutomaton build_quotient_automaton(const Alphabet& a, const ExprPtr& e, int budget) {
  HomogeneityReport report = analyze(a, e);
  if (report.arity != 0)
    throw analysis_error("the quotient automaton needs a 0-homogeneous expression");
  QuotientState root = state_of(a, {e});

  QuotientAutomaton out;
  out.automaton.alphabet = a;
  std::map<std::string, int> id_of;
  std::deque<int> fresh;

  auto intern = [&](const QuotientState& q, const Tree& witness) {
    auto it = id_of.find(q.key());
    if (it != id_of.end()) return it->second;
    int id = static_cast<int>(out.states.size());
    if (id >= budget) {
      std::string frontier = q.key();
      int dumped = 0;
      for (auto r = fresh.rbegin(); r != fresh.rend() && dumped < 8; ++r, ++dumped)
        frontier += "\n" + out.states[*r].key();
      throw budget_error("state budget " + std::to_string(budget) + " exhausted", frontier);
    }
    id_of.emplace(q.key(), id);
    out.states.push_back(q);
    out.witnesses.push_back(witness);
    out.automaton.labels[id] = q.key();
    if (q.nullable()) out.automaton.finals.insert(id);
    fresh.push_back(id);
    return id;
  };

  // delta(f, t1^-1 L, ..., tk^-1 L) = { f(t1,...,tk)^-1 L }, realized by
  // chaining the witness quotients through the argument states.
  auto transition_target = [&](const std::string& f, const std::vector<int>& args) {
    for (int s : args)
      if (out.states[s].empty()) return empty_state(IndexSet{1});
    QuotientState cur = args.empty() ? root : out.states[args.back()];
    for (int j = static_cast<int>(args.size()) - 2; j >= 0; --j)
      cur = d_tree(a, out.witnesses[args[j]], cur);
    return d_symbol(a, f, cur);
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [name, k] : a.symbols()) {
      std::vector<int> tuple(k, 0);
      std::function<void(int)> walk = [&](int i) {
        if (i == k) {
          std::pair<std::string, std::vector<int>> key{name, tuple};
          if (out.automaton.delta.count(key)) return;
          QuotientState target = transition_target(name, tuple);
          std::vector<Tree> kids;
          for (int s : tuple) kids.push_back(out.witnesses[s]);
          Tree witness = Tree::node(name, std::move(kids));
          int id = intern(target, witness);
          out.automaton.delta[key] = {id};
          changed = true;
          return;
        }
        int known = static_cast<int>(out.states.size());
        for (int s = 0; s < known; ++s) {
          tuple[i] = s;
          walk(i + 1);
        }
      };
      walk(0);
    }
  }
  out.automaton.num_states = static_cast<int>(out.states.size());
  return out;
}

TreeSet top_language_slice(const TreeAutomaton& a, int q, int max_size) {
  if (q < 0 || q >= a.num_states) throw analysis_error("no such state");
  TreeSet out(IndexSet{1});
  for (const Tree& c : all_contexts(a.alphabet, max_size)) {
    std::set<int> reached = run_context(a, c, q);
    for (int t : reached)
      if (a.finals.count(t)) {
        out.insert(c);
        break;
      }
  }
  return out;
}

TreeSet quotient_via_automaton(const TreeAutomaton& a, const Tree& t, int max_size) {
  TreeSet out(IndexSet{1});
  for (int q : run_delta(a, t)) out = TreeSet::union_of(out, top_language_slice(a, q, max_size));
  return out;
}

bool check_morphism(const TreeAutomaton& a1, const TreeAutomaton& a2, const Morphism& m) {
  for (int q = 0; q < a1.num_states; ++q)
    if (!m.phi.count(q)) return false;
  for (int q : a1.finals)
    if (!a2.finals.count(m.phi.at(q))) return false;
  for (const auto& [key, targets] : a1.delta) {
    std::vector<int> args;
    for (int s : key.second) args.push_back(m.phi.at(s));
    std::set<int> image = a2.step(key.first, args);
    for (int t : targets)
      if (!image.count(m.phi.at(t))) return false;
  }
  return true;
}

std::vector<Tree> state_witnesses(const TreeAutomaton& a) {
  std::vector<std::optional<Tree>> best(a.num_states);
  auto better = [](const Tree& cand, const std::optional<Tree>& cur) {
    if (!cur) return true;
    if (cand.size() != cur->size()) return cand.size() < cur->size();
    return Tree::compare(cand, *cur) < 0;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [key, targets] : a.delta) {
      std::vector<Tree> kids;
      bool ready = true;
      for (int s : key.second) {
        if (!best[s]) {
          ready = false;
          break;
        }
        kids.push_back(*best[s]);
      }
      if (!ready) continue;
      Tree cand = Tree::node(key.first, kids);
      for (int t : targets)
        if (better(cand, best[t])) {
          best[t] = cand;
          changed = true;
        }
    }
  }
  std::vector<Tree> out;
  for (int q = 0; q < a.num_states; ++q) {
    if (!best[q]) throw analysis_error("state " + std::to_string(q) + " is not accessible");
    out.push_back(*best[q]);
  }
  return out;
}

Morphism compute_phi(const TreeAutomaton& a, const QuotientAutomaton& target, const Alphabet& sigma,
                     const ExprPtr& e) {
  QuotientState root = state_of(sigma, {e});
  std::map<std::string, int> id_of;
  for (size_t i = 0; i < target.states.size(); ++i) id_of[target.states[i].key()] = static_cast<int>(i);
  std::vector<Tree> witnesses = state_witnesses(a);
  Morphism m;
  for (int q = 0; q < a.num_states; ++q) {
    QuotientState image = d_tree(sigma, witnesses[q], root);
    auto it = id_of.find(image.key());
    if (it == id_of.end())
      throw analysis_error("witness quotient " + image.key() + " is not a state of the target");
    m.phi[q] = it->second;
  }
  return m;
}

bool isomorphic(const TreeAutomaton& a1, const TreeAutomaton& a2) {
  if (!a1.deterministic() || !a2.deterministic())
    throw analysis_error("isomorphism check needs deterministic automata");
  if (a1.num_states != a2.num_states || a1.finals.size() != a2.finals.size() ||
      a1.delta.size() != a2.delta.size())
    return false;
  std::map<int, int> fwd, bwd;
  auto pair_up = [&](int x, int y) {
    auto f = fwd.find(x);
    auto b = bwd.find(y);
    if (f != fwd.end()) return f->second == y;
    if (b != bwd.end()) return false;
    fwd[x] = y;
    bwd[y] = x;
    return true;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [key, targets] : a1.delta) {
      std::vector<int> args;
      bool ready = true;
      for (int s : key.second) {
        auto it = fwd.find(s);
        if (it == fwd.end()) {
          ready = false;
          break;
        }
        args.push_back(it->second);
      }
      if (!ready) continue;
      std::set<int> image = a2.step(key.first, args);
      if (image.size() != targets.size()) return false;
      if (targets.empty()) continue;
      int t1 = *targets.begin();
      int t2 = *image.begin();
      if (fwd.count(t1) && fwd.at(t1) == t2) continue;
      if (!pair_up(t1, t2)) return false;
      changed = true;
    }
  }
  if (static_cast<int>(fwd.size()) != a1.num_states) return false;
  for (const auto& [x, y] : fwd)
    if (a1.finals.count(x) != a2.finals.count(y)) return false;
  // transition counts match and every a1 entry mapped into a2, so the map is
  // an isomorphism of the transition sets
  for (const auto& [key, targets] : a1.delta) {
    std::vector<int> args;
    for (int s : key.second) args.push_back(fwd.at(s));
    std::set<int> image = a2.step(key.first, args);
    if (image.size() != targets.size()) return false;
    for (int t : targets)
      if (!image.count(fwd.at(t))) return false;
  }
  return true;
}

std::string to_json(const TreeAutomaton& a) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json alpha = nlohmann::ordered_json::object();
  for (const auto& [name, k] : a.alphabet.symbols()) alpha[name] = k;
  j["alphabet"] = alpha;
  std::vector<int> states;
  for (int q = 0; q < a.num_states; ++q) states.push_back(q);
  j["states"] = states;
  j["final"] = std::vector<int>(a.finals.begin(), a.finals.end());
  nlohmann::ordered_json delta = nlohmann::ordered_json::array();
  for (const auto& [key, targets] : a.delta)
    for (int t : targets) {
      nlohmann::ordered_json entry;
      entry["symbol"] = key.first;
      entry["args"] = key.second;
      entry["to"] = t;
      delta.push_back(entry);
    }
  j["delta"] = delta;
  nlohmann::ordered_json labels = nlohmann::ordered_json::object();
  for (const auto& [q, label] : a.labels) labels[std::to_string(q)] = label;
  j["labels"] = labels;
  return j.dump(2);
}

TreeAutomaton automaton_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(std::string("invalid automaton JSON: ") + e.what(), static_cast<int>(e.byte));
  }
  TreeAutomaton a;
  for (auto it = j.at("alphabet").begin(); it != j.at("alphabet").end(); ++it)
    a.alphabet.declare(it.key(), it.value().get<int>());
  int max_state = -1;
  for (int q : j.at("states")) max_state = std::max(max_state, q);
  a.num_states = max_state + 1;
  for (int q : j.at("final")) {
    if (q < 0 || q >= a.num_states) throw parse_error("final state out of range", -1);
    a.finals.insert(q);
  }
  for (const auto& entry : j.at("delta")) {
    std::string symbol = entry.at("symbol").get<std::string>();
    std::vector<int> args = entry.at("args").get<std::vector<int>>();
    int to = entry.at("to").get<int>();
    if (!a.alphabet.contains(symbol)) throw parse_error("undeclared symbol in delta", -1);
    if (a.alphabet.arity(symbol) != static_cast<int>(args.size()))
      throw parse_error("arity mismatch in delta entry", -1);
    for (int s : args)
      if (s < 0 || s >= a.num_states) throw parse_error("transition argument out of range", -1);
    if (to < 0 || to >= a.num_states) throw parse_error("transition target out of range", -1);
    a.delta[{symbol, args}].insert(to);
  }
  if (j.contains("labels"))
    for (auto it = j.at("labels").begin(); it != j.at("labels").end(); ++it)
      a.labels[std::stoi(it.key())] = it.value().get<std::string>();
  return a;
}

std::string to_dot(const TreeAutomaton& a) {
  std::ostringstream out;
  out << "digraph automaton {\n  rankdir=LR;\n";
  for (int q = 0; q < a.num_states; ++q) {
    out << "  q" << q << " [shape=" << (a.finals.count(q) ? "doublecircle" : "circle")
        << ", label=\"q" << q << "\"";
    if (a.labels.count(q)) out << ", tooltip=\"" << a.labels.at(q) << "\"";
    out << "];\n";
  }
  int junction = 0;
  for (const auto& [key, targets] : a.delta) {
    const auto& [symbol, args] = key;
    for (int t : targets) {
      if (args.empty()) {
        std::string src = "in" + std::to_string(junction++);
        out << "  " << src << " [shape=point, label=\"\"];\n";
        out << "  " << src << " -> q" << t << " [label=\"" << symbol << "\"];\n";
      } else if (args.size() == 1) {
        out << "  q" << args[0] << " -> q" << t << " [label=\"" << symbol << "\"];\n";
      } else {
        std::string j = "j" + std::to_string(junction++);
        out << "  " << j << " [shape=point, label=\"\"];\n";
        for (size_t i = 0; i < args.size(); ++i)
          out << "  q" << args[i] << " -> " << j << " [label=\"" << (i + 1) << "\", arrowhead=none];\n";
        out << "  " << j << " -> q" << t << " [label=\"" << symbol << "\"];\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace treeq
