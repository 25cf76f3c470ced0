#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "vaf/error.hpp"

namespace vaf {

using StateId = std::size_t;
using SymbolId = std::size_t;
using Word = std::vector<SymbolId>;

struct Transition {
  StateId from;
  SymbolId symbol;
  StateId to;

  friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// A run on the semiautomaton, stored as transition indices.
struct Path {
  std::vector<std::size_t> transitions;

  std::size_t length() const { return transitions.size(); }
  friend auto operator<=>(const Path&, const Path&) = default;
};

inline constexpr std::size_t kDefaultMaxPaths = 1'000'000;

/// States, alphabet and transition relation; no initial or final states.
/// Names are kept for printing; everything else works on dense indices.
class Semiautomaton {
 public:
  Semiautomaton(std::vector<std::string> states, std::vector<std::string> alphabet, std::vector<Transition> transitions)
      : states_(std::move(states)), alphabet_(std::move(alphabet)), transitions_(std::move(transitions)) {
    check_unique(states_, "state");
    check_unique(alphabet_, "symbol");
    outgoing_.assign(states_.size() * alphabet_.size(), {});
    std::vector<Transition> sorted = transitions_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw Error("duplicate transition");
    for (std::size_t i = 0; i < transitions_.size(); ++i) {
      const Transition& t = transitions_[i];
      if (t.from >= states_.size() || t.to >= states_.size()) throw Error("transition references an undeclared state");
      if (t.symbol >= alphabet_.size()) throw Error("transition references an undeclared symbol");
      outgoing_[t.from * alphabet_.size() + t.symbol].push_back(i);
    }
  }

  std::size_t num_states() const noexcept { return states_.size(); }
  std::size_t num_symbols() const noexcept { return alphabet_.size(); }
  const std::vector<std::string>& states() const noexcept { return states_; }
  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  const std::vector<Transition>& transitions() const noexcept { return transitions_; }
  const Transition& transition(std::size_t i) const { return transitions_.at(i); }
  const std::string& state_name(StateId q) const { return states_.at(q); }
  const std::string& symbol_name(SymbolId a) const { return alphabet_.at(a); }

  /// Transition indices leaving q on a, in increasing order.
  std::span<const std::size_t> outgoing(StateId q, SymbolId a) const { return outgoing_[q * alphabet_.size() + a]; }

  std::optional<StateId> find_state(std::string_view name) const { return find(states_, name); }
  std::optional<SymbolId> find_symbol(std::string_view name) const { return find(alphabet_, name); }

  /// Each character is one symbol.
  Word word_from_chars(std::string_view text) const {
    Word w;
    for (char c : text) w.push_back(require_symbol(std::string_view(&c, 1)));
    return w;
  }

  Word word_from_tokens(std::span<const std::string> tokens) const {
    Word w;
    for (const auto& t : tokens) w.push_back(require_symbol(t));
    return w;
  }

  /// Symbols concatenated when all are single characters, space-separated
  /// otherwise.
  std::string word_to_string(const Word& w) const {
    bool single = std::all_of(alphabet_.begin(), alphabet_.end(), [](const std::string& s) { return s.size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!single && i > 0) out += ' ';
      out += alphabet_.at(w[i]);
    }
    return out;
  }

  StateId origin(const Path& p) const { return transitions_.at(p.transitions.front()).from; }
  StateId destination(const Path& p) const { return transitions_.at(p.transitions.back()).to; }
  Word label(const Path& p) const {
    Word w;
    for (std::size_t t : p.transitions) w.push_back(transitions_.at(t).symbol);
    return w;
  }

 private:
  static void check_unique(const std::vector<std::string>& names, const char* what) {
    std::vector<std::string> s = names;
    std::sort(s.begin(), s.end());
    if (auto it = std::adjacent_find(s.begin(), s.end()); it != s.end())
      throw Error(std::string("duplicate ") + what + " '" + *it + "'");
  }
  static std::optional<std::size_t> find(const std::vector<std::string>& v, std::string_view name) {
    auto it = std::find(v.begin(), v.end(), name);
    if (it == v.end()) return std::nullopt;
    return static_cast<std::size_t>(it - v.begin());
  }
  SymbolId require_symbol(std::string_view s) const {
    auto a = find_symbol(s);
    if (!a) throw Error("unknown symbol '" + std::string(s) + "'");
    return *a;
  }

  std::vector<std::string> states_;
  std::vector<std::string> alphabet_;
  std::vector<Transition> transitions_;
  std::vector<std::vector<std::size_t>> outgoing_;
};

/// Every path labeled w, from every origin, in lexicographic order of
/// transition indices. Exponential; throws ResourceLimit past max_paths.
inline std::vector<Path> paths(const Semiautomaton& a, const Word& w, std::size_t max_paths = kDefaultMaxPaths) {
  if (w.empty()) throw Error("paths() needs a nonempty word");
  for (SymbolId s : w)
    if (s >= a.num_symbols()) throw Error("unknown symbol index " + std::to_string(s));
  std::vector<Path> out;
  Path current;
  auto extend = [&](auto&& self, StateId q, std::size_t pos) -> void {
    if (pos == w.size()) {
      if (out.size() >= max_paths) throw ResourceLimit("path count exceeds cap of " + std::to_string(max_paths));
      out.push_back(current);
      return;
    }
    for (std::size_t t : a.outgoing(q, w[pos])) {
      current.transitions.push_back(t);
      self(self, a.transition(t).to, pos + 1);
      current.transitions.pop_back();
    }
  };
  // Lexicographic by transition index: first transitions in index order.
  for (std::size_t t = 0; t < a.transitions().size(); ++t) {
    if (a.transition(t).symbol != w[0]) continue;
    current.transitions.assign(1, t);
    extend(extend, a.transition(t).to, 1);
  }
  return out;
}

/// At most one transition per (state, symbol).
inline bool is_deterministic(const Semiautomaton& a) {
  for (StateId q = 0; q < a.num_states(); ++q)
    for (SymbolId s = 0; s < a.num_symbols(); ++s)
      if (a.outgoing(q, s).size() > 1) return false;
  return true;
}

/// Two distinct paths sharing origin, destination and label.
struct AmbiguityWitness {
  Word label;
  Path first;
  Path second;
};

struct UnambiguityResult {
  bool unambiguous = true;
  std::optional<AmbiguityWitness> witness;
};

/// Breadth-first search of the self-product over (p, q, split), where split
/// records that the two synchronized runs have diverged at least once. The
/// automaton is ambiguous iff some (r, r, true) is reachable from an
/// (s, s, false). BFS yields a shortest witness.
inline UnambiguityResult check_unambiguous(const Semiautomaton& a) {
  using Node = std::tuple<StateId, StateId, bool>;
  struct Parent {
    Node prev;
    std::size_t t1, t2;
    bool root;
  };
  std::map<Node, Parent> parent;
  std::queue<Node> queue;
  for (StateId s = 0; s < a.num_states(); ++s) {
    Node root{s, s, false};
    parent.emplace(root, Parent{root, 0, 0, true});
    queue.push(root);
  }
  while (!queue.empty()) {
    Node node = queue.front();
    queue.pop();
    auto [p, q, split] = node;
    for (SymbolId s = 0; s < a.num_symbols(); ++s) {
      for (std::size_t t1 : a.outgoing(p, s)) {
        for (std::size_t t2 : a.outgoing(q, s)) {
          Node next{a.transition(t1).to, a.transition(t2).to, split || t1 != t2};
          if (parent.count(next)) continue;
          parent.emplace(next, Parent{node, t1, t2, false});
          if (std::get<2>(next) && std::get<0>(next) == std::get<1>(next)) {
            AmbiguityWitness w;
            for (Node cur = next; !parent.at(cur).root; cur = parent.at(cur).prev) {
              const Parent& par = parent.at(cur);
              w.first.transitions.push_back(par.t1);
              w.second.transitions.push_back(par.t2);
            }
            std::reverse(w.first.transitions.begin(), w.first.transitions.end());
            std::reverse(w.second.transitions.begin(), w.second.transitions.end());
            w.label = a.label(w.first);
            return UnambiguityResult{false, std::move(w)};
          }
          queue.push(next);
        }
      }
    }
  }
  return {};
}

inline bool is_unambiguous(const Semiautomaton& a) { return check_unambiguous(a).unambiguous; }

/// Calls f(word) for every word of length <= max_len over k symbols, in
/// length-then-lexicographic order, starting with the empty word.
template <typename F>
void for_each_word(std::size_t num_symbols, std::size_t max_len, F&& f) {
  Word w;
  for (std::size_t len = 0; len <= max_len; ++len) {
    w.assign(len, 0);
    while (true) {
      f(static_cast<const Word&>(w));
      if (num_symbols == 0 || len == 0) break;
      std::size_t i = len;
      while (i > 0 && w[i - 1] + 1 == num_symbols) w[--i] = 0;
      if (i == 0) break;
      ++w[i - 1];
    }
    if (num_symbols == 0) break;
  }
}

}  // namespace vaf
