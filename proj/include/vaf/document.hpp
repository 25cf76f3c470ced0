#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vaf/parikh.hpp"
#include "vaf/syntax.hpp"
#include "vaf/weighted.hpp"

namespace vaf {

/// One parsed input file.
///
/// Grammar (line-oriented, `#` comments, newlines inside brackets ignored):
///
///     structure carrier=<nat|int|rat> aggregate=<plus|max|min|times>
///     vaf d=<k> | wa | pa d=<k> | apa d=<k> | filter d=<k> <filter>
///     states q0 q1 ...
///     alphabet a b ...
///
/// followed by kind-specific statements:
///
///     vaf: init q (v1,...,vk) / trans q a q' [ e1 ... ek ] / filter <filter>
///          / collapse q [ e ] / class <top|affine|trans|scale> [cl] [ml] [rl] filter=<top|fo|qf>
///     wa:  init q w / trans q a q' w / final q w
///     pa:  initial q ... / accepting q ... / trans q a q' (c1,...,ck) / target semilinear { ... }
///     apa: as pa, with trans q a q' M=[(row1),...] v=(v1,...,vk)
///
/// The structure line is optional (default carrier=nat aggregate=plus) and
/// must come first.
struct Document {
  enum class Kind { structure, vaf, wa, pa, apa, filter };
  using Payload = std::variant<std::monostate, Vaf, WeightedAutomaton, ParikhAutomaton, AffineParikhAutomaton, Filter>;

  Kind kind;
  AlgebraicStructure structure;
  Payload payload;

  const Vaf& vaf() const { return std::get<Vaf>(payload); }
  const WeightedAutomaton& wa() const { return std::get<WeightedAutomaton>(payload); }
  const ParikhAutomaton& pa() const { return std::get<ParikhAutomaton>(payload); }
  const AffineParikhAutomaton& apa() const { return std::get<AffineParikhAutomaton>(payload); }
  const Filter& filter() const { return std::get<Filter>(payload); }
};

inline std::string_view to_string(Document::Kind k) {
  switch (k) {
    case Document::Kind::structure: return "structure";
    case Document::Kind::vaf: return "vaf";
    case Document::Kind::wa: return "wa";
    case Document::Kind::pa: return "pa";
    case Document::Kind::apa: return "apa";
    case Document::Kind::filter: return "filter";
  }
  return "?";
}

namespace detail {

using syntax::Token;
using syntax::TokenStream;

inline std::size_t parse_dimension(TokenStream& ts) {
  ts.expect("d");
  ts.expect("=");
  const Token& t = ts.expect_word("a dimension");
  std::size_t d = 0;
  for (char c : t.text) {
    if (c < '0' || c > '9') TokenStream::fail_at(t, "malformed dimension '" + t.text + "'");
    d = d * 10 + static_cast<std::size_t>(c - '0');
  }
  if (d == 0) TokenStream::fail_at(t, "dimension must be at least 1");
  return d;
}

/// Collects `states` / `alphabet` declarations and resolves names.
struct Declarations {
  std::vector<std::string> states;
  std::vector<std::string> alphabet;
  bool have_states = false;
  bool have_alphabet = false;

  void parse_names(TokenStream& ts, std::vector<std::string>& into, bool& flag, const Token& head) {
    if (flag) TokenStream::fail_at(head, "duplicate '" + head.text + "' declaration");
    flag = true;
    while (!ts.at_newline()) {
      const Token& t = ts.expect_word("a name");
      if (std::find(into.begin(), into.end(), t.text) != into.end())
        TokenStream::fail_at(t, "duplicate name '" + t.text + "'");
      into.push_back(t.text);
    }
  }

  StateId state(TokenStream& ts) const {
    const Token& t = ts.expect_word("a state");
    if (!have_states) TokenStream::fail_at(t, "'states' must be declared before use");
    auto it = std::find(states.begin(), states.end(), t.text);
    if (it == states.end()) TokenStream::fail_at(t, "unknown state '" + t.text + "'");
    return static_cast<StateId>(it - states.begin());
  }
  SymbolId symbol(TokenStream& ts) const {
    const Token& t = ts.expect_word("a symbol");
    if (!have_alphabet) TokenStream::fail_at(t, "'alphabet' must be declared before use");
    auto it = std::find(alphabet.begin(), alphabet.end(), t.text);
    if (it == alphabet.end()) TokenStream::fail_at(t, "unknown symbol '" + t.text + "'");
    return static_cast<SymbolId>(it - alphabet.begin());
  }

  /// Returns true when the statement was a declaration.
  bool try_parse(TokenStream& ts, const Token& head) {
    if (head.text == "states") {
      parse_names(ts, states, have_states, head);
      return true;
    }
    if (head.text == "alphabet") {
      parse_names(ts, alphabet, have_alphabet, head);
      return true;
    }
    return false;
  }

  void require(const Token& at) const {
    if (!have_states) TokenStream::fail_at(at, "missing 'states' declaration");
    if (!have_alphabet) TokenStream::fail_at(at, "missing 'alphabet' declaration");
  }
};

struct TransitionTable {
  std::vector<Transition> transitions;
  std::set<Transition> seen;

  void add(const Token& at, Transition t, const Declarations& decl) {
    if (!seen.insert(t).second)
      TokenStream::fail_at(at, "duplicate transition " + decl.states[t.from] + " " + decl.alphabet[t.symbol] + " " +
                                   decl.states[t.to]);
    transitions.push_back(t);
  }
  Transition parse(TokenStream& ts, const Declarations& decl) {
    StateId from = decl.state(ts);
    SymbolId s = decl.symbol(ts);
    StateId to = decl.state(ts);
    return {from, s, to};
  }
};

inline Semiautomaton build_automaton(const Declarations& decl, const TransitionTable& table) {
  return Semiautomaton(decl.states, decl.alphabet, table.transitions);
}

inline Vaf parse_vaf_body(TokenStream& ts, const AlgebraicStructure& s, std::size_t d, const Token& header) {
  Declarations decl;
  TransitionTable table;
  std::vector<UpdateFunction> updates;
  std::map<StateId, Registers> init;
  std::map<StateId, UpdateFunction> collapse;
  std::optional<Filter> filter;
  std::optional<ClassAnnotation> annotation;
  const Carrier c = s.carrier();

  while (!ts.at_end()) {
    const Token& head = ts.expect_word("a statement");
    if (decl.try_parse(ts, head)) {
    } else if (head.text == "init") {
      StateId q = decl.state(ts);
      const Token& at = ts.peek();
      Registers x = syntax::parse_vector(ts, c);
      if (x.size() != d)
        TokenStream::fail_at(at, "dimension mismatch: initialization has " + std::to_string(x.size()) +
                                     " entries, expected " + std::to_string(d));
      if (!init.emplace(q, std::move(x)).second) TokenStream::fail_at(head, "state initialized twice");
    } else if (head.text == "trans") {
      Transition t = table.parse(ts, decl);
      const Token& at = ts.peek();
      UpdateFunction f = syntax::parse_update(ts, c, d);
      if (f.outputs_count() != d)
        TokenStream::fail_at(at, "dimension mismatch: update has " + std::to_string(f.outputs_count()) +
                                     " components, expected " + std::to_string(d));
      table.add(head, t, decl);
      updates.push_back(std::move(f));
    } else if (head.text == "filter") {
      if (filter) TokenStream::fail_at(head, "duplicate filter");
      filter = syntax::parse_filter(ts, d);
    } else if (head.text == "collapse") {
      StateId q = decl.state(ts);
      const Token& at = ts.peek();
      UpdateFunction f = syntax::parse_update(ts, c, d);
      if (f.outputs_count() != 1) TokenStream::fail_at(at, "dimension mismatch: collapse must have one component");
      if (!collapse.emplace(q, std::move(f)).second) TokenStream::fail_at(head, "state collapsed twice");
    } else if (head.text == "class") {
      ClassAnnotation a;
      const Token& cls = ts.expect_word("an update class");
      a.update_class = syntax::located(cls, [&] { return update_class_from_string(cls.text); });
      while (ts.peek_is("cl") || ts.peek_is("ml") || ts.peek_is("rl")) {
        std::string flag = ts.next().text;
        (flag == "cl" ? a.copyless : flag == "ml" ? a.moveless : a.resetless) = true;
      }
      ts.expect("filter");
      ts.expect("=");
      const Token& fc = ts.expect_word("a filter class");
      a.filter_class = syntax::located(fc, [&] { return filter_class_from_string(fc.text); });
      annotation = a;
    } else {
      TokenStream::fail_at(head, "unknown statement '" + head.text + "' in vaf document");
    }
    ts.end_statement();
  }
  decl.require(header);
  std::vector<std::optional<Registers>> init_vec(decl.states.size());
  for (auto& [q, x] : init) init_vec[q] = std::move(x);
  std::vector<std::optional<UpdateFunction>> collapse_vec(decl.states.size());
  for (auto& [q, f] : collapse) collapse_vec[q] = std::move(f);
  return syntax::located(header, [&] {
    Vaf v(s, build_automaton(decl, table), d, std::move(init_vec), std::move(updates),
          filter ? std::move(*filter) : Filter::top(d), std::move(collapse_vec));
    return annotation ? v.with_annotation(*annotation) : v;
  });
}

inline WeightedAutomaton parse_wa_body(TokenStream& ts, const AlgebraicStructure& s, const Token& header) {
  Declarations decl;
  TransitionTable table;
  std::vector<Value> weights;
  std::map<StateId, Value> init, fin;
  const Carrier c = s.carrier();
  while (!ts.at_end()) {
    const Token& head = ts.expect_word("a statement");
    if (decl.try_parse(ts, head)) {
    } else if (head.text == "init" || head.text == "final") {
      StateId q = decl.state(ts);
      auto& target = head.text == "init" ? init : fin;
      if (!target.emplace(q, syntax::parse_value(ts, c)).second)
        TokenStream::fail_at(head, "duplicate '" + head.text + "' weight");
    } else if (head.text == "trans") {
      Transition t = table.parse(ts, decl);
      weights.push_back(syntax::parse_value(ts, c));
      table.add(head, t, decl);
    } else {
      TokenStream::fail_at(head, "unknown statement '" + head.text + "' in wa document");
    }
    ts.end_statement();
  }
  decl.require(header);
  std::vector<Value> iv(decl.states.size(), Value(c, 0)), fv(decl.states.size(), Value(c, 0));
  for (auto& [q, v] : init) iv[q] = v;
  for (auto& [q, v] : fin) fv[q] = v;
  return syntax::located(header, [&] {
    return WeightedAutomaton(s, build_automaton(decl, table), std::move(iv), std::move(weights), std::move(fv));
  });
}

template <bool Affine>
auto parse_parikh_body(TokenStream& ts, std::size_t d, const Token& header) {
  Declarations decl;
  TransitionTable table;
  std::vector<NatVector> increments;
  std::vector<AffineUpdate> affine;
  std::vector<StateId> initials, accepting;
  std::optional<SemilinearSet> target;
  while (!ts.at_end()) {
    const Token& head = ts.expect_word("a statement");
    if (decl.try_parse(ts, head)) {
    } else if (head.text == "initial" || head.text == "accepting") {
      auto& into = head.text == "initial" ? initials : accepting;
      while (!ts.at_newline()) {
        StateId q = decl.state(ts);
        if (std::find(into.begin(), into.end(), q) == into.end()) into.push_back(q);
      }
    } else if (head.text == "trans") {
      Transition t = table.parse(ts, decl);
      const Token& at = ts.peek();
      if constexpr (Affine) {
        ts.expect("M");
        ts.expect("=");
        ts.expect("[");
        AffineUpdate u;
        if (!ts.peek_is("]")) {
          do u.matrix.push_back(syntax::parse_vector(ts, Carrier::nat));
          while (ts.accept(","));
        }
        ts.expect("]");
        ts.expect("v");
        ts.expect("=");
        u.offset = syntax::parse_vector(ts, Carrier::nat);
        bool ok = u.rows() == d && u.offset.size() == d;
        for (const auto& row : u.matrix) ok = ok && row.size() == d;
        if (!ok) TokenStream::fail_at(at, "dimension mismatch: affine update must be " + std::to_string(d) + "x" +
                                              std::to_string(d));
        affine.push_back(std::move(u));
      } else {
        NatVector inc = syntax::parse_nat_vector(ts);
        if (inc.size() != d)
          TokenStream::fail_at(at, "dimension mismatch: increment has " + std::to_string(inc.size()) +
                                       " entries, expected " + std::to_string(d));
        increments.push_back(std::move(inc));
      }
      table.add(head, t, decl);
    } else if (head.text == "target") {
      if (target) TokenStream::fail_at(head, "duplicate target");
      ts.expect("semilinear");
      target = syntax::parse_semilinear_body(ts, d);
    } else {
      TokenStream::fail_at(head, "unknown statement '" + head.text + "' in " + (Affine ? "apa" : "pa") + " document");
    }
    ts.end_statement();
  }
  decl.require(header);
  if (!target) TokenStream::fail_at(header, "missing 'target' statement");
  return syntax::located(header, [&] {
    if constexpr (Affine)
      return AffineParikhAutomaton(build_automaton(decl, table), initials, accepting, d, std::move(affine), *target);
    else
      return ParikhAutomaton(build_automaton(decl, table), initials, accepting, d, std::move(increments), *target);
  });
}

}  // namespace detail

inline Document parse_document(std::string_view text) {
  using syntax::TokenStream;
  TokenStream ts(text);
  ts.skip_newlines();
  AlgebraicStructure s(Carrier::nat, Op::plus);
  bool have_structure = false;
  if (ts.peek_is("structure")) {
    const syntax::Token& head = ts.next();
    Carrier carrier = Carrier::nat;
    Op agg = Op::plus;
    while (!ts.at_newline()) {
      const syntax::Token& key = ts.expect_word("a structure attribute");
      ts.expect("=");
      const syntax::Token& val = ts.expect_word("an attribute value");
      if (key.text == "carrier") {
        carrier = syntax::located(val, [&] { return carrier_from_string(val.text); });
      } else if (key.text == "aggregate") {
        auto op = op_from_string(val.text);
        if (!op) TokenStream::fail_at(val, "unknown aggregate '" + val.text + "'");
        agg = *op;
      } else {
        TokenStream::fail_at(key, "unknown structure attribute '" + key.text + "'");
      }
    }
    s = syntax::located(head, [&] { return AlgebraicStructure(carrier, agg); });
    have_structure = true;
    ts.end_statement();
  }
  if (ts.at_end()) {
    if (!have_structure) ts.fail("empty document");
    return Document{Document::Kind::structure, s, std::monostate{}};
  }
  const syntax::Token& header = ts.expect_word("a document header");
  if (header.text == "vaf") {
    std::size_t d = detail::parse_dimension(ts);
    ts.end_statement();
    return Document{Document::Kind::vaf, s, detail::parse_vaf_body(ts, s, d, header)};
  }
  if (header.text == "wa") {
    ts.end_statement();
    return Document{Document::Kind::wa, s, detail::parse_wa_body(ts, s, header)};
  }
  if (header.text == "pa" || header.text == "apa") {
    if (have_structure && s.carrier() != Carrier::nat)
      TokenStream::fail_at(header, "Parikh automata are defined over the nat carrier");
    std::size_t d = detail::parse_dimension(ts);
    ts.end_statement();
    if (header.text == "pa") return Document{Document::Kind::pa, s, detail::parse_parikh_body<false>(ts, d, header)};
    return Document{Document::Kind::apa, s, detail::parse_parikh_body<true>(ts, d, header)};
  }
  if (header.text == "filter") {
    std::size_t d = detail::parse_dimension(ts);
    Filter f = syntax::parse_filter(ts, d);
    if (f.as_semilinear() && s.carrier() != Carrier::nat)
      TokenStream::fail_at(header, "semilinear filters require the nat carrier");
    ts.end_statement();
    if (!ts.at_end()) ts.fail("unexpected statement after filter");
    return Document{Document::Kind::filter, s, std::move(f)};
  }
  TokenStream::fail_at(header, "unknown document kind '" + header.text + "'");
}

// ---------------------------------------------------------------------------
// Canonical printing

inline std::string print_structure(const AlgebraicStructure& s) {
  return "structure carrier=" + std::string(to_string(s.carrier())) +
         " aggregate=" + std::string(to_string(s.aggregate_op())) + "\n";
}

namespace detail {

inline std::string print_header(const Semiautomaton& a) {
  std::string out = "states";
  for (const auto& q : a.states()) out += " " + q;
  out += "\nalphabet";
  for (const auto& x : a.alphabet()) out += " " + x;
  return out + "\n";
}

inline std::string print_transition(const Semiautomaton& a, std::size_t t) {
  const Transition& tr = a.transition(t);
  return "trans " + a.state_name(tr.from) + " " + a.symbol_name(tr.symbol) + " " + a.state_name(tr.to);
}

}  // namespace detail

inline std::string to_text(const Vaf& v) {
  const auto& a = v.automaton();
  std::string out = print_structure(v.structure());
  out += "vaf d=" + std::to_string(v.dimension()) + "\n";
  out += detail::print_header(a);
  for (StateId q = 0; q < a.num_states(); ++q)
    if (const auto& i = v.initialization(q)) out += "init " + a.state_name(q) + " " + syntax::print_vector(*i) + "\n";
  for (std::size_t t = 0; t < a.transitions().size(); ++t)
    out += detail::print_transition(a, t) + " " + syntax::print_update(v.update(t)) + "\n";
  out += "filter " + syntax::print_filter(v.filter()) + "\n";
  for (StateId q = 0; q < a.num_states(); ++q)
    if (const auto& c = v.collapse(q)) out += "collapse " + a.state_name(q) + " " + syntax::print_update(*c) + "\n";
  if (const auto& ann = v.annotation()) {
    out += "class " + std::string(to_string(ann->update_class));
    if (ann->copyless) out += " cl";
    if (ann->moveless) out += " ml";
    if (ann->resetless) out += " rl";
    out += " filter=" + std::string(to_string(ann->filter_class)) + "\n";
  }
  return out;
}

inline std::string to_text(const WeightedAutomaton& w) {
  const auto& a = w.automaton();
  std::string out = print_structure(w.structure()) + "wa\n" + detail::print_header(a);
  for (StateId q = 0; q < a.num_states(); ++q)
    if (!w.initial(q).is_zero()) out += "init " + a.state_name(q) + " " + w.initial(q).str() + "\n";
  for (std::size_t t = 0; t < a.transitions().size(); ++t)
    out += detail::print_transition(a, t) + " " + w.weight(t).str() + "\n";
  for (StateId q = 0; q < a.num_states(); ++q)
    if (!w.final_weight(q).is_zero()) out += "final " + a.state_name(q) + " " + w.final_weight(q).str() + "\n";
  return out;
}

namespace detail {

template <typename P, typename F>
std::string print_parikh(const P& p, std::string_view kind, F&& print_trans) {
  const auto& a = p.automaton();
  std::string out = std::string(kind) + " d=" + std::to_string(p.dimension()) + "\n" + print_header(a);
  if (!p.initials().empty()) {
    out += "initial";
    for (StateId q : p.initials()) out += " " + a.state_name(q);
    out += "\n";
  }
  if (!p.accepting().empty()) {
    out += "accepting";
    for (StateId q : p.accepting()) out += " " + a.state_name(q);
    out += "\n";
  }
  for (std::size_t t = 0; t < a.transitions().size(); ++t) out += print_transition(a, t) + " " + print_trans(t) + "\n";
  out += "target " + syntax::print_semilinear(p.target()) + "\n";
  return out;
}

}  // namespace detail

inline std::string to_text(const ParikhAutomaton& p) {
  return detail::print_parikh(p, "pa", [&](std::size_t t) { return syntax::print_nat_vector(p.increment(t)); });
}

inline std::string to_text(const AffineParikhAutomaton& p) {
  return detail::print_parikh(p, "apa", [&](std::size_t t) {
    const AffineUpdate& u = p.update(t);
    return "M=[" + syntax::join(u.matrix, ",", [](const std::vector<Value>& r) { return syntax::print_vector(r); }) +
           "] v=" + syntax::print_vector(u.offset);
  });
}

inline std::string to_text(const Filter& f, const AlgebraicStructure& s) {
  return print_structure(s) + "filter d=" + std::to_string(f.dimension()) + " " + syntax::print_filter(f) + "\n";
}

inline std::string to_text(const Document& d) {
  switch (d.kind) {
    case Document::Kind::structure: return print_structure(d.structure);
    case Document::Kind::vaf: return to_text(d.vaf());
    case Document::Kind::wa: return to_text(d.wa());
    case Document::Kind::pa: return to_text(d.pa());
    case Document::Kind::apa: return to_text(d.apa());
    case Document::Kind::filter: return to_text(d.filter(), d.structure);
  }
  return "";
}

}  // namespace vaf
