#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vaf/algebra.hpp"
#include "vaf/filters.hpp"
#include "vaf/semiautomaton.hpp"
#include "vaf/updates.hpp"

namespace vaf {

using Registers = std::vector<Value>;

enum class FilterClass { top, fo, qf };

inline std::string_view to_string(FilterClass c) {
  switch (c) {
    case FilterClass::top: return "top";
    case FilterClass::fo: return "fo";
    case FilterClass::qf: return "qf";
  }
  return "?";
}

inline FilterClass filter_class_from_string(std::string_view s) {
  if (s == "top") return FilterClass::top;
  if (s == "fo") return FilterClass::fo;
  if (s == "qf") return FilterClass::qf;
  throw Error("unknown filter class '" + std::string(s) + "'");
}

/// Declared VAF(K, Upd^{cl,ml,rl}, Filter) class. `verified` is filled in by
/// Vaf::with_annotation.
struct ClassAnnotation {
  UpdateClass update_class = UpdateClass::top;
  bool copyless = false;
  bool moveless = false;
  bool resetless = false;
  FilterClass filter_class = FilterClass::top;
  bool verified = false;

  friend bool operator==(const ClassAnnotation&, const ClassAnnotation&) = default;
};

/// A value automaton with filter of dimension d: semiautomaton, partial
/// initialization, one update per transition, filter, partial collapse.
class Vaf {
 public:
  Vaf(AlgebraicStructure structure, Semiautomaton automaton, std::size_t dimension,
      std::vector<std::optional<Registers>> init, std::vector<UpdateFunction> updates, Filter filter,
      std::vector<std::optional<UpdateFunction>> collapse)
      : structure_(std::move(structure)),
        automaton_(std::move(automaton)),
        dimension_(dimension),
        init_(std::move(init)),
        updates_(std::move(updates)),
        filter_(std::move(filter)),
        collapse_(std::move(collapse)) {
    validate();
  }

  const AlgebraicStructure& structure() const noexcept { return structure_; }
  const Semiautomaton& automaton() const noexcept { return automaton_; }
  std::size_t dimension() const noexcept { return dimension_; }
  const std::optional<Registers>& initialization(StateId q) const { return init_.at(q); }
  const std::vector<std::optional<Registers>>& initializations() const noexcept { return init_; }
  const UpdateFunction& update(std::size_t t) const { return updates_.at(t); }
  const std::vector<UpdateFunction>& updates() const noexcept { return updates_; }
  const Filter& filter() const noexcept { return filter_; }
  const std::optional<UpdateFunction>& collapse(StateId q) const { return collapse_.at(q); }
  const std::vector<std::optional<UpdateFunction>>& collapses() const noexcept { return collapse_; }
  const std::optional<ClassAnnotation>& annotation() const noexcept { return annotation_; }

  /// Copy carrying `a`, with a.verified recomputed against this automaton.
  Vaf with_annotation(ClassAnnotation a) const;
  Vaf without_annotation() const {
    Vaf v = *this;
    v.annotation_.reset();
    return v;
  }

 private:
  void validate() const {
    const std::size_t nq = automaton_.num_states();
    if (dimension_ == 0) throw Error("VAF dimension must be at least 1");
    if (init_.size() != nq) throw Error("initialization must have one entry per state");
    if (collapse_.size() != nq) throw Error("collapse must have one entry per state");
    if (updates_.size() != automaton_.transitions().size()) throw Error("every transition needs an update");
    auto check_expr_constants = [&](const UpdateFunction& f) {
      for (const Expr& e : f.outputs()) {
        detail::for_each_constant(e, [&](const Value& v) { detail::check_carrier(structure_, v); });
        detail::for_each_op(e, [&](Op op) {
          if (!structure_.has(op)) throw Error("operation '" + std::string(to_string(op)) + "' not in the structure");
        });
      }
    };
    for (StateId q = 0; q < nq; ++q) {
      if (init_[q]) {
        if (init_[q]->size() != dimension_)
          throw Error("dimension mismatch: initialization of state '" + automaton_.state_name(q) + "' has " +
                      std::to_string(init_[q]->size()) + " entries, expected " + std::to_string(dimension_));
        for (const Value& v : *init_[q]) detail::check_carrier(structure_, v);
      }
      if (collapse_[q]) {
        if (collapse_[q]->inputs() != dimension_ || collapse_[q]->outputs_count() != 1)
          throw Error("dimension mismatch: collapse of state '" + automaton_.state_name(q) + "' must map K^" +
                      std::to_string(dimension_) + " to K^1");
        check_expr_constants(*collapse_[q]);
      }
    }
    for (std::size_t t = 0; t < updates_.size(); ++t) {
      const auto& f = updates_[t];
      if (f.inputs() != dimension_ || f.outputs_count() != dimension_)
        throw Error("dimension mismatch: update of transition " + std::to_string(t) + " has arity (" +
                    std::to_string(f.inputs()) + "," + std::to_string(f.outputs_count()) + "), expected (" +
                    std::to_string(dimension_) + "," + std::to_string(dimension_) + ")");
      check_expr_constants(f);
    }
    if (filter_.dimension() != dimension_)
      throw Error("dimension mismatch: filter has dimension " + std::to_string(filter_.dimension()) +
                  ", automaton has " + std::to_string(dimension_));
    if (filter_.as_semilinear() && structure_.carrier() != Carrier::nat)
      throw Error("semilinear filters require the nat carrier");
  }

  AlgebraicStructure structure_;
  Semiautomaton automaton_;
  std::size_t dimension_;
  std::vector<std::optional<Registers>> init_;
  std::vector<UpdateFunction> updates_;
  Filter filter_;
  std::vector<std::optional<UpdateFunction>> collapse_;
  std::optional<ClassAnnotation> annotation_;
};

// ---------------------------------------------------------------------------
// Class annotations

/// Human-readable list of reasons the automaton is outside the declared
/// class; empty when it conforms. Moveless is checked on transition updates
/// only, since collapses are not square.
inline std::vector<std::string> annotation_violations(const Vaf& v, const ClassAnnotation& a) {
  std::vector<std::string> out;
  const auto& s = v.structure();
  const auto& aut = v.automaton();
  auto check = [&](const UpdateFunction& f, bool square, const std::string& where) {
    bool in_class = square ? classify(f, s).contains(a.update_class) : row_shape_in_class(f, s, a.update_class);
    if (!in_class) out.push_back(where + ": not in class " + std::string(to_string(a.update_class)));
    if (a.copyless && !is_copyless(f)) out.push_back(where + ": not copyless");
    if (a.moveless && square && !is_moveless(f)) out.push_back(where + ": not moveless");
    if (a.resetless && !is_resetless_syntactic(f)) out.push_back(where + ": not resetless");
  };
  for (std::size_t t = 0; t < v.updates().size(); ++t) {
    const Transition& tr = aut.transition(t);
    check(v.update(t), true,
          "update of " + aut.state_name(tr.from) + " -" + aut.symbol_name(tr.symbol) + "-> " + aut.state_name(tr.to));
  }
  for (StateId q = 0; q < aut.num_states(); ++q)
    if (v.collapse(q)) check(*v.collapse(q), false, "collapse of " + aut.state_name(q));

  const Filter& f = v.filter();
  switch (a.filter_class) {
    case FilterClass::top:
      if (!f.is_top()) out.push_back("filter: not top");
      break;
    case FilterClass::fo: break;
    case FilterClass::qf:
      if (const auto* sl = f.as_semilinear()) {
        for (const auto& c : sl->components())
          if (!c.periods.empty()) {
            out.push_back("filter: semilinear set with periods is not quantifier-free");
            break;
          }
      }
      break;
  }
  return out;
}

inline Vaf Vaf::with_annotation(ClassAnnotation a) const {
  a.verified = annotation_violations(*this, a).empty();
  Vaf v = *this;
  v.annotation_ = a;
  return v;
}

// ---------------------------------------------------------------------------
// Semantics

struct EvalLimits {
  std::size_t max_paths = kDefaultMaxPaths;
  std::size_t max_frontier = 1'000'000;
};

/// Outcome of evaluating one word. `value` is empty (undefined) iff no path
/// survives. `total_paths` counts all paths of the semiautomaton labeled by
/// the word, from every origin; for the empty word, one per state.
struct EvalOutcome {
  std::optional<Value> value;
  Count surviving_paths = 0;
  Count total_paths = 0;

  bool defined() const { return value.has_value(); }
  friend bool operator==(const EvalOutcome&, const EvalOutcome&) = default;
};

/// Registers at the end of p: I(Orig(p)) pushed through the update of every
/// transition of p in order. Undefined when I is undefined at the origin.
inline std::optional<Registers> valuation(const Vaf& v, const Path& p) {
  if (p.transitions.empty()) throw Error("valuation() needs a nonempty path");
  const auto& init = v.initialization(v.automaton().origin(p));
  if (!init) return std::nullopt;
  Registers x = *init;
  for (std::size_t t : p.transitions) x = eval_update(v.structure(), v.update(t), x);
  return x;
}

/// Value of the empty word: aggregate of C_q(I(q)) over states with both
/// I and C defined and I(q) in the filter.
inline EvalOutcome eval_empty(const Vaf& v) {
  EvalOutcome out;
  out.total_paths = v.automaton().num_states();
  std::vector<Value> collapsed;
  for (StateId q = 0; q < v.automaton().num_states(); ++q) {
    const auto& init = v.initialization(q);
    const auto& c = v.collapse(q);
    if (!init || !c || !member(v.filter(), *init)) continue;
    collapsed.push_back(eval_update(v.structure(), *c, *init).front());
  }
  out.surviving_paths = collapsed.size();
  out.value = aggregate(v.structure(), collapsed);
  return out;
}

/// Reference semantics: enumerate every path labeled w, keep those with a
/// defined valuation in F ending where C is defined, collapse, aggregate.
inline EvalOutcome eval_bruteforce(const Vaf& v, const Word& w, const EvalLimits& limits = {}) {
  if (w.empty()) return eval_empty(v);
  EvalOutcome out;
  std::vector<Value> collapsed;
  const auto all = paths(v.automaton(), w, limits.max_paths);
  out.total_paths = all.size();
  for (const Path& p : all) {
    const auto& c = v.collapse(v.automaton().destination(p));
    if (!c) continue;
    auto val = valuation(v, p);
    if (!val || !member(v.filter(), *val)) continue;
    collapsed.push_back(eval_update(v.structure(), *c, *val).front());
  }
  out.surviving_paths = collapsed.size();
  out.value = aggregate(v.structure(), collapsed);
  return out;
}

/// Forward evaluation over (state, registers) -> multiplicity. Runs that
/// reach the same configuration are merged; the final aggregation folds
/// each collapsed value as many times as its multiplicity.
inline EvalOutcome eval_frontier(const Vaf& v, const Word& w, const EvalLimits& limits = {}) {
  if (w.empty()) return eval_empty(v);
  const Semiautomaton& a = v.automaton();
  for (SymbolId s : w)
    if (s >= a.num_symbols()) throw Error("unknown symbol index " + std::to_string(s));

  using Config = std::pair<StateId, Registers>;
  std::map<Config, Count> frontier;
  for (StateId q = 0; q < a.num_states(); ++q)
    if (const auto& init = v.initialization(q)) frontier.emplace(Config{q, *init}, 1);

  // Path counts ending in each state, over all origins.
  std::vector<Count> reach(a.num_states(), 1);

  for (SymbolId s : w) {
    std::map<Config, Count> next;
    for (const auto& [config, mult] : frontier) {
      for (std::size_t t : a.outgoing(config.first, s)) {
        Registers x = eval_update(v.structure(), v.update(t), config.second);
        next[Config{a.transition(t).to, std::move(x)}] += mult;
        if (next.size() > limits.max_frontier)
          throw ResourceLimit("frontier size exceeds cap of " + std::to_string(limits.max_frontier));
      }
    }
    frontier = std::move(next);

    std::vector<Count> reach_next(a.num_states(), 0);
    for (StateId q = 0; q < a.num_states(); ++q) {
      if (reach[q] == 0) continue;
      for (std::size_t t : a.outgoing(q, s)) reach_next[a.transition(t).to] += reach[q];
    }
    reach = std::move(reach_next);
  }

  EvalOutcome out;
  for (const Count& c : reach) out.total_paths += c;
  std::optional<Value> acc;
  for (const auto& [config, mult] : frontier) {
    const auto& c = v.collapse(config.first);
    if (!c || !member(v.filter(), config.second)) continue;
    out.surviving_paths += mult;
    Value contribution = aggregate_repeated(v.structure(), eval_update(v.structure(), *c, config.second).front(), mult);
    acc = acc ? apply_op(v.structure(), v.structure().aggregate_op(), *acc, contribution) : contribution;
  }
  out.value = std::move(acc);
  return out;
}

/// Default evaluator.
inline EvalOutcome evaluate(const Vaf& v, const Word& w, const EvalLimits& limits = {}) {
  return eval_frontier(v, w, limits);
}

struct VariantReport {
  bool deterministic = false;
  bool unambiguous = false;
};

inline VariantReport variant_check(const Vaf& v) {
  std::size_t initialized = 0;
  for (const auto& i : v.initializations())
    if (i) ++initialized;
  VariantReport r;
  r.unambiguous = is_unambiguous(v.automaton());
  r.deterministic = is_deterministic(v.automaton()) && initialized == 1;
  return r;
}

/// Holds iff every word of length <= L has at most one surviving path;
/// otherwise the first offending word in length-lexicographic order.
struct OneSuccessVerdict {
  bool holds = true;
  std::optional<Word> counterexample;
};

inline OneSuccessVerdict one_success_bounded(const Vaf& v, std::size_t max_len, const EvalLimits& limits = {}) {
  OneSuccessVerdict verdict;
  for_each_word(v.automaton().num_symbols(), max_len, [&](const Word& w) {
    if (!verdict.holds) return;
    if (evaluate(v, w, limits).surviving_paths > 1) {
      verdict.holds = false;
      verdict.counterexample = w;
    }
  });
  return verdict;
}

/// Words of length <= L whose value is defined and equal to `zero`.
inline std::vector<Word> zero_support(const Vaf& v, const Value& zero, std::size_t max_len,
                                      const EvalLimits& limits = {}) {
  std::vector<Word> out;
  for_each_word(v.automaton().num_symbols(), max_len, [&](const Word& w) {
    auto r = evaluate(v, w, limits);
    if (r.value && *r.value == zero) out.push_back(w);
  });
  return out;
}

namespace detail {

inline UpdateFunction widen(const UpdateFunction& f, std::size_t new_inputs, std::optional<Expr> extra_output) {
  std::vector<Expr> outs = f.outputs();
  if (extra_output) outs.push_back(std::move(*extra_output));
  return UpdateFunction(new_inputs, std::move(outs));
}

}  // namespace detail

/// VAF of dimension d+1 whose value on w is the number of surviving paths
/// of v on w. The extra register starts at 1 and is carried by identity;
/// collapses return it. Requires the plus aggregate.
inline Vaf add_path_counter(const Vaf& v) {
  if (v.structure().aggregate_op() != Op::plus) throw Error("path counting requires the plus aggregate");
  const std::size_t d = v.dimension();
  const Value one(v.structure().carrier(), 1);

  std::vector<std::optional<Registers>> init;
  for (const auto& i : v.initializations()) {
    if (!i) {
      init.emplace_back();
      continue;
    }
    Registers x = *i;
    x.push_back(one);
    init.emplace_back(std::move(x));
  }
  std::vector<UpdateFunction> updates;
  for (const auto& f : v.updates()) updates.push_back(detail::widen(f, d + 1, var(d + 1)));

  std::optional<Filter> filter;
  if (v.filter().is_top()) {
    filter = Filter::top(d + 1);
  } else if (const auto* ff = v.filter().as_formula()) {
    filter = Filter::formula(ff->formula, d + 1);
  } else {
    std::vector<LinearSet> comps;
    for (const LinearSet& l : v.filter().as_semilinear()->components()) {
      LinearSet e = l;
      e.base.push_back(1);
      for (auto& p : e.periods) p.push_back(0);
      comps.push_back(std::move(e));
    }
    filter = Filter::semilinear(SemilinearSet(d + 1, std::move(comps)));
  }

  std::vector<std::optional<UpdateFunction>> collapse;
  for (const auto& c : v.collapses()) {
    if (c) collapse.emplace_back(UpdateFunction(d + 1, {var(d + 1)}));
    else collapse.emplace_back();
  }
  Vaf out(v.structure(), v.automaton(), d + 1, std::move(init), std::move(updates), std::move(*filter),
          std::move(collapse));
  if (v.annotation()) return out.with_annotation(*v.annotation());
  return out;
}

/// Same automaton over another carrier with a replacement filter. Every
/// constant and initialization must fit the new carrier.
inline Vaf recarry(const Vaf& v, Carrier carrier, Filter filter) {
  auto convert = [&](const Expr& e) {
    auto rec = [&](auto&& self, const Expr& x) -> Expr {
      switch (x.kind()) {
        case Expr::Kind::var: return x;
        case Expr::Kind::constant: return cst(x.value().recarried(carrier));
        case Expr::Kind::apply: return Expr::apply(x.op(), self(self, x.left()), self(self, x.right()));
      }
      return x;
    };
    return rec(rec, e);
  };
  auto convert_fn = [&](const UpdateFunction& f) {
    std::vector<Expr> outs;
    for (const Expr& e : f.outputs()) outs.push_back(convert(e));
    return UpdateFunction(f.inputs(), std::move(outs));
  };
  std::vector<std::optional<Registers>> init;
  for (const auto& i : v.initializations()) {
    if (!i) {
      init.emplace_back();
      continue;
    }
    Registers x;
    for (const Value& val : *i) x.push_back(val.recarried(carrier));
    init.emplace_back(std::move(x));
  }
  std::vector<UpdateFunction> updates;
  for (const auto& f : v.updates()) updates.push_back(convert_fn(f));
  std::vector<std::optional<UpdateFunction>> collapse;
  for (const auto& c : v.collapses()) {
    if (c) collapse.emplace_back(convert_fn(*c));
    else collapse.emplace_back();
  }
  return Vaf(v.structure().with_carrier(carrier), v.automaton(), v.dimension(), std::move(init), std::move(updates),
             std::move(filter), std::move(collapse));
}

/// Same data under another aggregate.
inline Vaf with_aggregate(const Vaf& v, Op aggregate) {
  Vaf out(v.structure().with_aggregate(aggregate), v.automaton(), v.dimension(), v.initializations(), v.updates(),
          v.filter(), v.collapses());
  if (v.annotation()) return out.with_annotation(*v.annotation());
  return out;
}

}  // namespace vaf
