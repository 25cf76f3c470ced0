#pragma once

#include <optional>
#include <vector>

#include "vaf/vaf.hpp"

namespace vaf {

/// Weighted automaton over a semiring (plus, times): total initial and
/// final weights per state, one weight per transition.
class WeightedAutomaton {
 public:
  WeightedAutomaton(AlgebraicStructure structure, Semiautomaton automaton, std::vector<Value> initial,
                    std::vector<Value> weights, std::vector<Value> final)
      : structure_(std::move(structure)),
        automaton_(std::move(automaton)),
        initial_(std::move(initial)),
        weights_(std::move(weights)),
        final_(std::move(final)) {
    if (!structure_.has(Op::plus) || !structure_.has(Op::times))
      throw Error("weighted automata need a structure with plus and times");
    if (structure_.aggregate_op() != Op::plus) throw Error("weighted automata aggregate with plus");
    if (initial_.size() != automaton_.num_states() || final_.size() != automaton_.num_states())
      throw Error("initial and final weights must have one entry per state");
    if (weights_.size() != automaton_.transitions().size()) throw Error("every transition needs a weight");
    for (const auto* vec : {&initial_, &weights_, &final_})
      for (const Value& v : *vec) detail::check_carrier(structure_, v);
  }

  const AlgebraicStructure& structure() const noexcept { return structure_; }
  const Semiautomaton& automaton() const noexcept { return automaton_; }
  const Value& initial(StateId q) const { return initial_.at(q); }
  const Value& final_weight(StateId q) const { return final_.at(q); }
  const Value& weight(std::size_t t) const { return weights_.at(t); }
  const std::vector<Value>& initial_weights() const noexcept { return initial_; }
  const std::vector<Value>& final_weights() const noexcept { return final_; }
  const std::vector<Value>& weights() const noexcept { return weights_; }

 private:
  AlgebraicStructure structure_;
  Semiautomaton automaton_;
  std::vector<Value> initial_;
  std::vector<Value> weights_;
  std::vector<Value> final_;
};

/// Sum over paths of I(origin) * weights in path order * C(destination), by
/// explicit enumeration. The empty sum is the semiring zero.
inline Value wa_eval_paths(const WeightedAutomaton& wa, const Word& w, std::size_t max_paths = kDefaultMaxPaths) {
  const auto& s = wa.structure();
  Value sum = s.zero();
  if (w.empty()) {
    for (StateId q = 0; q < wa.automaton().num_states(); ++q)
      sum = apply_op(s, Op::plus, sum, apply_op(s, Op::times, wa.initial(q), wa.final_weight(q)));
    return sum;
  }
  for (const Path& p : paths(wa.automaton(), w, max_paths)) {
    Value prod = wa.initial(wa.automaton().origin(p));
    for (std::size_t t : p.transitions) prod = apply_op(s, Op::times, prod, wa.weight(t));
    prod = apply_op(s, Op::times, prod, wa.final_weight(wa.automaton().destination(p)));
    sum = apply_op(s, Op::plus, sum, prod);
  }
  return sum;
}

/// Same value by pushing the row vector I through one matrix per symbol.
inline Value wa_eval_frontier(const WeightedAutomaton& wa, const Word& w) {
  const auto& s = wa.structure();
  const auto& a = wa.automaton();
  std::vector<Value> row = wa.initial_weights();
  for (SymbolId sym : w) {
    if (sym >= a.num_symbols()) throw Error("unknown symbol index " + std::to_string(sym));
    std::vector<Value> next(a.num_states(), s.zero());
    for (StateId q = 0; q < a.num_states(); ++q) {
      if (row[q].is_zero()) continue;
      for (std::size_t t : a.outgoing(q, sym)) {
        Value& dst = next[a.transition(t).to];
        dst = apply_op(s, Op::plus, dst, apply_op(s, Op::times, row[q], wa.weight(t)));
      }
    }
    row = std::move(next);
  }
  Value sum = s.zero();
  for (StateId q = 0; q < a.num_states(); ++q)
    sum = apply_op(s, Op::plus, sum, apply_op(s, Op::times, row[q], wa.final_weight(q)));
  return sum;
}

inline Value wa_eval(const WeightedAutomaton& wa, const Word& w) { return wa_eval_frontier(wa, w); }

inline bool wa_is_unambiguous(const WeightedAutomaton& wa) { return is_unambiguous(wa.automaton()); }

/// One-register VAF: x1 <- x1 * weight(t), collapse x1 * C(q). States with
/// zero initial (final) weight get no initialization (collapse). The result
/// is annotated Scale, moveless, and resetless when no weight is zero.
inline Vaf wa_to_vaf(const WeightedAutomaton& wa) {
  const auto& a = wa.automaton();
  std::vector<std::optional<Registers>> init;
  std::vector<std::optional<UpdateFunction>> collapse;
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (wa.initial(q).is_zero()) init.emplace_back();
    else init.emplace_back(Registers{wa.initial(q)});
    if (wa.final_weight(q).is_zero()) collapse.emplace_back();
    else collapse.emplace_back(UpdateFunction(1, {times(var(1), cst(wa.final_weight(q)))}));
  }
  std::vector<UpdateFunction> updates;
  bool zero_weight = false;
  for (std::size_t t = 0; t < a.transitions().size(); ++t) {
    zero_weight = zero_weight || wa.weight(t).is_zero();
    updates.push_back(UpdateFunction(1, {times(var(1), cst(wa.weight(t)))}));
  }
  Vaf v(wa.structure(), a, 1, std::move(init), std::move(updates), Filter::top(1), std::move(collapse));
  ClassAnnotation ann;
  ann.update_class = UpdateClass::scale;
  ann.moveless = true;
  ann.resetless = !zero_weight;
  ann.filter_class = FilterClass::top;
  return v.with_annotation(ann);
}

}  // namespace vaf
