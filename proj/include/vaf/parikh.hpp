#pragma once

#include <optional>
#include <vector>

#include "vaf/vaf.hpp"

namespace vaf {

/// Automaton with nonnegative counter increments on transitions, accepting
/// when a run from an initial to an accepting state ends with counters in
/// the target set.
class ParikhAutomaton {
 public:
  ParikhAutomaton(Semiautomaton automaton, std::vector<StateId> initials, std::vector<StateId> accepting,
                  std::size_t dimension, std::vector<NatVector> increments, SemilinearSet target)
      : automaton_(std::move(automaton)),
        initials_(std::move(initials)),
        accepting_(std::move(accepting)),
        dimension_(dimension),
        increments_(std::move(increments)),
        target_(std::move(target)) {
    check_states(automaton_, initials_, accepting_);
    if (increments_.size() != automaton_.transitions().size()) throw Error("every transition needs an increment");
    for (const auto& inc : increments_) {
      if (inc.size() != dimension_) throw Error("dimension mismatch: increment has wrong length");
      for (const BigInt& c : inc)
        if (c < 0) throw Error("increments must be nonnegative");
    }
    if (target_.dimension() != dimension_) throw Error("dimension mismatch: target set");
  }

  const Semiautomaton& automaton() const noexcept { return automaton_; }
  const std::vector<StateId>& initials() const noexcept { return initials_; }
  const std::vector<StateId>& accepting() const noexcept { return accepting_; }
  std::size_t dimension() const noexcept { return dimension_; }
  const NatVector& increment(std::size_t t) const { return increments_.at(t); }
  const std::vector<NatVector>& increments() const noexcept { return increments_; }
  const SemilinearSet& target() const noexcept { return target_; }

  static void check_states(const Semiautomaton& a, const std::vector<StateId>& initials,
                           const std::vector<StateId>& accepting) {
    for (const auto* set : {&initials, &accepting})
      for (StateId q : *set)
        if (q >= a.num_states()) throw Error("undeclared state index " + std::to_string(q));
  }

 private:
  Semiautomaton automaton_;
  std::vector<StateId> initials_;
  std::vector<StateId> accepting_;
  std::size_t dimension_;
  std::vector<NatVector> increments_;
  SemilinearSet target_;
};

/// As ParikhAutomaton, but each transition applies an affine map over nat.
class AffineParikhAutomaton {
 public:
  AffineParikhAutomaton(Semiautomaton automaton, std::vector<StateId> initials, std::vector<StateId> accepting,
                        std::size_t dimension, std::vector<AffineUpdate> updates, SemilinearSet target)
      : automaton_(std::move(automaton)),
        initials_(std::move(initials)),
        accepting_(std::move(accepting)),
        dimension_(dimension),
        updates_(std::move(updates)),
        target_(std::move(target)) {
    ParikhAutomaton::check_states(automaton_, initials_, accepting_);
    if (updates_.size() != automaton_.transitions().size()) throw Error("every transition needs an affine update");
    for (const auto& u : updates_) {
      if (u.rows() != dimension_ || u.offset.size() != dimension_) throw Error("dimension mismatch: affine update");
      for (const auto& row : u.matrix) {
        if (row.size() != dimension_) throw Error("dimension mismatch: affine update");
        for (const Value& c : row)
          if (c.carrier() != Carrier::nat) throw Error("affine Parikh updates are over nat");
      }
      for (const Value& c : u.offset)
        if (c.carrier() != Carrier::nat) throw Error("affine Parikh updates are over nat");
    }
    if (target_.dimension() != dimension_) throw Error("dimension mismatch: target set");
  }

  const Semiautomaton& automaton() const noexcept { return automaton_; }
  const std::vector<StateId>& initials() const noexcept { return initials_; }
  const std::vector<StateId>& accepting() const noexcept { return accepting_; }
  std::size_t dimension() const noexcept { return dimension_; }
  const AffineUpdate& update(std::size_t t) const { return updates_.at(t); }
  const std::vector<AffineUpdate>& updates() const noexcept { return updates_; }
  const SemilinearSet& target() const noexcept { return target_; }

 private:
  Semiautomaton automaton_;
  std::vector<StateId> initials_;
  std::vector<StateId> accepting_;
  std::size_t dimension_;
  std::vector<AffineUpdate> updates_;
  SemilinearSet target_;
};

namespace detail {

inline bool contains(const std::vector<StateId>& v, StateId q) { return std::find(v.begin(), v.end(), q) != v.end(); }

inline bool in_target(const SemilinearSet& target, const NatVector& x) {
  for (const LinearSet& l : target.components())
    if (linear_member(l, x)) return true;
  return false;
}

/// Brute-force acceptance shared by both Parikh flavours: enumerate paths,
/// fold counters from 0 with `step`, test the target.
template <typename Automaton, typename Step>
bool parikh_accepts(const Automaton& p, const Word& w, Step step, std::size_t max_paths) {
  const auto& a = p.automaton();
  if (w.empty()) {
    bool both = false;
    for (StateId q : p.initials()) both = both || contains(p.accepting(), q);
    return both && in_target(p.target(), NatVector(p.dimension(), 0));
  }
  for (const Path& path : paths(a, w, max_paths)) {
    if (!contains(p.initials(), a.origin(path)) || !contains(p.accepting(), a.destination(path))) continue;
    NatVector x(p.dimension(), 0);
    for (std::size_t t : path.transitions) x = step(t, x);
    if (in_target(p.target(), x)) return true;
  }
  return false;
}

inline SemilinearSet extend_target(const SemilinearSet& s, std::size_t extra) {
  std::vector<LinearSet> comps;
  for (LinearSet l : s.components()) {
    for (std::size_t i = 0; i < extra; ++i) {
      l.base.push_back(0);
      for (auto& p : l.periods) p.push_back(0);
    }
    comps.push_back(std::move(l));
  }
  return SemilinearSet(s.dimension() + extra, std::move(comps));
}

}  // namespace detail

inline bool pa_accepts(const ParikhAutomaton& p, const Word& w, std::size_t max_paths = kDefaultMaxPaths) {
  return detail::parikh_accepts(
      p, w,
      [&](std::size_t t, NatVector x) {
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += p.increment(t)[i];
        return x;
      },
      max_paths);
}

inline bool apa_accepts(const AffineParikhAutomaton& p, const Word& w, std::size_t max_paths = kDefaultMaxPaths) {
  const AlgebraicStructure nat(Carrier::nat, Op::plus);
  return detail::parikh_accepts(
      p, w,
      [&](std::size_t t, const NatVector& x) {
        Registers regs;
        for (const BigInt& c : x) regs.push_back(Value::nat(c));
        NatVector out;
        for (const Value& v : affine_eval(nat, p.update(t), regs)) out.push_back(v.as_integer());
        return out;
      },
      max_paths);
}

/// VAF(nat, Trans, FO[+]) of dimension d+1. Registers 1..d are the
/// counters; register d+1 stays 0 so that the collapse x_{d+1} + 1 is a
/// Trans map returning the constant 1. Accepting states are exactly the
/// collapse domain. With aggregate max the value is 1 on accepted words;
/// with plus it is the number of accepting runs.
inline Vaf pa_to_vaf(const ParikhAutomaton& p, Op aggregate_choice) {
  if (aggregate_choice != Op::plus && aggregate_choice != Op::max)
    throw Error("Parikh translation aggregates with plus or max");
  const auto& a = p.automaton();
  const std::size_t d = p.dimension();
  const auto nat = [](BigInt v) { return Value::nat(std::move(v)); };

  std::vector<std::optional<Registers>> init(a.num_states());
  std::vector<std::optional<UpdateFunction>> collapse(a.num_states());
  for (StateId q : p.initials()) init[q] = Registers(d + 1, nat(0));
  for (StateId q : p.accepting()) collapse[q] = UpdateFunction(d + 1, {plus(var(d + 1), cst(nat(1)))});

  std::vector<UpdateFunction> updates;
  for (std::size_t t = 0; t < a.transitions().size(); ++t) {
    std::vector<Expr> outs;
    for (std::size_t i = 0; i < d; ++i) outs.push_back(plus(var(i + 1), cst(nat(p.increment(t)[i]))));
    outs.push_back(plus(var(d + 1), cst(nat(0))));
    updates.emplace_back(d + 1, std::move(outs));
  }
  Vaf v(AlgebraicStructure(Carrier::nat, aggregate_choice), a, d + 1, std::move(init), std::move(updates),
        Filter::semilinear(detail::extend_target(p.target(), 1)), std::move(collapse));
  ClassAnnotation ann;
  ann.update_class = UpdateClass::trans;
  ann.moveless = true;
  ann.filter_class = FilterClass::fo;
  return v.with_annotation(ann);
}

/// VAF(nat, Affine, FO[+]) of dimension d with the affine maps as updates
/// and the constant-1 collapse on accepting states.
inline Vaf apa_to_vaf(const AffineParikhAutomaton& p, Op aggregate_choice) {
  if (aggregate_choice != Op::plus && aggregate_choice != Op::max)
    throw Error("Parikh translation aggregates with plus or max");
  const auto& a = p.automaton();
  const std::size_t d = p.dimension();

  std::vector<std::optional<Registers>> init(a.num_states());
  std::vector<std::optional<UpdateFunction>> collapse(a.num_states());
  for (StateId q : p.initials()) init[q] = Registers(d, Value::nat(0));
  AffineUpdate constant_one{{std::vector<Value>(d, Value::nat(0))}, {Value::nat(1)}};
  for (StateId q : p.accepting()) collapse[q] = expr_of(constant_one);

  std::vector<UpdateFunction> updates;
  for (const AffineUpdate& u : p.updates()) updates.push_back(expr_of(u));
  Vaf v(AlgebraicStructure(Carrier::nat, aggregate_choice), a, d, std::move(init), std::move(updates),
        Filter::semilinear(p.target()), std::move(collapse));
  ClassAnnotation ann;
  ann.update_class = UpdateClass::affine;
  ann.filter_class = FilterClass::fo;
  return v.with_annotation(ann);
}

}  // namespace vaf
