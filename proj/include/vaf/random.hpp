#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "vaf/parikh.hpp"
#include "vaf/weighted.hpp"

namespace vaf::random {

/// Seeded generator. Draws use plain modulo reduction so that sequences do
/// not depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform-ish in [0, n).
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(engine_() % n); }
  /// In [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(unsigned percent) { return below(100) < percent; }

 private:
  std::mt19937_64 engine_;
};

inline std::vector<std::string> default_alphabet(std::size_t k) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

inline std::vector<std::string> default_states(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("q" + std::to_string(i));
  return out;
}

/// Random duplicate-free transition set with at most max_transitions
/// entries. With `deterministic`, at most one transition per (state, symbol).
inline Semiautomaton random_semiautomaton(Rng& rng, std::size_t states, std::size_t symbols,
                                          std::size_t max_transitions, bool deterministic = false) {
  std::vector<Transition> all;
  for (StateId p = 0; p < states; ++p)
    for (SymbolId a = 0; a < symbols; ++a)
      for (StateId q = 0; q < states; ++q) all.push_back({p, a, q});
  for (std::size_t i = all.size(); i > 1; --i) std::swap(all[i - 1], all[rng.below(i)]);
  std::size_t want = rng.below(max_transitions + 1);
  std::vector<Transition> chosen;
  std::vector<bool> used(states * symbols, false);
  for (const Transition& t : all) {
    if (chosen.size() >= want) break;
    if (deterministic) {
      if (used[t.from * symbols + t.symbol]) continue;
      used[t.from * symbols + t.symbol] = true;
    }
    chosen.push_back(t);
  }
  return Semiautomaton(default_states(states), default_alphabet(symbols), std::move(chosen));
}

inline LinearSet random_linear_set(Rng& rng, std::size_t d, std::size_t max_periods, std::int64_t max_entry) {
  auto vec = [&] {
    NatVector v(d);
    for (auto& x : v) x = rng.between(0, max_entry);
    return v;
  };
  LinearSet l;
  l.base = vec();
  std::size_t r = rng.below(max_periods + 1);
  for (std::size_t i = 0; i < r; ++i) l.periods.push_back(vec());
  return l;
}

inline SemilinearSet random_semilinear(Rng& rng, std::size_t d, std::size_t max_components, std::size_t max_periods,
                                       std::int64_t max_entry) {
  std::vector<LinearSet> comps;
  std::size_t k = 1 + rng.below(max_components);
  for (std::size_t i = 0; i < k; ++i) comps.push_back(random_linear_set(rng, d, max_periods, max_entry));
  return SemilinearSet(d, std::move(comps));
}

inline QfFormula random_formula(Rng& rng, std::size_t d, std::int64_t max_const, int depth = 2) {
  if (depth == 0 || rng.chance(40)) {
    LinearTerm lhs, rhs;
    lhs.coefficients[1 + rng.below(d)] = rng.between(1, 2);
    if (rng.chance(50)) rhs.coefficients[1 + rng.below(d)] = 1;
    rhs.constant = rng.between(0, max_const);
    if (rhs.coefficients.empty() && rng.chance(50)) rhs.constant *= 2;
    Cmp cmp = static_cast<Cmp>(rng.below(6));
    return QfFormula::atom(std::move(lhs), cmp, std::move(rhs));
  }
  switch (rng.below(3)) {
    case 0: return QfFormula::negation(random_formula(rng, d, max_const, depth - 1));
    case 1: return QfFormula::conjunction(random_formula(rng, d, max_const, depth - 1),
                                          random_formula(rng, d, max_const, depth - 1));
    default: return QfFormula::disjunction(random_formula(rng, d, max_const, depth - 1),
                                           random_formula(rng, d, max_const, depth - 1));
  }
}

struct VafOptions {
  std::size_t max_states = 4;
  std::size_t symbols = 2;
  std::size_t max_dimension = 3;
  std::int64_t max_constant = 3;
  std::size_t max_transitions = 10;
  Op aggregate = Op::plus;
  bool deterministic = false;
};

/// Square nat update of one of the shapes Trans (x_j + c), Scale (x_j * c)
/// or Affine (sparse matrix plus offset).
inline UpdateFunction random_update(Rng& rng, std::size_t d, std::int64_t max_c) {
  auto nat = [](std::int64_t v) { return Value(Carrier::nat, v); };
  std::vector<Expr> outs;
  const std::size_t shape = rng.below(3);
  for (std::size_t i = 0; i < d; ++i) {
    std::size_t j = rng.chance(60) ? i + 1 : 1 + rng.below(d);
    switch (shape) {
      case 0: outs.push_back(plus(var(j), cst(nat(rng.between(0, max_c))))); break;
      case 1: outs.push_back(times(var(j), cst(nat(rng.between(0, max_c))))); break;
      default: {
        Expr e = cst(nat(rng.between(0, max_c)));
        for (std::size_t k = 1; k <= d; ++k)
          if (rng.chance(35)) e = plus(times(cst(nat(rng.between(1, 2))), var(k)), e);
        outs.push_back(e);
      }
    }
  }
  return UpdateFunction(d, std::move(outs));
}

inline Filter random_filter(Rng& rng, std::size_t d, std::int64_t max_c) {
  switch (rng.below(3)) {
    case 0: return Filter::top(d);
    case 1: return Filter::semilinear(random_semilinear(rng, d, 2, 2, max_c));
    default: return Filter::formula(random_formula(rng, d, 2 * max_c), d);
  }
}

/// Random VAF over (nat, aggregate) with mixed update and filter shapes.
inline Vaf random_vaf(Rng& rng, const VafOptions& opt = {}) {
  const std::size_t n = 1 + rng.below(opt.max_states);
  const std::size_t d = 1 + rng.below(opt.max_dimension);
  Semiautomaton a = random_semiautomaton(rng, n, opt.symbols, opt.max_transitions, opt.deterministic);
  auto nat = [](std::int64_t v) { return Value(Carrier::nat, v); };

  std::vector<std::optional<Registers>> init(n);
  std::vector<std::optional<UpdateFunction>> collapse(n);
  const std::size_t single_init = rng.below(n);
  for (StateId q = 0; q < n; ++q) {
    if (opt.deterministic ? q == single_init : rng.chance(60)) {
      Registers x;
      for (std::size_t i = 0; i < d; ++i) x.push_back(nat(rng.between(0, opt.max_constant)));
      init[q] = std::move(x);
    }
    if (rng.chance(65)) {
      Expr e = cst(nat(rng.between(0, opt.max_constant)));
      for (std::size_t k = 1; k <= d; ++k)
        if (rng.chance(50)) e = plus(times(cst(nat(rng.between(1, 2))), var(k)), e);
      collapse[q] = UpdateFunction(d, {e});
    }
  }
  std::vector<UpdateFunction> updates;
  for (std::size_t t = 0; t < a.transitions().size(); ++t) updates.push_back(random_update(rng, d, opt.max_constant));
  Filter f = random_filter(rng, d, opt.max_constant);
  return Vaf(AlgebraicStructure(Carrier::nat, opt.aggregate), std::move(a), d, std::move(init), std::move(updates),
             std::move(f), std::move(collapse));
}

/// Weighted automaton over (nat, plus, times) with all weights in 1..max_w.
inline WeightedAutomaton random_wa(Rng& rng, std::size_t max_states, std::size_t symbols, std::int64_t max_w) {
  const std::size_t n = 1 + rng.below(max_states);
  Semiautomaton a = random_semiautomaton(rng, n, symbols, 2 * n * symbols);
  auto w = [&] { return Value(Carrier::nat, rng.between(1, max_w)); };
  std::vector<Value> init, fin, weights;
  for (std::size_t q = 0; q < n; ++q) {
    init.push_back(w());
    fin.push_back(w());
  }
  for (std::size_t t = 0; t < a.transitions().size(); ++t) weights.push_back(w());
  return WeightedAutomaton(AlgebraicStructure(Carrier::nat, Op::plus), std::move(a), std::move(init),
                           std::move(weights), std::move(fin));
}

inline std::vector<StateId> random_subset(Rng& rng, std::size_t n, unsigned percent) {
  std::vector<StateId> out;
  for (StateId q = 0; q < n; ++q)
    if (rng.chance(percent)) out.push_back(q);
  return out;
}

inline ParikhAutomaton random_pa(Rng& rng, std::size_t max_states, std::size_t symbols, std::size_t max_dim) {
  const std::size_t n = 1 + rng.below(max_states);
  const std::size_t d = 1 + rng.below(max_dim);
  Semiautomaton a = random_semiautomaton(rng, n, symbols, 2 * n * symbols);
  std::vector<NatVector> inc;
  for (std::size_t t = 0; t < a.transitions().size(); ++t) {
    NatVector v(d);
    for (auto& x : v) x = rng.between(0, 2);
    inc.push_back(std::move(v));
  }
  auto initials = random_subset(rng, n, 50);
  if (initials.empty()) initials.push_back(rng.below(n));
  return ParikhAutomaton(std::move(a), std::move(initials), random_subset(rng, n, 50), d, std::move(inc),
                         random_semilinear(rng, d, 2, 2, 3));
}

inline AffineParikhAutomaton random_apa(Rng& rng, std::size_t max_states, std::size_t symbols, std::size_t max_dim) {
  const std::size_t n = 1 + rng.below(max_states);
  const std::size_t d = 1 + rng.below(max_dim);
  Semiautomaton a = random_semiautomaton(rng, n, symbols, 2 * n * symbols);
  std::vector<AffineUpdate> ups;
  for (std::size_t t = 0; t < a.transitions().size(); ++t) {
    AffineUpdate u;
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<Value> row;
      for (std::size_t j = 0; j < d; ++j) row.push_back(Value(Carrier::nat, rng.chance(50) ? rng.between(0, 2) : 0));
      u.matrix.push_back(std::move(row));
      u.offset.push_back(Value(Carrier::nat, rng.between(0, 2)));
    }
    ups.push_back(std::move(u));
  }
  auto initials = random_subset(rng, n, 50);
  if (initials.empty()) initials.push_back(rng.below(n));
  return AffineParikhAutomaton(std::move(a), std::move(initials), random_subset(rng, n, 50), d, std::move(ups),
                               random_semilinear(rng, d, 2, 2, 4));
}

}  // namespace vaf::random
