#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "vaf/value.hpp"

namespace vaf {

using NatVector = std::vector<BigInt>;

/// base + N*p_1 + ... + N*p_r over N^d.
struct LinearSet {
  NatVector base;
  std::vector<NatVector> periods;

  LinearSet() = default;
  LinearSet(NatVector b, std::vector<NatVector> ps) : base(std::move(b)), periods(std::move(ps)) { validate(); }

  std::size_t dimension() const { return base.size(); }

  void validate() const {
    auto check = [&](const NatVector& v) {
      if (v.size() != base.size()) throw Error("linear set: period dimension differs from base dimension");
      for (const BigInt& x : v)
        if (x < 0) throw Error("linear set: negative entry " + x.str());
    };
    check(base);
    for (const auto& p : periods) check(p);
  }

  friend bool operator==(const LinearSet&, const LinearSet&) = default;
};

/// Finite union of linear sets of a common dimension; may be empty.
class SemilinearSet {
 public:
  explicit SemilinearSet(std::size_t dimension, std::vector<LinearSet> components = {})
      : dimension_(dimension), components_(std::move(components)) {
    if (dimension_ == 0) throw Error("semilinear set needs a nonzero dimension");
    for (const auto& c : components_)
      if (c.dimension() != dimension_)
        throw Error("semilinear set: component of dimension " + std::to_string(c.dimension()) + " in a set of dimension " +
                    std::to_string(dimension_));
  }

  std::size_t dimension() const noexcept { return dimension_; }
  const std::vector<LinearSet>& components() const noexcept { return components_; }

  SemilinearSet with_component(LinearSet l) const {
    auto cs = components_;
    cs.push_back(std::move(l));
    return SemilinearSet(dimension_, std::move(cs));
  }

  friend bool operator==(const SemilinearSet&, const SemilinearSet&) = default;

 private:
  std::size_t dimension_;
  std::vector<LinearSet> components_;
};

/// Witness coefficients k with x = base + sum k_i * period_i, if any.
/// Depth-first over periods; each k_i is bounded by the remaining residual
/// on the period's positive coordinates, and all-zero periods are skipped
/// (their coefficient is reported as 0).
inline std::optional<std::vector<BigInt>> linear_member(const LinearSet& l, std::span<const BigInt> x) {
  if (x.size() != l.dimension())
    throw Error("dimension mismatch: linear set has dimension " + std::to_string(l.dimension()) + ", vector has " +
                std::to_string(x.size()));
  NatVector residual(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    residual[j] = x[j] - l.base[j];
    if (residual[j] < 0) return std::nullopt;
  }
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < l.periods.size(); ++i) {
    const auto& p = l.periods[i];
    for (const BigInt& c : p)
      if (c > 0) {
        live.push_back(i);
        break;
      }
  }
  std::vector<BigInt> coeffs(l.periods.size(), 0);

  auto search = [&](auto&& self, std::size_t k) -> bool {
    if (k == live.size()) {
      for (const BigInt& r : residual)
        if (r != 0) return false;
      return true;
    }
    const NatVector& p = l.periods[live[k]];
    BigInt bound = -1;
    for (std::size_t j = 0; j < p.size(); ++j)
      if (p[j] > 0) {
        BigInt b = residual[j] / p[j];
        if (bound < 0 || b < bound) bound = b;
      }
    // Try the largest multiple first; any order is complete.
    for (BigInt c = bound; c >= 0; --c) {
      for (std::size_t j = 0; j < p.size(); ++j) residual[j] -= c * p[j];
      coeffs[live[k]] = c;
      bool found = self(self, k + 1);
      for (std::size_t j = 0; j < p.size(); ++j) residual[j] += c * p[j];
      if (found) return true;
    }
    coeffs[live[k]] = 0;
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  return coeffs;
}

// ---------------------------------------------------------------------------
// Quantifier-free Presburger formulas

/// sum a_i * x_i + c with integer coefficients. Variables are 1-based.
struct LinearTerm {
  std::map<std::size_t, BigInt> coefficients;
  BigInt constant = 0;

  static LinearTerm variable(std::size_t i, BigInt coeff = 1) {
    LinearTerm t;
    t.coefficients[i] = std::move(coeff);
    return t;
  }
  static LinearTerm number(BigInt c) {
    LinearTerm t;
    t.constant = std::move(c);
    return t;
  }

  std::size_t max_variable() const { return coefficients.empty() ? 0 : coefficients.rbegin()->first; }

  Rational evaluate(std::span<const Value> x) const {
    Rational r(constant);
    for (const auto& [i, a] : coefficients) {
      if (i == 0 || i > x.size()) throw Error("formula variable x" + std::to_string(i) + " out of range");
      r += Rational(a) * x[i - 1].magnitude();
    }
    return r;
  }

  friend bool operator==(const LinearTerm&, const LinearTerm&) = default;
};

enum class Cmp { lt, le, eq, ge, gt, ne };

inline std::string_view to_string(Cmp c) {
  switch (c) {
    case Cmp::lt: return "<";
    case Cmp::le: return "<=";
    case Cmp::eq: return "=";
    case Cmp::ge: return ">=";
    case Cmp::gt: return ">";
    case Cmp::ne: return "!=";
  }
  return "?";
}

/// Boolean combination of comparisons between linear terms.
class QfFormula {
 public:
  enum class Kind { truth, atom, negation, conjunction, disjunction };

  static QfFormula truth(bool b) { return QfFormula(std::make_shared<const Node>(Node{Kind::truth, b, {}, Cmp::eq, {}, {}, {}})); }
  static QfFormula atom(LinearTerm lhs, Cmp cmp, LinearTerm rhs) {
    return QfFormula(std::make_shared<const Node>(Node{Kind::atom, false, std::move(lhs), cmp, std::move(rhs), {}, {}}));
  }
  static QfFormula negation(QfFormula f) {
    return QfFormula(std::make_shared<const Node>(Node{Kind::negation, false, {}, Cmp::eq, {}, std::move(f.node_), {}}));
  }
  static QfFormula conjunction(QfFormula a, QfFormula b) {
    return QfFormula(std::make_shared<const Node>(Node{Kind::conjunction, false, {}, Cmp::eq, {}, std::move(a.node_), std::move(b.node_)}));
  }
  static QfFormula disjunction(QfFormula a, QfFormula b) {
    return QfFormula(std::make_shared<const Node>(Node{Kind::disjunction, false, {}, Cmp::eq, {}, std::move(a.node_), std::move(b.node_)}));
  }

  Kind kind() const { return node_->kind; }
  bool truth_value() const { return node_->truth; }
  const LinearTerm& lhs() const { return node_->lhs; }
  Cmp cmp() const { return node_->cmp; }
  const LinearTerm& rhs() const { return node_->rhs; }
  QfFormula left() const { return QfFormula(node_->left); }
  QfFormula right() const { return QfFormula(node_->right); }

  std::size_t max_variable() const {
    switch (kind()) {
      case Kind::truth: return 0;
      case Kind::atom: return std::max(lhs().max_variable(), rhs().max_variable());
      case Kind::negation: return left().max_variable();
      default: return std::max(left().max_variable(), right().max_variable());
    }
  }

  bool evaluate(std::span<const Value> x) const {
    switch (kind()) {
      case Kind::truth: return truth_value();
      case Kind::atom: {
        Rational a = lhs().evaluate(x), b = rhs().evaluate(x);
        switch (cmp()) {
          case Cmp::lt: return a < b;
          case Cmp::le: return a <= b;
          case Cmp::eq: return a == b;
          case Cmp::ge: return a >= b;
          case Cmp::gt: return a > b;
          case Cmp::ne: return a != b;
        }
        return false;
      }
      case Kind::negation: return !left().evaluate(x);
      case Kind::conjunction: return left().evaluate(x) && right().evaluate(x);
      case Kind::disjunction: return left().evaluate(x) || right().evaluate(x);
    }
    return false;
  }

  friend bool operator==(const QfFormula& a, const QfFormula& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Kind::truth: return a.truth_value() == b.truth_value();
      case Kind::atom: return a.lhs() == b.lhs() && a.cmp() == b.cmp() && a.rhs() == b.rhs();
      case Kind::negation: return a.left() == b.left();
      default: return a.left() == b.left() && a.right() == b.right();
    }
  }

 private:
  struct Node {
    Kind kind;
    bool truth;
    LinearTerm lhs;
    Cmp cmp;
    LinearTerm rhs;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
  };
  explicit QfFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Filters

struct TopFilter {
  std::size_t dimension;
  friend bool operator==(const TopFilter&, const TopFilter&) = default;
};

struct FormulaFilter {
  QfFormula formula;
  std::size_t dimension;
  friend bool operator==(const FormulaFilter&, const FormulaFilter&) = default;
};

/// The end-of-run sieve F ⊆ K^d.
class Filter {
 public:
  using Payload = std::variant<TopFilter, SemilinearSet, FormulaFilter>;

  static Filter top(std::size_t d) { return Filter(TopFilter{d}); }
  static Filter semilinear(SemilinearSet s) { return Filter(std::move(s)); }
  static Filter formula(QfFormula f, std::size_t d) {
    if (f.max_variable() > d)
      throw Error("formula mentions x" + std::to_string(f.max_variable()) + " but the filter has dimension " +
                  std::to_string(d));
    return Filter(FormulaFilter{std::move(f), d});
  }

  std::size_t dimension() const {
    return std::visit(
        [](const auto& p) -> std::size_t {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, SemilinearSet>) return p.dimension();
          else return p.dimension;
        },
        payload_);
  }

  bool is_top() const { return std::holds_alternative<TopFilter>(payload_); }
  const SemilinearSet* as_semilinear() const { return std::get_if<SemilinearSet>(&payload_); }
  const FormulaFilter* as_formula() const { return std::get_if<FormulaFilter>(&payload_); }
  const Payload& payload() const { return payload_; }

  friend bool operator==(const Filter&, const Filter&) = default;

 private:
  explicit Filter(Payload p) : payload_(std::move(p)) {}
  Payload payload_;
};

inline bool member(const Filter& f, std::span<const Value> x) {
  if (x.size() != f.dimension())
    throw Error("dimension mismatch: filter has dimension " + std::to_string(f.dimension()) + ", vector has " +
                std::to_string(x.size()));
  if (f.is_top()) return true;
  if (const auto* ff = f.as_formula()) return ff->formula.evaluate(x);
  const SemilinearSet& s = *f.as_semilinear();
  NatVector nat;
  nat.reserve(x.size());
  for (const Value& v : x) {
    if (v.carrier() != Carrier::nat) throw Error("semilinear membership is only defined over the nat carrier");
    nat.push_back(v.as_integer());
  }
  for (const LinearSet& l : s.components())
    if (linear_member(l, nat)) return true;
  return false;
}

namespace detail {

inline std::string term_text(const std::vector<std::pair<BigInt, std::string>>& terms, const BigInt& constant) {
  std::string out;
  for (const auto& [c, name] : terms) {
    if (c == 0) continue;
    if (!out.empty()) out += " + ";
    out += (c == 1 ? "" : c.str() + "*") + name;
  }
  if (constant != 0 || out.empty()) {
    if (!out.empty()) out += " + ";
    out += constant.str();
  }
  return out;
}

}  // namespace detail

/// Existential Presburger text for S. Informational only: member() does not
/// evaluate quantified formulas.
inline std::string semilinear_to_formula(const SemilinearSet& s) {
  if (s.components().empty()) return "0 = 1";
  std::string out;
  for (std::size_t c = 0; c < s.components().size(); ++c) {
    const LinearSet& l = s.components()[c];
    std::string body;
    for (std::size_t j = 0; j < l.dimension(); ++j) {
      std::vector<std::pair<BigInt, std::string>> terms;
      for (std::size_t i = 0; i < l.periods.size(); ++i) terms.emplace_back(l.periods[i][j], "k" + std::to_string(i + 1));
      if (j > 0) body += " && ";
      body += "x" + std::to_string(j + 1) + " = " + detail::term_text({}, l.base[j]);
      std::string rest = detail::term_text(terms, 0);
      if (rest != "0") body += " + " + rest;
    }
    std::string part;
    if (l.periods.empty()) {
      part = s.components().size() > 1 ? "(" + body + ")" : body;
    } else {
      part = "exists";
      for (std::size_t i = 0; i < l.periods.size(); ++i) part += " k" + std::to_string(i + 1);
      part += ". (" + body + ")";
      if (s.components().size() > 1) part = "(" + part + ")";
    }
    if (c > 0) out += " || ";
    out += part;
  }
  return out;
}

}  // namespace vaf
