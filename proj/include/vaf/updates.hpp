#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vaf/algebra.hpp"

namespace vaf {

/// Immutable expression tree over register variables (1-based), constants
/// and binary operations. Copies share structure.
class Expr {
 public:
  enum class Kind { var, constant, apply };

  static Expr var(std::size_t index);
  static Expr constant(Value v);
  static Expr apply(Op op, Expr left, Expr right);

  Kind kind() const;
  std::size_t index() const;
  const Value& value() const;
  Op op() const;
  const Expr& left() const;
  const Expr& right() const;

  bool is_var() const { return kind() == Kind::var; }
  bool is_constant() const { return kind() == Kind::constant; }

  friend bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Kind::var: return a.index() == b.index();
      case Kind::constant: return a.value() == b.value();
      case Kind::apply: return a.op() == b.op() && a.left() == b.left() && a.right() == b.right();
    }
    return false;
  }

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  Expr() = default;

  std::shared_ptr<const Node> node_;
};

struct Expr::Node {
  Kind kind;
  std::size_t index;
  Value value;
  Op op;
  Expr left;
  Expr right;
};

inline Expr Expr::var(std::size_t index) {
  if (index == 0) throw Error("register indices are 1-based");
  return Expr(std::make_shared<const Node>(Node{Kind::var, index, {}, Op::plus, {}, {}}));
}
inline Expr Expr::constant(Value v) {
  return Expr(std::make_shared<const Node>(Node{Kind::constant, 0, std::move(v), Op::plus, {}, {}}));
}
inline Expr Expr::apply(Op op, Expr left, Expr right) {
  return Expr(std::make_shared<const Node>(Node{Kind::apply, 0, {}, op, std::move(left), std::move(right)}));
}
inline Expr::Kind Expr::kind() const { return node_->kind; }
inline std::size_t Expr::index() const { return node_->index; }
inline const Value& Expr::value() const { return node_->value; }
inline Op Expr::op() const { return node_->op; }
inline const Expr& Expr::left() const { return node_->left; }
inline const Expr& Expr::right() const { return node_->right; }

inline Expr var(std::size_t i) { return Expr::var(i); }
inline Expr cst(Value v) { return Expr::constant(std::move(v)); }
inline Expr plus(Expr a, Expr b) { return Expr::apply(Op::plus, std::move(a), std::move(b)); }
inline Expr times(Expr a, Expr b) { return Expr::apply(Op::times, std::move(a), std::move(b)); }

namespace detail {

template <typename F>
void for_each_var(const Expr& e, F&& f) {
  switch (e.kind()) {
    case Expr::Kind::var: f(e.index()); break;
    case Expr::Kind::constant: break;
    case Expr::Kind::apply:
      for_each_var(e.left(), f);
      for_each_var(e.right(), f);
      break;
  }
}

template <typename F>
void for_each_constant(const Expr& e, F&& f) {
  switch (e.kind()) {
    case Expr::Kind::var: break;
    case Expr::Kind::constant: f(e.value()); break;
    case Expr::Kind::apply:
      for_each_constant(e.left(), f);
      for_each_constant(e.right(), f);
      break;
  }
}

template <typename F>
void for_each_op(const Expr& e, F&& f) {
  if (e.kind() != Expr::Kind::apply) return;
  f(e.op());
  for_each_op(e.left(), f);
  for_each_op(e.right(), f);
}

}  // namespace detail

/// A map K^m -> K^n given by one expression per output component.
class UpdateFunction {
 public:
  UpdateFunction(std::size_t inputs, std::vector<Expr> outputs) : inputs_(inputs), outputs_(std::move(outputs)) {
    for (const Expr& e : outputs_)
      detail::for_each_var(e, [&](std::size_t i) {
        if (i > inputs_)
          throw Error("variable x" + std::to_string(i) + " out of range for input arity " + std::to_string(inputs_));
      });
  }

  /// Identity on K^d.
  static UpdateFunction identity(std::size_t d) {
    std::vector<Expr> out;
    for (std::size_t i = 1; i <= d; ++i) out.push_back(var(i));
    return UpdateFunction(d, std::move(out));
  }

  std::size_t inputs() const noexcept { return inputs_; }
  std::size_t outputs_count() const noexcept { return outputs_.size(); }
  const std::vector<Expr>& outputs() const noexcept { return outputs_; }
  const Expr& output(std::size_t i) const { return outputs_.at(i); }

  friend bool operator==(const UpdateFunction&, const UpdateFunction&) = default;

 private:
  std::size_t inputs_;
  std::vector<Expr> outputs_;
};

/// f(x) = M x + v with M an n-by-m matrix.
struct AffineUpdate {
  std::vector<std::vector<Value>> matrix;
  std::vector<Value> offset;

  std::size_t rows() const { return matrix.size(); }
  std::size_t cols() const { return matrix.empty() ? 0 : matrix.front().size(); }

  friend bool operator==(const AffineUpdate&, const AffineUpdate&) = default;
};

inline Value eval_expr(const AlgebraicStructure& s, const Expr& e, std::span<const Value> x) {
  switch (e.kind()) {
    case Expr::Kind::var:
      if (e.index() > x.size()) throw Error("variable x" + std::to_string(e.index()) + " has no value");
      return x[e.index() - 1];
    case Expr::Kind::constant:
      detail::check_carrier(s, e.value());
      return e.value();
    case Expr::Kind::apply:
      return apply_op(s, e.op(), eval_expr(s, e.left(), x), eval_expr(s, e.right(), x));
  }
  throw Error("malformed expression");
}

inline std::vector<Value> eval_update(const AlgebraicStructure& s, const UpdateFunction& f, std::span<const Value> x) {
  if (x.size() != f.inputs())
    throw Error("arity mismatch: update expects " + std::to_string(f.inputs()) + " inputs, got " +
                std::to_string(x.size()));
  for (const Value& v : x) detail::check_carrier(s, v);
  std::vector<Value> out;
  out.reserve(f.outputs_count());
  for (const Expr& e : f.outputs()) out.push_back(eval_expr(s, e, x));
  return out;
}

inline std::vector<Value> affine_eval(const AlgebraicStructure& s, const AffineUpdate& a, std::span<const Value> x) {
  if (a.offset.size() != a.rows()) throw Error("affine update: offset length differs from row count");
  std::vector<Value> out;
  out.reserve(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (a.matrix[i].size() != x.size())
      throw Error("dimension mismatch: matrix row has " + std::to_string(a.matrix[i].size()) + " columns, vector has " +
                  std::to_string(x.size()) + " entries");
    Value acc = a.offset[i];
    detail::check_carrier(s, acc);
    for (std::size_t j = 0; j < x.size(); ++j)
      acc = apply_op(s, Op::plus, acc, apply_op(s, Op::times, a.matrix[i][j], x[j]));
    out.push_back(std::move(acc));
  }
  return out;
}

/// Expression form of an affine map: row i becomes
/// c_1 * x_j1 + ... + v_i, right-nested, skipping zero coefficients.
inline UpdateFunction expr_of(const AffineUpdate& a) {
  if (a.offset.size() != a.rows()) throw Error("affine update: offset length differs from row count");
  std::vector<Expr> outs;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::vector<Expr> terms;
    for (std::size_t j = 0; j < a.matrix[i].size(); ++j)
      if (!a.matrix[i][j].is_zero()) terms.push_back(times(cst(a.matrix[i][j]), var(j + 1)));
    if (!a.offset[i].is_zero() || terms.empty()) terms.push_back(cst(a.offset[i]));
    Expr e = terms.back();
    for (std::size_t k = terms.size() - 1; k-- > 0;) e = plus(terms[k], e);
    outs.push_back(e);
  }
  return UpdateFunction(a.cols(), std::move(outs));
}

// ---------------------------------------------------------------------------
// Structural predicates

inline bool is_copyless(const UpdateFunction& f) {
  std::vector<int> seen(f.inputs() + 1, 0);
  bool ok = true;
  for (const Expr& e : f.outputs())
    detail::for_each_var(e, [&](std::size_t i) {
      if (++seen[i] > 1) ok = false;
    });
  return ok;
}

/// Constant folding plus the laws x*0 = 0, x+0 = x, x*1 = x, valid in nat,
/// int and rat alike.
inline Expr simplify(const Expr& e) {
  if (e.kind() != Expr::Kind::apply) return e;
  Expr l = simplify(e.left());
  Expr r = simplify(e.right());
  if (l.is_constant() && r.is_constant()) return cst(detail::raw_apply(e.op(), l.value(), r.value()));
  auto is = [](const Expr& x, int k) { return x.is_constant() && x.value().magnitude() == k; };
  switch (e.op()) {
    case Op::times:
      if (is(l, 0)) return l;
      if (is(r, 0)) return r;
      if (is(l, 1)) return r;
      if (is(r, 1)) return l;
      break;
    case Op::plus:
      if (is(l, 0)) return r;
      if (is(r, 0)) return l;
      break;
    default: break;
  }
  return Expr::apply(e.op(), l, r);
}

/// Every output still mentions a register after simplify(). Sound but not
/// Output i mentions no register other than x_i once simplified. Requires
/// m = n.
inline bool is_moveless(const UpdateFunction& f) {
  if (f.inputs() != f.outputs_count())
    throw Error("moveless is only defined for square updates (m = n); got m = " + std::to_string(f.inputs()) +
                ", n = " + std::to_string(f.outputs_count()));
  bool ok = true;
  for (std::size_t i = 0; i < f.outputs_count(); ++i)
    detail::for_each_var(simplify(f.output(i)), [&](std::size_t j) {
      if (j != i + 1) ok = false;
    });
  return ok;
}

/// complete for the semantic notion (e.g. min(x, 0) over nat is constant).
inline bool is_resetless_syntactic(const UpdateFunction& f) {
  for (const Expr& e : f.outputs()) {
    bool has_var = false;
    detail::for_each_var(simplify(e), [&](std::size_t) { has_var = true; });
    if (!has_var) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Update classes

enum class UpdateClass { top, affine, trans, scale };

inline std::string_view to_string(UpdateClass c) {
  switch (c) {
    case UpdateClass::top: return "top";
    case UpdateClass::affine: return "affine";
    case UpdateClass::trans: return "trans";
    case UpdateClass::scale: return "scale";
  }
  return "?";
}

inline UpdateClass update_class_from_string(std::string_view s) {
  for (UpdateClass c : {UpdateClass::top, UpdateClass::affine, UpdateClass::trans, UpdateClass::scale})
    if (to_string(c) == s) return c;
  throw Error("unknown update class '" + std::string(s) + "'");
}

class UpdateClassSet {
 public:
  void insert(UpdateClass c) { mask_ |= bit(c); }
  bool contains(UpdateClass c) const { return (mask_ & bit(c)) != 0; }
  friend bool operator==(const UpdateClassSet&, const UpdateClassSet&) = default;

  std::string str() const {
    std::string out = "{";
    for (UpdateClass c : {UpdateClass::top, UpdateClass::affine, UpdateClass::trans, UpdateClass::scale})
      if (contains(c)) out += (out.size() > 1 ? ", " : "") + std::string(to_string(c));
    return out + "}";
  }

 private:
  static unsigned bit(UpdateClass c) { return 1u << static_cast<unsigned>(c); }
  unsigned mask_ = 0;
};

namespace detail {

struct LinearForm {
  std::vector<Value> coeffs;
  Value constant;

  bool is_constant() const {
    for (const Value& c : coeffs)
      if (!c.is_zero()) return false;
    return true;
  }
};

inline std::optional<LinearForm> linearize(const AlgebraicStructure& s, const Expr& e, std::size_t m) {
  const Value zero = s.zero();
  switch (e.kind()) {
    case Expr::Kind::var: {
      LinearForm f{std::vector<Value>(m, zero), zero};
      f.coeffs[e.index() - 1] = s.one();
      return f;
    }
    case Expr::Kind::constant:
      check_carrier(s, e.value());
      return LinearForm{std::vector<Value>(m, zero), e.value()};
    case Expr::Kind::apply: {
      auto l = linearize(s, e.left(), m);
      auto r = linearize(s, e.right(), m);
      if (!l || !r) return std::nullopt;
      switch (e.op()) {
        case Op::plus:
          for (std::size_t j = 0; j < m; ++j) l->coeffs[j] = raw_apply(Op::plus, l->coeffs[j], r->coeffs[j]);
          l->constant = raw_apply(Op::plus, l->constant, r->constant);
          return l;
        case Op::times: {
          if (!l->is_constant() && !r->is_constant()) return std::nullopt;
          if (!l->is_constant()) std::swap(l, r);
          const Value c = l->constant;
          for (Value& v : r->coeffs) v = raw_apply(Op::times, c, v);
          r->constant = raw_apply(Op::times, c, r->constant);
          return r;
        }
        case Op::min:
        case Op::max:
          if (l->is_constant() && r->is_constant())
            return LinearForm{std::vector<Value>(m, zero), raw_apply(e.op(), l->constant, r->constant)};
          return std::nullopt;
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Normalizes f into M x + v when every output is built from plus,
/// times-by-constant, and constant subterms; std::nullopt otherwise.
inline std::optional<AffineUpdate> to_affine(const AlgebraicStructure& s, const UpdateFunction& f) {
  if (!s.has(Op::plus) || !s.has(Op::times)) throw Error("affine normalization needs plus and times");
  AffineUpdate a;
  for (const Expr& e : f.outputs()) {
    auto form = detail::linearize(s, e, f.inputs());
    if (!form) return std::nullopt;
    a.matrix.push_back(std::move(form->coeffs));
    a.offset.push_back(std::move(form->constant));
  }
  return a;
}

namespace detail {

inline bool trans_rows(const AffineUpdate& a) {
  for (const auto& row : a.matrix) {
    int ones = 0;
    for (const Value& c : row) {
      if (c.magnitude() == 1) ++ones;
      else if (!c.is_zero()) return false;
    }
    if (ones != 1) return false;
  }
  return true;
}

inline bool scale_rows(const AffineUpdate& a) {
  for (const Value& v : a.offset)
    if (!v.is_zero()) return false;
  for (const auto& row : a.matrix) {
    int nonzero = 0;
    for (const Value& c : row)
      if (!c.is_zero()) ++nonzero;
    if (nonzero > 1) return false;
  }
  return true;
}

}  // namespace detail

/// Class tags of f. Top always; Affine when normalization succeeds; Trans
/// when additionally m = n and M is 0-1 with exactly one 1 per row; Scale
/// when v = 0 and M has at most one nonzero entry per row.
inline UpdateClassSet classify(const UpdateFunction& f, const AlgebraicStructure& s) {
  UpdateClassSet tags;
  tags.insert(UpdateClass::top);
  auto a = to_affine(s, f);
  if (!a) return tags;
  tags.insert(UpdateClass::affine);
  if (f.inputs() == f.outputs_count() && detail::trans_rows(*a)) tags.insert(UpdateClass::trans);
  if (detail::scale_rows(*a)) tags.insert(UpdateClass::scale);
  return tags;
}

/// Row-shape membership used for collapse maps K^d -> K^1, where the square
/// requirement of Trans cannot hold.
inline bool row_shape_in_class(const UpdateFunction& f, const AlgebraicStructure& s, UpdateClass c) {
  if (c == UpdateClass::top) return true;
  auto a = to_affine(s, f);
  if (!a) return false;
  switch (c) {
    case UpdateClass::affine: return true;
    case UpdateClass::trans: return detail::trans_rows(*a);
    case UpdateClass::scale: return detail::scale_rows(*a);
    default: return true;
  }
}

}  // namespace vaf
