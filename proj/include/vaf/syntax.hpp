#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "vaf/filters.hpp"
#include "vaf/updates.hpp"

namespace vaf {
namespace syntax {

struct Token {
  enum class Kind { word, punct, string, newline, end };
  Kind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

inline bool is_punct(char c) {
  return c == '(' || c == ')' || c == '[' || c == ']' || c == '{' || c == '}' || c == ',' || c == ';' || c == '=';
}

/// Splits document text into words, punctuation, quoted strings and
/// newlines. `#` starts a comment. Newlines inside brackets are dropped, so
/// long statements may span several lines.
inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, depth = 0;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
    } else if (c == '\n') {
      if (depth == 0 && (out.empty() || out.back().kind != Token::Kind::newline))
        out.push_back({Token::Kind::newline, "\n", line, col});
      advance(1);
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
    } else if (c == '"') {
      std::size_t l = line, cl = col;
      advance(1);
      std::string s;
      while (i < text.size() && text[i] != '"') {
        if (text[i] == '\n') throw ParseError("unterminated string", l, cl);
        s += text[i];
        advance(1);
      }
      if (i == text.size()) throw ParseError("unterminated string", l, cl);
      advance(1);
      out.push_back({Token::Kind::string, std::move(s), l, cl});
    } else if (is_punct(c)) {
      if (c == '(' || c == '[' || c == '{') ++depth;
      if ((c == ')' || c == ']' || c == '}') && depth > 0) --depth;
      out.push_back({Token::Kind::punct, std::string(1, c), line, col});
      advance(1);
    } else {
      std::size_t l = line, cl = col, start = i;
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && !is_punct(text[i]) &&
             text[i] != '"' && text[i] != '#')
        advance(1);
      out.push_back({Token::Kind::word, std::string(text.substr(start, i - start)), l, cl});
    }
  }
  out.push_back({Token::Kind::end, "", line, col});
  return out;
}

class TokenStream {
 public:
  explicit TokenStream(std::string_view text) : tokens_(tokenize(text)) {}

  const Token& peek(std::size_t ahead = 0) const { return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)]; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == Token::Kind::end; }
  bool at_newline() const { return peek().kind == Token::Kind::newline || at_end(); }
  bool peek_is(std::string_view text) const {
    return (peek().kind == Token::Kind::punct || peek().kind == Token::Kind::word) && peek().text == text;
  }
  bool accept(std::string_view text) {
    if (!peek_is(text)) return false;
    next();
    return true;
  }
  void expect(std::string_view text) {
    if (!accept(text)) fail("expected '" + std::string(text) + "', found '" + describe(peek()) + "'");
  }
  const Token& expect_word(std::string_view what) {
    if (peek().kind != Token::Kind::word) fail("expected " + std::string(what) + ", found '" + describe(peek()) + "'");
    return next();
  }
  void skip_newlines() {
    while (peek().kind == Token::Kind::newline) next();
  }
  void end_statement() {
    if (at_end()) return;
    if (peek().kind != Token::Kind::newline) fail("unexpected '" + describe(peek()) + "' at end of statement");
    skip_newlines();
  }

  [[noreturn]] void fail(const std::string& msg) const { fail_at(peek(), msg); }
  [[noreturn]] static void fail_at(const Token& t, const std::string& msg) { throw ParseError(msg, t.line, t.column); }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Token::Kind::newline: return "end of line";
      case Token::Kind::end: return "end of input";
      default: return t.text;
    }
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

/// Runs f, turning library errors into parse errors located at `at`.
template <typename F>
auto located(const Token& at, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    TokenStream::fail_at(at, e.what());
  }
}

// ---------------------------------------------------------------------------
// Values and vectors

inline Value parse_value(TokenStream& ts, Carrier carrier) {
  const Token& t = ts.expect_word("a number");
  return located(t, [&] { return Value::parse(t.text, carrier); });
}

/// `(v1,...,vk)`
inline std::vector<Value> parse_vector(TokenStream& ts, Carrier carrier) {
  ts.expect("(");
  std::vector<Value> out;
  if (ts.accept(")")) return out;
  do out.push_back(parse_value(ts, carrier));
  while (ts.accept(","));
  ts.expect(")");
  return out;
}

inline NatVector parse_nat_vector(TokenStream& ts) {
  NatVector out;
  for (const Value& v : parse_vector(ts, Carrier::nat)) out.push_back(v.as_integer());
  return out;
}

template <typename T, typename F>
std::string join(const std::vector<T>& items, std::string_view sep, F&& f) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += sep;
    out += f(items[i]);
  }
  return out;
}

inline std::string print_vector(const std::vector<Value>& v) {
  return "(" + join(v, ",", [](const Value& x) { return x.str(); }) + ")";
}

inline std::string print_nat_vector(const NatVector& v) {
  return "(" + join(v, ",", [](const BigInt& x) { return x.str(); }) + ")";
}

// ---------------------------------------------------------------------------
// Expressions and update functions

inline Expr parse_expr(TokenStream& ts, Carrier carrier) {
  ts.expect("(");
  const Token& head = ts.expect_word("an expression head");
  Expr result = cst(Value(carrier, 0));
  if (head.text == "var") {
    const Token& idx = ts.expect_word("a register index");
    std::size_t i = 0;
    for (char c : idx.text) {
      if (c < '0' || c > '9') TokenStream::fail_at(idx, "malformed register index '" + idx.text + "'");
      i = i * 10 + static_cast<std::size_t>(c - '0');
    }
    if (i == 0) TokenStream::fail_at(idx, "register indices are 1-based");
    result = var(i);
  } else if (head.text == "const") {
    result = cst(parse_value(ts, carrier));
  } else if (auto op = op_from_string(head.text)) {
    std::vector<Expr> args;
    while (ts.peek_is("(")) args.push_back(parse_expr(ts, carrier));
    if (args.size() < 2) TokenStream::fail_at(head, "'" + head.text + "' needs at least two operands");
    result = args.back();
    for (std::size_t k = args.size() - 1; k-- > 0;) result = Expr::apply(*op, args[k], result);
  } else {
    TokenStream::fail_at(head, "unknown expression head '" + head.text + "'");
  }
  ts.expect(")");
  return result;
}

inline std::string print_expr(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::var: return "(var " + std::to_string(e.index()) + ")";
    case Expr::Kind::constant: return "(const " + e.value().str() + ")";
    case Expr::Kind::apply:
      return "(" + std::string(to_string(e.op())) + " " + print_expr(e.left()) + " " + print_expr(e.right()) + ")";
  }
  return "";
}

/// `[ e1 ... en ]` with input arity m.
inline UpdateFunction parse_update(TokenStream& ts, Carrier carrier, std::size_t inputs) {
  const Token& open = ts.peek();
  ts.expect("[");
  std::vector<Expr> outs;
  while (!ts.peek_is("]")) {
    if (ts.at_end()) ts.fail("unterminated update, expected ']'");
    outs.push_back(parse_expr(ts, carrier));
  }
  ts.expect("]");
  return located(open, [&] { return UpdateFunction(inputs, std::move(outs)); });
}

inline std::string print_update(const UpdateFunction& f) {
  return "[ " + join(f.outputs(), " ", [](const Expr& e) { return print_expr(e); }) + " ]";
}

// ---------------------------------------------------------------------------
// Quantifier-free formulas

namespace detail {

class FormulaParser {
 public:
  FormulaParser(std::string_view text, const Token& origin) : origin_(origin) { lex(text); }

  QfFormula parse() {
    QfFormula f = parse_or();
    if (pos_ != toks_.size()) fail("unexpected '" + toks_[pos_].text + "'");
    return f;
  }

 private:
  struct Tok {
    std::string text;
    std::size_t offset;
  };

  [[noreturn]] void fail(const std::string& msg) const {
    std::size_t off = pos_ < toks_.size() ? toks_[pos_].offset : text_size_;
    throw ParseError("in formula: " + msg, origin_.line, origin_.column + 1 + off);
  }

  void lex(std::string_view s) {
    text_size_ = s.size();
    std::size_t i = 0;
    while (i < s.size()) {
      char c = s[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      auto two = s.substr(i, 2);
      if (two == "<=" || two == ">=" || two == "!=" || two == "&&" || two == "||" || two == "==") {
        toks_.push_back({two == "==" ? "=" : std::string(two), i});
        i += 2;
      } else if (std::string_view("()+-*<>=!").find(c) != std::string_view::npos) {
        toks_.push_back({std::string(1, c), i});
        ++i;
      } else if (std::isalnum(static_cast<unsigned char>(c))) {
        std::size_t start = i;
        while (i < s.size() && std::isalnum(static_cast<unsigned char>(s[i]))) ++i;
        toks_.push_back({std::string(s.substr(start, i - start)), start});
      } else {
        pos_ = toks_.size();
        toks_.push_back({std::string(1, c), i});
        fail("unexpected character '" + std::string(1, c) + "'");
      }
    }
  }

  bool peek(std::string_view t) const { return pos_ < toks_.size() && toks_[pos_].text == t; }
  bool accept(std::string_view t) {
    if (!peek(t)) return false;
    ++pos_;
    return true;
  }
  void expect(std::string_view t) {
    if (!accept(t)) fail("expected '" + std::string(t) + "'");
  }

  QfFormula parse_or() {
    QfFormula f = parse_and();
    while (accept("||")) f = QfFormula::disjunction(f, parse_and());
    return f;
  }
  QfFormula parse_and() {
    QfFormula f = parse_unary();
    while (accept("&&")) f = QfFormula::conjunction(f, parse_unary());
    return f;
  }
  QfFormula parse_unary() {
    if (accept("!")) return QfFormula::negation(parse_unary());
    if (accept("true")) return QfFormula::truth(true);
    if (accept("false")) return QfFormula::truth(false);
    if (peek("(")) {
      // Either a parenthesized formula or the start of a parenthesized term.
      std::size_t save = pos_;
      try {
        ++pos_;
        QfFormula f = parse_or();
        expect(")");
        if (!is_cmp_or_arith()) return f;
      } catch (const ParseError&) {
      }
      pos_ = save;
    }
    return parse_atom();
  }
  bool is_cmp_or_arith() const {
    for (std::string_view t : {"<", "<=", "=", ">=", ">", "!=", "+", "-", "*"})
      if (peek(t)) return true;
    return false;
  }
  QfFormula parse_atom() {
    LinearTerm lhs = parse_term();
    Cmp cmp;
    if (accept("<=")) cmp = Cmp::le;
    else if (accept(">=")) cmp = Cmp::ge;
    else if (accept("!=")) cmp = Cmp::ne;
    else if (accept("<")) cmp = Cmp::lt;
    else if (accept(">")) cmp = Cmp::gt;
    else if (accept("=")) cmp = Cmp::eq;
    else fail("expected a comparison operator");
    LinearTerm rhs = parse_term();
    return QfFormula::atom(std::move(lhs), cmp, std::move(rhs));
  }

  static LinearTerm add(LinearTerm a, const LinearTerm& b, int sign) {
    for (const auto& [i, c] : b.coefficients) {
      a.coefficients[i] += sign * c;
      if (a.coefficients[i] == 0) a.coefficients.erase(i);
    }
    a.constant += sign * b.constant;
    return a;
  }
  static LinearTerm scale(LinearTerm a, const BigInt& k) {
    if (k == 0) return LinearTerm::number(0);
    for (auto& [i, c] : a.coefficients) c *= k;
    a.constant *= k;
    return a;
  }

  LinearTerm parse_term() {
    LinearTerm t = parse_product();
    while (true) {
      if (accept("+")) t = add(std::move(t), parse_product(), 1);
      else if (accept("-")) t = add(std::move(t), parse_product(), -1);
      else return t;
    }
  }
  LinearTerm parse_product() {
    LinearTerm t = parse_factor();
    while (accept("*")) {
      LinearTerm u = parse_factor();
      if (!t.coefficients.empty() && !u.coefficients.empty()) fail("product of two variables is not linear");
      t = t.coefficients.empty() ? scale(std::move(u), t.constant) : scale(std::move(t), u.constant);
    }
    return t;
  }
  LinearTerm parse_factor() {
    if (accept("-")) return scale(parse_factor(), -1);
    if (accept("(")) {
      LinearTerm t = parse_term();
      expect(")");
      return t;
    }
    if (pos_ >= toks_.size()) fail("unexpected end of formula");
    const std::string& s = toks_[pos_].text;
    if (s.size() > 1 && s[0] == 'x' && std::all_of(s.begin() + 1, s.end(), ::isdigit)) {
      std::size_t i = std::stoul(s.substr(1));
      if (i == 0) fail("variables are x1, x2, ...");
      ++pos_;
      return LinearTerm::variable(i);
    }
    if (!s.empty() && std::all_of(s.begin(), s.end(), ::isdigit)) {
      ++pos_;
      return LinearTerm::number(BigInt(s));
    }
    fail("unexpected '" + s + "'");
  }

  const Token& origin_;
  std::vector<Tok> toks_;
  std::size_t pos_ = 0;
  std::size_t text_size_ = 0;
};

}  // namespace detail

/// Parses formula text. Error columns are offsets into `origin`'s string.
inline QfFormula parse_formula(std::string_view text, const Token& origin) {
  return detail::FormulaParser(text, origin).parse();
}

inline QfFormula parse_formula(std::string_view text) {
  Token origin{Token::Kind::string, std::string(text), 1, 0};
  return parse_formula(text, origin);
}

inline std::string print_term(const LinearTerm& t) {
  std::string out;
  for (const auto& [i, c] : t.coefficients) {
    if (c == 0) continue;
    BigInt mag = c < 0 ? BigInt(-c) : c;
    if (out.empty()) out += c < 0 ? "-" : "";
    else out += c < 0 ? " - " : " + ";
    out += (mag == 1 ? "" : mag.str() + "*") + "x" + std::to_string(i);
  }
  if (out.empty()) return t.constant.str();
  if (t.constant > 0) out += " + " + t.constant.str();
  if (t.constant < 0) out += " - " + BigInt(-t.constant).str();
  return out;
}

inline std::string print_formula(const QfFormula& f) {
  using K = QfFormula::Kind;
  switch (f.kind()) {
    case K::truth: return f.truth_value() ? "true" : "false";
    case K::atom: return print_term(f.lhs()) + " " + std::string(to_string(f.cmp())) + " " + print_term(f.rhs());
    case K::negation: return "!(" + print_formula(f.left()) + ")";
    case K::conjunction: {
      auto side = [](const QfFormula& g, bool right) {
        bool wrap = g.kind() == K::disjunction || (right && g.kind() == K::conjunction);
        return wrap ? "(" + print_formula(g) + ")" : print_formula(g);
      };
      return side(f.left(), false) + " && " + side(f.right(), true);
    }
    case K::disjunction: {
      QfFormula r = f.right();
      std::string rs = r.kind() == K::disjunction ? "(" + print_formula(r) + ")" : print_formula(r);
      return print_formula(f.left()) + " || " + rs;
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// Filters

/// `linear base=(..) periods=[(..),...]`
inline LinearSet parse_linear_set(TokenStream& ts, std::size_t dimension) {
  const Token& head = ts.peek();
  ts.expect("linear");
  ts.expect("base");
  ts.expect("=");
  NatVector base = parse_nat_vector(ts);
  std::vector<NatVector> periods;
  if (ts.accept("periods")) {
    ts.expect("=");
    ts.expect("[");
    if (!ts.peek_is("]")) {
      do periods.push_back(parse_nat_vector(ts));
      while (ts.accept(","));
    }
    ts.expect("]");
  }
  LinearSet l = located(head, [&] { return LinearSet(std::move(base), std::move(periods)); });
  if (l.dimension() != dimension)
    TokenStream::fail_at(head, "dimension mismatch: linear set of dimension " + std::to_string(l.dimension()) +
                                   ", expected " + std::to_string(dimension));
  return l;
}

/// `{ linear ... ; linear ... }`, possibly empty.
inline SemilinearSet parse_semilinear_body(TokenStream& ts, std::size_t dimension) {
  ts.expect("{");
  std::vector<LinearSet> comps;
  while (!ts.peek_is("}")) {
    if (ts.at_end()) ts.fail("unterminated semilinear set, expected '}'");
    comps.push_back(parse_linear_set(ts, dimension));
    if (!ts.accept(";")) break;
  }
  ts.expect("}");
  return SemilinearSet(dimension, std::move(comps));
}

inline Filter parse_filter(TokenStream& ts, std::size_t dimension) {
  const Token& head = ts.expect_word("a filter kind");
  if (head.text == "top") return Filter::top(dimension);
  if (head.text == "semilinear") return Filter::semilinear(parse_semilinear_body(ts, dimension));
  if (head.text == "formula") {
    if (ts.peek().kind != Token::Kind::string) ts.fail("expected a quoted formula");
    const Token& str = ts.next();
    QfFormula f = parse_formula(str.text, str);
    return located(str, [&] { return Filter::formula(f, dimension); });
  }
  TokenStream::fail_at(head, "unknown filter kind '" + head.text + "'");
}

inline std::string print_semilinear(const SemilinearSet& s) {
  if (s.components().empty()) return "semilinear { }";
  return "semilinear { " +
         join(s.components(), " ; ",
              [](const LinearSet& l) {
                return "linear base=" + print_nat_vector(l.base) + " periods=[" +
                       join(l.periods, ",", [](const NatVector& p) { return print_nat_vector(p); }) + "]";
              }) +
         " }";
}

inline std::string print_filter(const Filter& f) {
  if (f.is_top()) return "top";
  if (const auto* ff = f.as_formula()) return "formula \"" + print_formula(ff->formula) + "\"";
  return print_semilinear(*f.as_semilinear());
}

}  // namespace syntax
}  // namespace vaf
