#include "chebroot/expression.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <system_error>

namespace chebroot {

struct Expression::Node {
  Kind kind;
  double value = 0.0;
  Function fn = Function::sin;
  std::optional<Expression> lhs;
  std::optional<Expression> rhs;
};

namespace {

constexpr std::array<std::pair<Expression::Function, std::string_view>, 7> kFunctions{{
    {Expression::Function::sin, "sin"},
    {Expression::Function::cos, "cos"},
    {Expression::Function::tan, "tan"},
    {Expression::Function::exp, "exp"},
    {Expression::Function::log, "log"},
    {Expression::Function::sqrt, "sqrt"},
    {Expression::Function::abs, "abs"},
}};

}  // namespace

ParseError::ParseError(std::size_t offset, const std::string& message)
    : std::runtime_error("parse error at offset " + std::to_string(offset) + ": " + message),
      offset_(offset),
      detail_(message) {}

std::string_view function_name(Expression::Function fn) noexcept {
  for (const auto& [f, name] : kFunctions) {
    if (f == fn) return name;
  }
  return "?";
}

Expression Expression::number(double value) {
  return Expression(std::make_shared<const Node>(Node{Kind::number, value, Function::sin, std::nullopt, std::nullopt}));
}

Expression Expression::variable() { return Expression(std::make_shared<const Node>(Node{Kind::variable, 0.0, Function::sin, std::nullopt, std::nullopt})); }

Expression Expression::negate(Expression operand) {
  return Expression(std::make_shared<const Node>(Node{Kind::negate, 0.0, Function::sin, std::move(operand), std::nullopt}));
}

Expression Expression::binary(Kind kind, Expression lhs, Expression rhs) {
  return Expression(
      std::make_shared<const Node>(Node{kind, 0.0, Function::sin, std::move(lhs), std::move(rhs)}));
}

Expression Expression::call(Function fn, Expression argument) {
  return Expression(std::make_shared<const Node>(Node{Kind::call, 0.0, fn, std::move(argument), std::nullopt}));
}

Expression::Kind Expression::kind() const noexcept { return node_->kind; }
double Expression::value() const { return node_->value; }
Expression::Function Expression::function() const { return node_->fn; }

const Expression& Expression::operand() const { return *node_->lhs; }

const Expression& Expression::rhs() const { return *node_->rhs; }

bool Expression::is_binary() const noexcept {
  switch (node_->kind) {
    case Kind::add:
    case Kind::subtract:
    case Kind::multiply:
    case Kind::divide:
    case Kind::power:
      return true;
    default:
      return false;
  }
}

bool Expression::depends_on_x() const noexcept {
  switch (kind()) {
    case Kind::number:
      return false;
    case Kind::variable:
      return true;
    case Kind::negate:
    case Kind::call:
      return operand().depends_on_x();
    default:
      return lhs().depends_on_x() || rhs().depends_on_x();
  }
}

bool Expression::contains(Function fn) const noexcept {
  switch (kind()) {
    case Kind::number:
    case Kind::variable:
      return false;
    case Kind::negate:
      return operand().contains(fn);
    case Kind::call:
      return function() == fn || operand().contains(fn);
    default:
      return lhs().contains(fn) || rhs().contains(fn);
  }
}

double Expression::operator()(double x) const noexcept { return eval_expr(*this, x); }

bool operator==(const Expression& a, const Expression& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Expression::Kind::number:
      return a.value() == b.value();
    case Expression::Kind::variable:
      return true;
    case Expression::Kind::negate:
      return a.operand() == b.operand();
    case Expression::Kind::call:
      return a.function() == b.function() && a.operand() == b.operand();
    default:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

double eval_expr(const Expression& e, double x) noexcept {
  using K = Expression::Kind;
  using F = Expression::Function;
  switch (e.kind()) {
    case K::number:
      return e.value();
    case K::variable:
      return x;
    case K::negate:
      return -eval_expr(e.operand(), x);
    case K::add:
      return eval_expr(e.lhs(), x) + eval_expr(e.rhs(), x);
    case K::subtract:
      return eval_expr(e.lhs(), x) - eval_expr(e.rhs(), x);
    case K::multiply:
      return eval_expr(e.lhs(), x) * eval_expr(e.rhs(), x);
    case K::divide:
      return eval_expr(e.lhs(), x) / eval_expr(e.rhs(), x);
    case K::power:
      return std::pow(eval_expr(e.lhs(), x), eval_expr(e.rhs(), x));
    case K::call: {
      const double u = eval_expr(e.operand(), x);
      switch (e.function()) {
        case F::sin: return std::sin(u);
        case F::cos: return std::cos(u);
        case F::tan: return std::tan(u);
        case F::exp: return std::exp(u);
        // log(0) is -inf and log(<0) NaN; both flow to the caller's finiteness checks.
        case F::log: return std::log(u);
        case F::sqrt: return std::sqrt(u);
        case F::abs: return std::abs(u);
      }
    }
  }
  return std::nan("");
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expression parse_all() {
    skip_ws();
    if (at_end()) fail("empty expression");
    Expression e = expr();
    skip_ws();
    if (!at_end()) {
      if (peek() == ')') fail("unbalanced ')'");
      fail(std::string("unexpected '") + peek() + "'");
    }
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }
  [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const { throw ParseError(at, msg); }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (!at_end() && peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expression expr() {
    Expression e = term();
    while (true) {
      if (accept('+')) {
        e = Expression::binary(Expression::Kind::add, e, term());
      } else if (accept('-')) {
        e = Expression::binary(Expression::Kind::subtract, e, term());
      } else {
        return e;
      }
    }
  }

  Expression term() {
    Expression e = unary();
    while (true) {
      if (accept('*')) {
        e = Expression::binary(Expression::Kind::multiply, e, unary());
      } else if (accept('/')) {
        e = Expression::binary(Expression::Kind::divide, e, unary());
      } else {
        return e;
      }
    }
  }

  Expression unary() {
    if (accept('-')) return Expression::negate(unary());
    return power();
  }

  Expression power() {
    Expression base = primary();
    if (accept('^')) return Expression::binary(Expression::Kind::power, base, unary());
    return base;
  }

  Expression primary() {
    skip_ws();
    if (at_end()) fail("unexpected end of expression");
    const char c = peek();
    if (c == '(') {
      const std::size_t open = pos_++;
      Expression e = expr();
      if (!accept(')')) {
        if (at_end()) fail_at(open, "unbalanced '(': missing ')'");
        fail("expected ')'");
      }
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    if (c == ')') fail("unbalanced ')'");
    fail(std::string("unexpected '") + c + "'");
  }

  Expression number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (!at_end() && peek() == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) fail_at(start, "malformed number");
    if (!at_end() && (peek() == 'e' || peek() == 'E')) {
      ++pos_;
      if (!at_end() && (peek() == '+' || peek() == '-')) ++pos_;
      if (digits() == 0) fail_at(start, "malformed exponent");
    }
    double value = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec == std::errc::result_out_of_range) fail_at(start, "number out of range");
    if (ec != std::errc() || ptr != last) fail_at(start, "malformed number");
    return Expression::number(value);
  }

  Expression identifier() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "x") return Expression::variable();
    for (const auto& [fn, fname] : kFunctions) {
      if (fname != name) continue;
      if (!accept('(')) fail("expected '(' after '" + std::string(name) + "'");
      const std::size_t open = pos_ - 1;
      Expression arg = expr();
      if (!accept(')')) {
        if (at_end()) fail_at(open, "unbalanced '(': missing ')'");
        fail("expected ')'");
      }
      return Expression::call(fn, arg);
    }
    fail_at(start, "unknown identifier '" + std::string(name) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Constructors that fold literal arithmetic and trivial identities.

bool is_number(const Expression& e, double v) {
  return e.kind() == Expression::Kind::number && e.value() == v;
}

Expression num(double v) {
  if (v == 0.0) return Expression::number(0.0);
  if (v < 0.0) return Expression::negate(Expression::number(-v));
  return Expression::number(v);
}

// Literal value of a constant subtree built only from numbers and negation.
bool literal(const Expression& e, double& out) {
  if (e.kind() == Expression::Kind::number) {
    out = e.value();
    return true;
  }
  if (e.kind() == Expression::Kind::negate && e.operand().kind() == Expression::Kind::number) {
    out = -e.operand().value();
    return true;
  }
  return false;
}

Expression fold(Expression::Kind kind, const Expression& a, const Expression& b) {
  double x = 0, y = 0;
  if (literal(a, x) && literal(b, y)) {
    double r = 0;
    switch (kind) {
      case Expression::Kind::add: r = x + y; break;
      case Expression::Kind::subtract: r = x - y; break;
      case Expression::Kind::multiply: r = x * y; break;
      case Expression::Kind::divide: r = x / y; break;
      case Expression::Kind::power: r = std::pow(x, y); break;
      default: break;
    }
    if (std::isfinite(r)) return num(r);
  }
  return Expression::binary(kind, a, b);
}

Expression neg(const Expression& a) {
  double v = 0;
  if (literal(a, v)) return num(-v);
  if (a.kind() == Expression::Kind::negate) return a.operand();
  return Expression::negate(a);
}

Expression add(const Expression& a, const Expression& b) {
  if (is_number(a, 0)) return b;
  if (is_number(b, 0)) return a;
  return fold(Expression::Kind::add, a, b);
}

Expression sub(const Expression& a, const Expression& b) {
  if (is_number(b, 0)) return a;
  if (is_number(a, 0)) return neg(b);
  return fold(Expression::Kind::subtract, a, b);
}

Expression mul(const Expression& a, const Expression& b) {
  if (is_number(a, 0) || is_number(b, 0)) return num(0);
  if (is_number(a, 1)) return b;
  if (is_number(b, 1)) return a;
  return fold(Expression::Kind::multiply, a, b);
}

Expression div(const Expression& a, const Expression& b) {
  if (is_number(b, 1)) return a;
  if (is_number(a, 0) && !is_number(b, 0)) return num(0);
  return fold(Expression::Kind::divide, a, b);
}

Expression pow(const Expression& a, const Expression& b) {
  if (is_number(b, 1)) return a;
  if (is_number(b, 0)) return num(1);
  return fold(Expression::Kind::power, a, b);
}

Expression call(Expression::Function fn, const Expression& a) { return Expression::call(fn, a); }

Expression derive(const Expression& e) {
  using K = Expression::Kind;
  using F = Expression::Function;
  switch (e.kind()) {
    case K::number:
      return num(0);
    case K::variable:
      return num(1);
    case K::negate:
      return neg(derive(e.operand()));
    case K::add:
      return add(derive(e.lhs()), derive(e.rhs()));
    case K::subtract:
      return sub(derive(e.lhs()), derive(e.rhs()));
    case K::multiply:
      return add(mul(derive(e.lhs()), e.rhs()), mul(e.lhs(), derive(e.rhs())));
    case K::divide: {
      const Expression& u = e.lhs();
      const Expression& v = e.rhs();
      return div(sub(mul(derive(u), v), mul(u, derive(v))), pow(v, num(2)));
    }
    case K::power: {
      const Expression& u = e.lhs();
      const Expression& v = e.rhs();
      if (!v.depends_on_x()) {
        return mul(mul(v, pow(u, sub(v, num(1)))), derive(u));
      }
      if (!u.depends_on_x()) {
        return mul(mul(e, call(F::log, u)), derive(v));
      }
      return mul(e, add(mul(derive(v), call(F::log, u)), div(mul(v, derive(u)), u)));
    }
    case K::call: {
      const Expression& u = e.operand();
      const Expression du = derive(u);
      switch (e.function()) {
        case F::sin: return mul(call(F::cos, u), du);
        case F::cos: return neg(mul(call(F::sin, u), du));
        case F::tan: return div(du, pow(call(F::cos, u), num(2)));
        case F::exp: return mul(e, du);
        case F::log: return div(du, u);
        case F::sqrt: return div(du, mul(num(2), e));
        case F::abs: break;
      }
      throw UnsupportedDerivative("abs is not differentiable at 0");
    }
  }
  throw UnsupportedDerivative("unknown node");
}

void print(const Expression& e, std::string& out) {
  using K = Expression::Kind;
  switch (e.kind()) {
    case K::number: {
      std::array<char, 32> buf{};
      const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), e.value());
      out.append(buf.data(), res.ptr);
      return;
    }
    case K::variable:
      out += 'x';
      return;
    case K::negate:
      out += "(-";
      print(e.operand(), out);
      out += ')';
      return;
    case K::call:
      out += function_name(e.function());
      out += '(';
      print(e.operand(), out);
      out += ')';
      return;
    default:
      break;
  }
  char op = '+';
  switch (e.kind()) {
    case K::subtract: op = '-'; break;
    case K::multiply: op = '*'; break;
    case K::divide: op = '/'; break;
    case K::power: op = '^'; break;
    default: break;
  }
  out += '(';
  print(e.lhs(), out);
  out += ' ';
  out += op;
  out += ' ';
  print(e.rhs(), out);
  out += ')';
}

}  // namespace

Expression parse(std::string_view text) { return Parser(text).parse_all(); }

Expression differentiate_expr(const Expression& expr) {
  if (expr.contains(Expression::Function::abs)) {
    throw UnsupportedDerivative("expression contains abs, which is not differentiable at 0");
  }
  return derive(expr);
}

std::string to_string(const Expression& expr) {
  std::string out;
  print(expr, out);
  return out;
}

}  // namespace chebroot
