#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace chebroot {

// Grammar (whitespace ignored, multiplication always explicit):
//
//   expr    = term { ("+" | "-") term } ;
//   term    = unary { ("*" | "/") unary } ;
//   unary   = "-" unary | power ;
//   power   = primary [ "^" unary ] ;          (right-associative)
//   primary = number | "x" | func "(" expr ")" | "(" expr ")" ;
//   func    = "sin" | "cos" | "tan" | "exp" | "log" | "sqrt" | "abs" ;
//   number  = digits [ "." digits ] [ ("e" | "E") [ "+" | "-" ] digits ]
//           | "." digits [ exponent ] ;
//
// So -x^2 is -(x^2) and 2^3^2 is 2^9.

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& message);

  /// 0-based byte offset into the parsed text.
  std::size_t offset() const noexcept { return offset_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t offset_;
  std::string detail_;
};

class UnsupportedDerivative : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Immutable expression tree in the single variable x. Copies share nodes.
class Expression {
 public:
  enum class Kind { number, variable, negate, add, subtract, multiply, divide, power, call };
  enum class Function { sin, cos, tan, exp, log, sqrt, abs };

  static Expression number(double value);
  static Expression variable();
  static Expression negate(Expression operand);
  static Expression binary(Kind kind, Expression lhs, Expression rhs);
  static Expression call(Function fn, Expression argument);

  Kind kind() const noexcept;
  double value() const;              // number
  Function function() const;         // call
  const Expression& operand() const; // unary child, or lhs of a binary node
  const Expression& lhs() const { return operand(); }
  const Expression& rhs() const;     // binary

  bool is_binary() const noexcept;
  bool depends_on_x() const noexcept;
  bool contains(Function fn) const noexcept;

  double operator()(double x) const noexcept;

  friend bool operator==(const Expression& a, const Expression& b) noexcept;

 private:
  struct Node;
  explicit Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

std::string_view function_name(Expression::Function fn) noexcept;

/// Throws ParseError carrying the byte offset of the problem.
Expression parse(std::string_view text);

/// Plain IEEE arithmetic: domain errors come back as NaN or inf.
double eval_expr(const Expression& expr, double x) noexcept;

/// Symbolic d/dx with folding of literal arithmetic. Throws
/// UnsupportedDerivative if abs appears anywhere in the tree.
Expression differentiate_expr(const Expression& expr);

/// Fully parenthesised text that parses back to an identical tree.
std::string to_string(const Expression& expr);

}  // namespace chebroot
