#include "chebroot/expression.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

namespace chebroot {
namespace {

using K = Expression::Kind;
using F = Expression::Function;

TEST(ParseTest, Examples) {
  const Expression c = parse("cos(x)");
  EXPECT_EQ(c, Expression::call(F::cos, Expression::variable()));

  const Expression q = parse("exp(-0.5*x^2)*(12-48*x^2+16*x^4)");
  EXPECT_DOUBLE_EQ(eval_expr(q, 0.0), 12.0);

  EXPECT_DOUBLE_EQ(eval_expr(parse("2^3^2"), 0.0), 512.0);
}

TEST(ParseTest, PrecedenceAndAssociativity) {
  EXPECT_DOUBLE_EQ(eval_expr(parse("-x^2"), 3.0), -9.0);
  EXPECT_DOUBLE_EQ(eval_expr(parse("(-x)^2"), 3.0), 9.0);
  EXPECT_DOUBLE_EQ(eval_expr(parse("1 - 2 - 3"), 0.0), -4.0);
  EXPECT_DOUBLE_EQ(eval_expr(parse("8 / 4 / 2"), 0.0), 1.0);
  EXPECT_DOUBLE_EQ(eval_expr(parse("2 + 3 * 4"), 0.0), 14.0);
  EXPECT_DOUBLE_EQ(eval_expr(parse("2 ^ -1"), 0.0), 0.5);
  EXPECT_DOUBLE_EQ(eval_expr(parse("--x"), 2.0), 2.0);
  EXPECT_DOUBLE_EQ(eval_expr(parse(" 1.5e2 + .5 + 2E-1 "), 0.0), 150.7);
  EXPECT_EQ(parse("2*x^3").kind(), K::multiply);
}

TEST(ParseTest, ErrorsCarryOffsets) {
  auto offset_of = [](const std::string& text) -> long {
    try {
      parse(text);
    } catch (const ParseError& e) {
      return static_cast<long>(e.offset());
    }
    return -1;
  };
  EXPECT_EQ(offset_of("cos(y)"), 4);      // unknown identifier
  EXPECT_EQ(offset_of("(x + 1"), 0);      // unbalanced: points at '('
  EXPECT_EQ(offset_of("x + 1)"), 5);      // stray ')'
  EXPECT_EQ(offset_of("x 2"), 2);         // trailing garbage
  EXPECT_EQ(offset_of("2x"), 1);          // implicit multiplication
  EXPECT_EQ(offset_of(""), 0);
  EXPECT_EQ(offset_of("x +"), 3);
  EXPECT_EQ(offset_of("sin x"), 4);       // function needs parentheses
  EXPECT_EQ(offset_of("1e"), 0);
  EXPECT_EQ(offset_of("1e999"), 0);
  EXPECT_EQ(offset_of("x $ 2"), 2);
  EXPECT_EQ(offset_of("+x"), 0);          // no unary plus
  EXPECT_EQ(offset_of("0x1F"), 1);        // no hex
}

TEST(EvalTest, Examples) {
  EXPECT_DOUBLE_EQ(eval_expr(parse("x"), 3.5), 3.5);
  EXPECT_DOUBLE_EQ(eval_expr(parse("cos(x)"), 0.0), 1.0);
  EXPECT_DOUBLE_EQ(eval_expr(parse("16*x^4-48*x^2+12"), 1.0), -20.0);
}

TEST(EvalTest, DomainViolationsAreNonFinite) {
  EXPECT_FALSE(std::isfinite(eval_expr(parse("log(x)"), -1.0)));
  EXPECT_FALSE(std::isfinite(eval_expr(parse("log(x)"), 0.0)));
  EXPECT_FALSE(std::isfinite(eval_expr(parse("sqrt(x)"), -1.0)));
  EXPECT_FALSE(std::isfinite(eval_expr(parse("1/x"), 0.0)));
}

TEST(DifferentiateExprTest, Examples) {
  EXPECT_DOUBLE_EQ(eval_expr(differentiate_expr(parse("x^2")), 2.0), 4.0);
  EXPECT_DOUBLE_EQ(eval_expr(differentiate_expr(parse("cos(x)")), std::numbers::pi / 2), -1.0);
  EXPECT_NEAR(eval_expr(differentiate_expr(parse("exp(-0.5*x^2)")), 1.0), -0.6065306597126334, 1e-15);
  EXPECT_THROW(differentiate_expr(parse("abs(x)")), UnsupportedDerivative);
  EXPECT_THROW(differentiate_expr(parse("x + abs(2)")), UnsupportedDerivative);
}

TEST(DifferentiateExprTest, FoldsLiterals) {
  EXPECT_EQ(to_string(differentiate_expr(parse("x^2"))), "(2 * x)");
  EXPECT_EQ(to_string(differentiate_expr(parse("3*x + 7"))), "3");
  EXPECT_EQ(to_string(differentiate_expr(parse("5"))), "0");
}

TEST(DifferentiateExprTest, MatchesFiniteDifferences) {
  const std::vector<std::string> corpus{
      "x",
      "x^2 - 3*x + 1",
      "sin(x)*cos(2*x)",
      "tan(0.3*x)",
      "exp(-0.5*x^2)*(12-48*x^2+16*x^4)",
      "log(x^2 + 1)",
      "sqrt(x^2 + 2)",
      "(x^3 - 1) / (x^2 + 4)",
      "2^x",
      "(x^2 + 1)^(0.5*x)",
      "-x^3 + 2^-x",
      "exp(sin(x))",
  };
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> point(-3.0, 3.0);
  const double h = 1e-6;
  for (const auto& text : corpus) {
    const Expression e = parse(text);
    const Expression d = differentiate_expr(e);
    for (int i = 0; i < 50; ++i) {
      const double x = point(rng);
      const double fd = (eval_expr(e, x + h) - eval_expr(e, x - h)) / (2 * h);
      EXPECT_NEAR(eval_expr(d, x), fd, 1e-5) << text << " at " << x;
    }
  }
}

TEST(PrintTest, RoundTripsThroughParser) {
  for (const std::string text :
       {"cos(x)", "exp(-0.5*x^2)*(12-48*x^2+16*x^4)", "2^3^2", "-x^2", "1e-300 + 123456.789*x", "--x",
        "sqrt(abs(x)) / (1 - x)", "0.1 + 0.2"}) {
    const Expression e = parse(text);
    EXPECT_EQ(parse(to_string(e)), e) << text << " -> " << to_string(e);
  }
}

// Random expressions from the grammar, with a reference value computed while
// generating (an independent tree walk over the generator's own structure).
struct Generated {
  std::string text;
  double value;
};

class Generator {
 public:
  Generator(std::mt19937_64& rng, double x) : rng_(rng), x_(x) {}

  Generated expr(int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 9);
    switch (pick(rng_)) {
      case 0: {
        std::uniform_int_distribution<int> n(0, 9);
        const int v = n(rng_);
        return {std::to_string(v), static_cast<double>(v)};
      }
      case 1:
        return {"x", x_};
      case 2: {
        const double v = std::uniform_real_distribution<double>(0.0, 5.0)(rng_);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return {buf, std::strtod(buf, nullptr)};
      }
      case 3: {
        auto a = expr(depth - 1);
        return {"-(" + a.text + ")", -a.value};
      }
      case 4: {
        auto a = expr(depth - 1), b = expr(depth - 1);
        return {"(" + a.text + ")+(" + b.text + ")", a.value + b.value};
      }
      case 5: {
        auto a = expr(depth - 1), b = expr(depth - 1);
        return {"(" + a.text + ")-(" + b.text + ")", a.value - b.value};
      }
      case 6: {
        auto a = expr(depth - 1), b = expr(depth - 1);
        return {"(" + a.text + ")*(" + b.text + ")", a.value * b.value};
      }
      case 7: {
        auto a = expr(depth - 1), b = expr(depth - 1);
        return {"(" + a.text + ")/(" + b.text + ")", a.value / b.value};
      }
      case 8: {
        auto a = expr(depth - 1);
        return {"sin(" + a.text + ")", std::sin(a.value)};
      }
      default: {
        auto a = expr(depth - 1);
        return {"exp(" + a.text + ")", std::exp(a.value)};
      }
    }
  }

 private:
  std::mt19937_64& rng_;
  double x_;
};

TEST(PrecedenceFuzz, ParenthesisedGeneratorAgrees) {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 500; ++i) {
    const double x = std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
    Generator gen(rng, x);
    const Generated g = gen.expr(4);
    const double got = eval_expr(parse(g.text), x);
    if (std::isnan(g.value)) {
      EXPECT_TRUE(std::isnan(got)) << g.text;
    } else {
      EXPECT_EQ(got, g.value) << g.text;
    }
  }
}

TEST(PrecedenceFuzz, UnparenthesisedChainsFollowPrecedence) {
  // Flat chains "a op b op c ..." evaluated by a reference shunting pass.
  std::mt19937_64 rng(78);
  const char ops[] = {'+', '-', '*', '/', '^'};
  for (int i = 0; i < 500; ++i) {
    const int len = 2 + i % 5;
    std::vector<double> vals;
    std::vector<char> os;
    std::string text;
    for (int k = 0; k < len; ++k) {
      const double v = 1 + static_cast<int>(rng() % 4);
      vals.push_back(v);
      text += std::to_string(static_cast<int>(v));
      if (k + 1 < len) {
        os.push_back(ops[rng() % 5]);
        text += os.back();
      }
    }
    // Reference: ^ (right-assoc) first, then * / left to right, then + - left to right.
    std::vector<double> v1{vals.back()};
    std::vector<char> o1;
    for (int k = len - 2; k >= 0; --k) {
      if (os[k] == '^') {
        v1.back() = std::pow(vals[k], v1.back());
      } else {
        o1.push_back(os[k]);
        v1.push_back(vals[k]);
      }
    }
    std::reverse(v1.begin(), v1.end());
    std::reverse(o1.begin(), o1.end());
    std::vector<double> v2{v1[0]};
    std::vector<char> o2;
    for (std::size_t k = 0; k < o1.size(); ++k) {
      if (o1[k] == '*') {
        v2.back() *= v1[k + 1];
      } else if (o1[k] == '/') {
        v2.back() /= v1[k + 1];
      } else {
        o2.push_back(o1[k]);
        v2.push_back(v1[k + 1]);
      }
    }
    double want = v2[0];
    for (std::size_t k = 0; k < o2.size(); ++k) want = o2[k] == '+' ? want + v2[k + 1] : want - v2[k + 1];
    EXPECT_DOUBLE_EQ(eval_expr(parse(text), 0.0), want) << text;
  }
}

}  // namespace
}  // namespace chebroot
