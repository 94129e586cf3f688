#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chebroot {

// Bad argument to a library call (empty input, N = 0, invalid interval...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The sampled function returned NaN or +-inf at an interpolation node.
class NonFiniteSample : public std::domain_error {
 public:
  NonFiniteSample(std::size_t node_index, double x, double value);

  std::size_t node_index() const noexcept { return node_index_; }
  double x() const noexcept { return x_; }
  double value() const noexcept { return value_; }

 private:
  std::size_t node_index_;
  double x_;
  double value_;
};

// build_frobenius was handed a series whose leading coefficient is zero.
class DegenerateLeadingCoefficient : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace chebroot
