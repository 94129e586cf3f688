#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "chebroot/errors.hpp"
#include "chebroot/interval.hpp"

namespace chebroot {

/// Roots of T_n in decreasing order: cos(pi (2k-1) / (2n)), k = 1..n.
std::vector<double> standard_nodes(std::size_t n);

/// standard_nodes(n) pushed through interval.from_standard.
std::vector<double> mapped_nodes(const Interval& interval, std::size_t n);

/// Truncated Chebyshev expansion f_N(x) = sum_j a_j T_j(x_hat) on an interval.
class ChebyshevSeries {
 public:
  /// Throws InvalidArgument on an empty or non-finite coefficient list.
  ChebyshevSeries(Interval interval, std::vector<double> coeffs);

  const Interval& interval() const noexcept { return interval_; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  double leading() const noexcept { return coeffs_.back(); }

  /// Clenshaw evaluation. Points outside the interval are extrapolated.
  double operator()(double x) const noexcept;

  friend bool operator==(const ChebyshevSeries&, const ChebyshevSeries&) = default;

 private:
  Interval interval_;
  std::vector<double> coeffs_;
};

/// Discrete Chebyshev transform of n samples taken at mapped_nodes(interval, n).
/// Produces a_0..a_{n-1}:
///   a_0 = (1/n) sum_k f(x_k),  a_j = (2/n) sum_k f(x_k) cos(j pi (2k-1) / (2n)).
/// Direct O(n^2) sum. Throws InvalidArgument for an empty sample list and
/// NonFiniteSample naming the first bad node.
ChebyshevSeries transform(std::span<const double> samples, const Interval& interval);

/// Sample `f` at the n mapped nodes and transform.
template <class F>
ChebyshevSeries interpolate(F&& f, const Interval& interval, std::size_t n) {
  if (n == 0) throw InvalidArgument("interpolate: need at least one node");
  const std::vector<double> xs = mapped_nodes(interval, n);
  std::vector<double> samples;
  samples.reserve(n);
  for (double x : xs) samples.push_back(static_cast<double>(f(x)));
  return transform(samples, interval);
}

double evaluate(const ChebyshevSeries& series, double x) noexcept;

/// Derivative series on the same interval, one degree lower (a constant
/// series differentiates to the zero constant).
ChebyshevSeries differentiate(const ChebyshevSeries& series);

/// Drop trailing coefficients with |a_j| <= tol * max|a_j|. At least a_0 is kept.
ChebyshevSeries chop(const ChebyshevSeries& series, double tol = 1e-13);

struct DecayProfile {
  std::vector<double> abs_coeffs;  // |a_j|, index j
  // Least-squares slope of log|a_j| against log j over the significant
  // tail. Empty when the tail is identically zero ("exact").
  std::optional<double> slope;

  bool exact() const noexcept { return !slope.has_value(); }

  friend bool operator==(const DecayProfile&, const DecayProfile&) = default;
};

/// Coefficients with |a_j| <= noise_floor * max|a_j| are treated as zero when
/// fitting the slope. Requires at least four coefficients.
DecayProfile coefficient_decay(const ChebyshevSeries& series, double noise_floor = 1e-13);

}  // namespace chebroot
