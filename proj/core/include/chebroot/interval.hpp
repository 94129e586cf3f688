#pragma once

namespace chebroot {

/// A finite real interval [a, b] with a < b, together with the affine maps
/// between it and the standard interval [-1, 1].
class Interval {
 public:
  /// Throws InvalidArgument unless both endpoints are finite and a < b.
  Interval(double a, double b);

  double lower() const noexcept { return a_; }
  double upper() const noexcept { return b_; }
  double width() const noexcept { return b_ - a_; }
  double midpoint() const noexcept { return 0.5 * (a_ + b_); }

  bool contains(double x) const noexcept { return a_ <= x && x <= b_; }

  /// x -> (2x - (a+b)) / (b-a). Defined for every real x, not only [a,b].
  double to_standard(double x) const noexcept;
  /// x_hat -> (a + b + (b-a) x_hat) / 2.
  double from_standard(double x_hat) const noexcept;

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double a_;
  double b_;
};

inline double to_standard(const Interval& interval, double x) noexcept {
  return interval.to_standard(x);
}

inline double from_standard(const Interval& interval, double x_hat) noexcept {
  return interval.from_standard(x_hat);
}

}  // namespace chebroot
