#include "chebroot/interval.hpp"

#include <cmath>
#include <sstream>

#include "chebroot/errors.hpp"

namespace chebroot {

Interval::Interval(double a, double b) : a_(a), b_(b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    std::ostringstream os;
    os << "invalid interval [" << a << ", " << b << "]: need finite a < b";
    throw InvalidArgument(os.str());
  }
}

double Interval::to_standard(double x) const noexcept {
  return (2.0 * x - (a_ + b_)) / (b_ - a_);
}

double Interval::from_standard(double x_hat) const noexcept {
  return 0.5 * (a_ + b_ + (b_ - a_) * x_hat);
}

}  // namespace chebroot
