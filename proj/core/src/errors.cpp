#include "chebroot/errors.hpp"

#include <sstream>

namespace chebroot {

namespace {

std::string describe(std::size_t node_index, double x, double value) {
  std::ostringstream os;
  os.precision(17);
  os << "non-finite sample f(" << x << ") = " << value << " at node " << node_index;
  return os.str();
}

}  // namespace

NonFiniteSample::NonFiniteSample(std::size_t node_index, double x, double value)
    : std::domain_error(describe(node_index, x, value)),
      node_index_(node_index),
      x_(x),
      value_(value) {}

}  // namespace chebroot
