#include "radeuler/errors.hpp"

#include <sstream>

namespace radeuler {

namespace {

std::string describe(const std::string& field, std::size_t node, double time, double value) {
    std::ostringstream os;
    os.precision(17);
    os << "state invalid: field '" << field << "' = " << value << " at node " << node
       << ", t = " << time;
    return os.str();
}

}  // namespace

StateInvalidError::StateInvalidError(std::string field, std::size_t node, double time, double value)
    : std::runtime_error(describe(field, node, time, value)),
      field_(std::move(field)),
      node_(node),
      time_(time),
      value_(value) {}

}  // namespace radeuler
