#ifndef AAMSIM_ERRORS_H_
#define AAMSIM_ERRORS_H_

#include <stdexcept>
#include <string>

namespace aamsim {

// Bad user-supplied parameters (scenario file, CLI flags, model fields).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke an operation's documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A simulation produced a state that violates a model invariant.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace aamsim

#endif  // AAMSIM_ERRORS_H_
