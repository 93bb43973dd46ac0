#pragma once

#include <stdexcept>
#include <string>

namespace pacsem {

// Malformed or out-of-range input supplied by a caller or a file.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Inputs are well-formed but violate a documented precondition that could
// only be detected by doing the work (e.g. no witnessing point exists).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A cutting-planes rule applied to premises it does not fit.
class RuleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace pacsem
