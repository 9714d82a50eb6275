#pragma once

#include <stdexcept>
#include <string>

namespace ermrates {

// Unknown point id or a point outside the domain a hypothesis was built over.
class DomainError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A truncation or search exceeds a configured cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed parameters, witnesses, or input files.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace ermrates
