#pragma once

#include <stdexcept>
#include <string>

namespace elcr {

/// Malformed or inconsistent user input: unknown vertices, bad files,
/// situations outside the model, syntax errors.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A search or expansion exceeded a configured bound.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested operation has no defined meaning for this input
/// (e.g. reducing a simultaneous-move operator).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace elcr
