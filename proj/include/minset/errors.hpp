#pragma once

#include <stdexcept>
#include <string>

namespace minset {

/// Input outside an operation's domain (bad angle, bad level, malformed bounds).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numeric or resource guard tripped: memory caps, empty admissible sets,
/// aborted fits.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed curve or report file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace minset
