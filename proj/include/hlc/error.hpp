#pragma once

#include <stdexcept>
#include <string>

namespace hlc {

/// Base class for data errors: malformed bitstreams, unreadable images,
/// degenerate corpora. Precondition violations throw std::invalid_argument.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by every decode path on truncated or structurally invalid input.
class DecodeError : public Error {
 public:
  using Error::Error;
};

}  // namespace hlc
