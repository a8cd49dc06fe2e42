#pragma once

#include <stdexcept>
#include <string>

namespace encmatch {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad arguments, malformed files, violated preconditions.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Filesystem or codec failure.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A computation exceeded a configured resource cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace encmatch
