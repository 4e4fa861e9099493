#pragma once

#include <stdexcept>
#include <string>

namespace dover {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bad argument values or shape mismatches detected at an API boundary.
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& msg) : Error(msg) {}
};

/// Filesystem and decode failures; the message names the offending file.
class IoError : public Error {
 public:
  explicit IoError(const std::string& msg) : Error(msg) {}
};

/// Correlation requested on a constant or too-short sequence.
class UndefinedCorrelation : public Error {
 public:
  explicit UndefinedCorrelation(const std::string& msg) : Error(msg) {}
};

/// Fit or selection problem whose inputs admit no solution.
class DegenerateInput : public Error {
 public:
  explicit DegenerateInput(const std::string& msg) : Error(msg) {}
};

}  // namespace dover
