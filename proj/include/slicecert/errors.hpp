#pragma once

#include <stdexcept>
#include <string>

namespace slicecert {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotClosedUnderBracket : public Error {
 public:
  using Error::Error;
};

class SubalgebraNotContained : public Error {
 public:
  using Error::Error;
};

class DegenerateSliceForm : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class NotRelativeEquilibrium : public Error {
 public:
  using Error::Error;
};

class SolverDiverged : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Raised by the loader; the message names the violated invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace slicecert
