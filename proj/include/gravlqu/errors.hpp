#pragma once

#include <stdexcept>
#include <string>

namespace gravlqu {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A matrix that should be positive semidefinite has an eigenvalue (or block
// determinant/trace) below the clipping tolerance.
class NotPsdError : public Error {
 public:
  using Error::Error;
};

// A dense matrix does not have the two-qubit X structure.
class StructureError : public Error {
 public:
  StructureError(const std::string& what, int row, int col, double magnitude)
      : Error(what), row_(row), col_(col), magnitude_(magnitude) {}
  int row() const { return row_; }
  int col() const { return col_; }
  double magnitude() const { return magnitude_; }

 private:
  int row_;
  int col_;
  double magnitude_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// Bad argument to a public entry point (non-finite input, unnormalised root,
// malformed configuration).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Caller asked for something that does not exist (unknown preset, mismatched
// rows and figure). Maps to exit code 2 in the CLI.
class UsageError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace gravlqu
