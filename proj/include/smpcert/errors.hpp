#pragma once

#include <stdexcept>
#include <string>

namespace smpcert {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact and floating-point scalars were combined in one operation.
class BackendMismatch : public Error {
 public:
  BackendMismatch() : Error("backend mismatch: exact and float scalars cannot be mixed") {}
  explicit BackendMismatch(const std::string& what) : Error(what) {}
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// An argument violates a documented precondition (kappa <= 1, mu <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// Eigenvector extraction failed: not an eigenvalue, not simple, or the
/// eigenvector is parallel to (0, 1).
class EigenError : public Error {
 public:
  using Error::Error;
};

/// The pair (x, y) spans no sector: (x, T y) = 0.
class DegenerateSector : public Error {
 public:
  using Error::Error;
};

/// The trace/determinant permutability criterion only applies to
/// irreducible pairs.
class CriterionInapplicable : public Error {
 public:
  using Error::Error;
};

class NonConvexPolygon : public Error {
 public:
  using Error::Error;
};

/// Requested word length exceeds the enumeration cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Two independent computations of the same quantity disagree.
class InternalError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace smpcert
