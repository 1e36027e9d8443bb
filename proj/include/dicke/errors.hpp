#pragma once

#include <stdexcept>
#include <string>

namespace dicke {

/// Base class for every error raised by the library. `kind()` is a stable
/// machine-readable tag (e.g. "Resonance") used by the CLI error record.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// Errors that signal the physics of the request is invalid (a resonance,
/// a broken conservation law, a stalled flow) rather than a usage mistake.
class PhysicsError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& message)
      : Error("DimensionMismatch", message) {}
};

class Overflow : public Error {
 public:
  explicit Overflow(const std::string& message) : Error("Overflow", message) {}
};

class NotSymmetric : public Error {
 public:
  explicit NotSymmetric(const std::string& message)
      : Error("NotSymmetric", message) {}
};

class NotDiagonal : public Error {
 public:
  explicit NotDiagonal(const std::string& message)
      : Error("NotDiagonal", message) {}
};

class DegenerateFit : public Error {
 public:
  explicit DegenerateFit(const std::string& message)
      : Error("DegenerateFit", message) {}
};

/// An interaction element connects two states whose unperturbed energies
/// coincide, so no generator can remove it.
class Resonance : public PhysicsError {
 public:
  Resonance(long row, long col, const std::string& message)
      : PhysicsError("Resonance", message), row_(row), col_(col) {}

  long row() const noexcept { return row_; }
  long col() const noexcept { return col_; }

 private:
  long row_;
  long col_;
};

class DomainError : public PhysicsError {
 public:
  explicit DomainError(const std::string& message)
      : PhysicsError("DomainError", message) {}
};

class NotBlockDiagonal : public PhysicsError {
 public:
  explicit NotBlockDiagonal(const std::string& message)
      : PhysicsError("NotBlockDiagonal", message) {}
};

class StepUnderflow : public PhysicsError {
 public:
  explicit StepUnderflow(const std::string& message)
      : PhysicsError("StepUnderflow", message) {}
};

}  // namespace dicke
