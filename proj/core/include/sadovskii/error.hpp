#pragma once

#include <stdexcept>
#include <string>

namespace sadovskii {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numeric argument or configuration value is outside its documented range.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Pointwise kernel evaluation at coincident points; use cell quadrature instead.
class SingularEvaluation : public Error {
 public:
  using Error::Error;
};

/// Kernel moment requested for an exponent where the integral diverges.
class DivergentMoment : public Error {
 public:
  using Error::Error;
};

class OutOfBounds : public Error {
 public:
  using Error::Error;
};

class DegenerateGeometry : public Error {
 public:
  using Error::Error;
};

/// No multiplier pair reproduces the requested impulse with a compactly
/// supported field.
class InfeasibleImpulse : public Error {
 public:
  using Error::Error;
};

/// Residual or speed formula requested for a field with zero mass.
class ZeroMass : public Error {
 public:
  using Error::Error;
};

class NonConverged : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class CflViolation : public Error {
 public:
  CflViolation(const std::string& what, double suggested_dt)
      : Error(what), suggested_dt_(suggested_dt) {}

  [[nodiscard]] double suggested_dt() const noexcept { return suggested_dt_; }

 private:
  double suggested_dt_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace sadovskii
