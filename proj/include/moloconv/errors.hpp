#pragma once

#include <stdexcept>
#include <string>

namespace moloconv {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: invalid parameters, malformed config, bad axis specs.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public ConfigError {
 public:
  ValidationError(std::string field, std::string reason)
      : ConfigError(field + ": " + reason), field_(std::move(field)), reason_(std::move(reason)) {}

  const std::string& field() const { return field_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string field_;
  std::string reason_;
};

// The inputs are fine but the physics has no answer at this point
// (pole, instability, vanishing efficiency...).
class PhysicsError : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

class SingularAtFrequency : public PhysicsError {
 public:
  SingularAtFrequency(double omega, double rcond)
      : PhysicsError("M + i*omega*I is singular at omega = " + std::to_string(omega) +
                     " (rcond " + std::to_string(rcond) + ")"),
        omega_(omega) {}
  double omega() const { return omega_; }

 private:
  double omega_;
};

class PoleAtFrequency : public PhysicsError {
 public:
  PoleAtFrequency(double omega, const std::string& what)
      : PhysicsError(what + " has a pole at omega = " + std::to_string(omega)), omega_(omega) {}
  double omega() const { return omega_; }

 private:
  double omega_;
};

class ZeroEfficiency : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

class PrereqViolation : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

class EigensolverFailure : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

class AllUnstable : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

}  // namespace moloconv
