#pragma once

#include <stdexcept>
#include <string>

namespace qgms {

// Base for every error raised by the library. Callers that only care about
// "something went wrong" catch this; the CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDimensions : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  SingularMatrix() : Error("coefficient matrix is singular over GF(2)") {}
};

class RegisterMismatch : public Error {
 public:
  using Error::Error;
};

class QubitCapExceeded : public Error {
 public:
  QubitCapExceeded(unsigned required, unsigned cap)
      : Error("circuit needs " + std::to_string(required) + " qubits, cap is " +
              std::to_string(cap)),
        required_(required),
        cap_(cap) {}

  unsigned required() const noexcept { return required_; }
  unsigned cap() const noexcept { return cap_; }

 private:
  unsigned required_;
  unsigned cap_;
};

class UnresolvedOracle : public Error {
 public:
  explicit UnresolvedOracle(const std::string& name)
      : Error("oracle block '" + name + "' has no table attached") {}
};

class ZeroPeriod : public Error {
 public:
  ZeroPeriod() : Error("Simon period must be nonzero") {}
};

class ZeroWhiteningKey : public Error {
 public:
  ZeroWhiteningKey() : Error("whitening key k1 must be nonzero") {}
};

class DegenerateUnmarkedMean : public Error {
 public:
  DegenerateUnmarkedMean() : Error("mean unmarked amplitude is zero") {}
};

class EnumerationTooLarge : public Error {
 public:
  using Error::Error;
};

class NonClassicalGate : public Error {
 public:
  using Error::Error;
};

}  // namespace qgms
