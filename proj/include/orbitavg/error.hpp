#pragma once

#include <stdexcept>
#include <string>

namespace orbitavg {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the documented domain (bad tolerance, wrong degree, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A theorem hypothesis does not hold for the given parameters.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

// A discriminant sits inside the sign tolerance band and no exact value
// was available to settle it.
class UndecidedError : public Error {
 public:
  using Error::Error;
};

// The exponent choice makes a power of eps vanish, so the unperturbed
// system is not the linear center and first-order averaging does not apply.
class AveragingInapplicable : public Error {
 public:
  using Error::Error;
};

// Every term of the first-order field is switched off.
class ZeroFieldError : public Error {
 public:
  using Error::Error;
};

class IntegrationError : public Error {
 public:
  using Error::Error;
};

class ShootingError : public Error {
 public:
  using Error::Error;
};

}  // namespace orbitavg
