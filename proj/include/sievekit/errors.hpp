#pragma once

#include <stdexcept>
#include <string>

#include "sievekit/report.hpp"

namespace sievekit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an input fails its structural laws; carries every violation.
class ValidationError : public Error {
 public:
  ValidationError(std::string what, Report report) : Error(std::move(what)), report_(std::move(report)) {}
  const Report& report() const noexcept { return report_; }

 private:
  Report report_;
};

class UnknownName : public Error {
 public:
  using Error::Error;
};

class NoTerminalObject : public Error {
 public:
  NoTerminalObject() : Error("category has no terminal object") {}
};

class CodomainMismatch : public Error {
 public:
  using Error::Error;
};

class SizeGuardExceeded : public Error {
 public:
  SizeGuardExceeded(std::string object, std::size_t count, std::size_t guard)
      : Error("object '" + object + "' has " + std::to_string(count) + " sieves, guard is " + std::to_string(guard)) {}
};

class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

/// Two independently computed answers disagreed. Always a bug.
class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace sievekit
