#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace profinite {

// Base class for every error raised by the toolkit. Each subclass maps to a
// distinct failure category so the CLI can report it in structured form.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

class MalformedTable : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "malformed-table"; }
};

class UnsupportedOrder : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "unsupported-order"; }
};

class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain-error"; }
};

class NotFound : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "not-found"; }
};

class ContractViolation : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "contract-violation"; }
};

class UnsupportedCase : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "unsupported-case"; }
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  const char* kind() const noexcept override { return "syntax-error"; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace profinite
