#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace algeq {

// Base of every error thrown by the engine. Operations that merely answer
// "no" (inequality, failed checks) return optional/bool instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke a documented precondition (ill-typed input, ill-scoped term).
class ContractError : public Error {
 public:
  using Error::Error;
};

class ScopeError : public ContractError {
 public:
  using ContractError::ContractError;
};

class IndexOutOfRange : public Error {
 public:
  explicit IndexOutOfRange(std::size_t index)
      : Error("de Bruijn index " + std::to_string(index) + " is out of range"), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class TypeError : public Error {
 public:
  enum class Kind { NotAPath, IllTyped };

  TypeError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class FuelExhausted : public Error {
 public:
  explicit FuelExhausted(std::size_t fuel)
      : Error("weak head normalization exceeded " + std::to_string(fuel) + " steps"), fuel_(fuel) {}
  std::size_t fuel() const noexcept { return fuel_; }

 private:
  std::size_t fuel_;
};

class InvalidPathSubst : public Error {
 public:
  using Error::Error;
};

class InvalidTrace : public Error {
 public:
  using Error::Error;
};

class MiddleTermMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidDerivation : public Error {
 public:
  using Error::Error;
};

class GenerationFailed : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A certificate file that is not JSON or does not have the expected shape.
class MalformedCertificate : public Error {
 public:
  using Error::Error;
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(std::string name)
      : Error("unbound variable '" + name + "'"), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

}  // namespace algeq
