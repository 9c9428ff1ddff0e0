#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace superres {

/// Argument outside the domain an operation is defined on.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// First-order mode truncation used outside |offset| < w0.
class TruncationError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Closed-form path called with inputs that violate its assumptions.
class ContractError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Adaptive quadrature ran out of subdivisions before meeting tolerance.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string &what, double estimate, double error_bound)
      : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

private:
  double estimate_;
  double error_bound_;
};

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, std::string key, const std::string &message)
      : std::runtime_error("line " + std::to_string(line) + ": '" + key + "': " + message),
        line_(line), key_(std::move(key)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string &key() const noexcept { return key_; }

private:
  std::size_t line_;
  std::string key_;
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace superres
