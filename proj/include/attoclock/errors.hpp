#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace attoclock {

// Root of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Field strength above the atomic field strength: no barrier is left to tunnel through.
class BarrierSuppressed : public DomainError {
 public:
  BarrierSuppressed(double field, double atomic_field);

  double field() const noexcept { return field_; }
  double atomic_field() const noexcept { return atomic_field_; }

 private:
  double field_;
  double atomic_field_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what);
  explicit ParseError(const std::string& what) : Error(what), line_(0) {}

  // 1-based line number, 0 when not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class EmptyDataset : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class SingularFit : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class GridMismatch : public Error {
 public:
  using Error::Error;
};

class UnitMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace attoclock
