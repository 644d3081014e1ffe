#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace amqc {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonHermitianInput : public Error {
 public:
  using Error::Error;
};

class NonUnitaryArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class BadTargets : public Error {
 public:
  using Error::Error;
};

// An operator identity that must hold by construction did not. Signals a
// convention bug rather than a property of the inputs.
class FactorizationFailure : public Error {
 public:
  using Error::Error;
};

class SearchExhausted : public Error {
 public:
  using Error::Error;
};

class ScheduleInvalid : public Error {
 public:
  using Error::Error;
};

class AncillaEntangledAtExit : public Error {
 public:
  AncillaEntangledAtExit(const std::string& what, std::size_t step)
      : Error(what), step_(step) {}

  // Index into Schedule::instructions of the ancilla's last interaction.
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace amqc
