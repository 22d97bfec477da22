#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace caal {

// Symbol outside a machine's declared alphabet.
class InputDomainError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Mismatched alphabets, unknown config keys, unsupported roster entries.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller broke a documented precondition (e.g. length-mismatched observation).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace caal
