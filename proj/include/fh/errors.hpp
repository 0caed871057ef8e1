#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fh {

// Caller violated a documented precondition.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured size limit would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The chosen prime divides a stored denominator; retry with another prime.
class BadPrimeError : public std::runtime_error {
 public:
  explicit BadPrimeError(std::uint32_t prime)
      : std::runtime_error("prime " + std::to_string(prime) + " divides a denominator"), prime_(prime) {}
  std::uint32_t prime() const noexcept { return prime_; }

 private:
  std::uint32_t prime_;
};

// An internal cross-check failed: a result that must be integral was not,
// or an image that must be invariant was not.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace fh
