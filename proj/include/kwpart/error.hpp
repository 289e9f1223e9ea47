#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kwpart {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A truth table with no 0-output or no 1-output was used to build a relation.
class ConstantFunctionError : public Error {
 public:
  ConstantFunctionError()
      : Error("constant function: f^-1(1) and f^-1(0) must both be non-empty") {}
};

/// Rectangle enumeration would exceed the configured limit.
class SizeGuardError : public Error {
 public:
  SizeGuardError(std::uint64_t count, std::uint64_t limit)
      : Error("rectangle guard exceeded: relation has " + std::to_string(count) +
              " rectangles, limit is " + std::to_string(limit)),
        count_(count),
        limit_(limit) {}

  std::uint64_t count() const noexcept { return count_; }
  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::uint64_t count_;
  std::uint64_t limit_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ModelError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant that a proof guarantees did not hold.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace kwpart
