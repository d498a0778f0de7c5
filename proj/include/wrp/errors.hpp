#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wrp {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input text could not be understood; carries the 1-based line number.
class ParseError : public Error {
public:
  ParseError(int line, const std::string& msg)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

class OverflowError : public Error {
public:
  explicit OverflowError(const std::string& msg) : Error(msg) {}
};

// Exhaustive-search budget exceeded (oracle refuses oversized inputs).
class BudgetError : public Error {
public:
  explicit BudgetError(const std::string& msg) : Error(msg) {}
};

class WalkError : public Error {
public:
  explicit WalkError(const std::string& msg) : Error(msg) {}
};

// A solver-internal consistency check failed; always a bug, never user error.
class InternalError : public Error {
public:
  explicit InternalError(const std::string& msg) : Error(msg) {}
};

// Sum with overflow check; weights accumulate across many edges and a silent
// wrap would corrupt optima.
inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw OverflowError("weight overflow: " + std::to_string(a) + " + " + std::to_string(b));
  }
  return out;
}

}  // namespace wrp
