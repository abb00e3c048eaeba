#pragma once

#include <stdexcept>
#include <string>

namespace tutteparity {

// Malformed input. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input too large for an exhaustive enumeration.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A cyclotomic value that was expected to be rational is not.
class NotRational : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr int kMaxExactEdges = 24;

inline void require_size(bool ok, const std::string& what) {
  if (!ok) throw SizeError(what);
}

inline void require_domain(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

}  // namespace tutteparity
