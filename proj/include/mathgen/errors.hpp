#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mathgen {

/// Precondition failure on an operation's inputs (zero divisor, n < 2, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed text. `position` is a 0-based byte offset into the input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}
  explicit ParseError(const std::string& what)
      : std::runtime_error(what), position_(0) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A generator produced something its solver cannot handle (degenerate
/// system, irrational roots, ...). Generation loops treat this as a retry.
class ContractViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised inside generation when a candidate question must be discarded
/// (length or alphabet overflow, unsatisfied entropy budget).
class RetrySignal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Generation gave up after exhausting its retry allowance.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mathgen
