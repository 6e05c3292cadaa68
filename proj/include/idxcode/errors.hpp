#ifndef IDXCODE_ERRORS_HPP
#define IDXCODE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace idxcode {

/// Bad argument: out-of-range index, dimension mismatch, failed precondition
/// that the caller can check up front.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Text input that does not follow the expected format. `line()` is 1-based,
/// 0 when the error is not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// A structural promise made by the caller (e.g. a minrank bound) turned out
/// to be false while running an algorithm that relies on it.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Numerical routine failed to reach its target.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace idxcode

#endif  // IDXCODE_ERRORS_HPP
