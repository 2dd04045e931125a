#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tetris {

/// Base of every error the engine raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One offending input row. `line` is 1-based; 0 when the issue has no
/// source location (programmatic construction).
struct Issue {
  std::size_t line = 0;
  std::string message;
};

/// Bad user input: malformed rows, self-loops, unknown firms and so on.
/// Carries every offending row, not only the first.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Issue> issues);
  [[nodiscard]] const std::vector<Issue>& issues() const { return issues_; }

 private:
  std::vector<Issue> issues_;
};

/// A caller broke an operation's contract (dimension mismatch, unbalanced
/// input where a balanced one is required, inconsistent vectors).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant failed. Indicates an engine bug or tampered data,
/// never a user error.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace tetris
