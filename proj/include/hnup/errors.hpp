#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hnup {

/// Process exit codes used by the command-line tool.
enum class ExitCode : int {
  ok = 0,
  usage = 1,
  budget = 2,
  invariant = 3,
  io = 4,
};

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, ExitCode code = ExitCode::usage)
      : std::runtime_error(what), code_(code) {}
  ExitCode exit_code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

/// Bad argument or violated precondition.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what) : Error(what, ExitCode::usage) {}
};

class Unsupported : public Error {
 public:
  explicit Unsupported(const std::string& what) : Error(what, ExitCode::usage) {}
};

class DuplicatePoints : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class BudgetError : public Error {
 public:
  explicit BudgetError(const std::string& what) : Error(what, ExitCode::budget) {}
};

/// Exact rationals were dropped at this depth; only log-space values remain.
class ExactBudgetExceeded : public BudgetError {
 public:
  ExactBudgetExceeded(int depth, std::size_t bits)
      : BudgetError("exact arithmetic dropped at depth " + std::to_string(depth) +
                    " (bit budget " + std::to_string(bits) + ")"),
        depth_(depth) {}
  int depth() const noexcept { return depth_; }

 private:
  int depth_;
};

class EnumerationBudget : public BudgetError {
 public:
  using BudgetError::BudgetError;
};

class InvariantViolation : public Error {
 public:
  explicit InvariantViolation(const std::string& what) : Error(what, ExitCode::invariant) {}
};

class ContainmentFailure : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

/// Product annulus with R_k <= sqrt(2) r_k: the inner disk swallows the gap.
class DegenerateAnnulus : public Error {
 public:
  explicit DegenerateAnnulus(const std::string& what) : Error(what, ExitCode::invariant) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what, ExitCode::io) {}
};

}  // namespace hnup
