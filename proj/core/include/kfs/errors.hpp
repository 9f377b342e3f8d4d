#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace kfs {

// Error taxonomy maps 1:1 onto the CLI exit codes: configuration problems
// exit with 2, exhausted enumeration budgets with 3, numerical failures
// (non-convergence, invalid state detected at runtime) with 4.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class BudgetError : public Error {
 public:
  explicit BudgetError(const std::string& msg) : Error(msg) {}
  BudgetError(const std::string& msg, double achievable)
      : Error(msg), achievable_(achievable) {}
  // Best parameter value reachable within budget, when known (e.g. the atlas
  // resolution that was still affordable). NaN when not applicable.
  double achievable() const { return achievable_; }

 private:
  double achievable_ = std::numeric_limits<double>::quiet_NaN();
};

class NumericError : public Error {
 public:
  using Error::Error;
};

// Word-enumeration budget shared by every exhaustive loop. Exceeding it is an
// error, never silent truncation.
struct Budget {
  std::uint64_t max_words = 10'000'000;
};

inline constexpr std::uint64_t kDefaultWordBudget = 10'000'000;

}  // namespace kfs
