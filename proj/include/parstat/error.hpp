#ifndef PARSTAT_ERROR_HPP
#define PARSTAT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace parstat {

// Process exit codes used by the CLI.
enum class exit_code : int {
  success = 0,
  usage = 1,
  check_failed = 2,
  resource = 3,
};

/// Precondition violated by the caller (bad argument, undersized table, ...).
class usage_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure did not reach its tolerance. Carries the best
/// value obtained so far.
class convergence_error : public std::runtime_error {
public:
  convergence_error(const std::string& what, double partial)
      : std::runtime_error(what), partial_(partial) {}

  double partial() const noexcept { return partial_; }

private:
  double partial_;
};

/// An attempt or memory budget was exhausted.
class budget_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An experiment's built-in consistency check did not hold.
class check_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace parstat

#endif // PARSTAT_ERROR_HPP
