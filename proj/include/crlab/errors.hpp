#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace crlab {

struct PsdReport;

/// Malformed or inconsistent arguments (wrong shapes, empty sets, bad indices).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A mathematical precondition does not hold (e.g. a matrix that must be PSD is not).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
  DomainError(const std::string& what, const PsdReport& report);

  const std::optional<double>& min_eigenvalue() const { return min_eigenvalue_; }

 private:
  std::optional<double> min_eigenvalue_;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated internal invariant; indicates a bug rather than bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace crlab
