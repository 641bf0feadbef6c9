#pragma once

#include <stdexcept>
#include <string>

namespace twoslope {

/// Bad input: parameter out of range, inadmissible geometry, unknown index.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A requested accuracy could not be certified. Carries the best bound that
/// was achievable within the budget.
class CertificationError : public std::runtime_error {
 public:
  CertificationError(const std::string& what, double achieved_bound)
      : std::runtime_error(what), achieved_bound_(achieved_bound) {}

  double achieved_bound() const noexcept { return achieved_bound_; }

 private:
  double achieved_bound_;
};

/// The independent quadrature did not converge within its subdivision budget.
class OracleFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace twoslope
