#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace xstates {

enum class ErrorKind {
  TraceError,
  NegativePopulation,
  CoherenceBoundViolated,
  NotXShaped,
  NotPositive,
  NotHermitian,
  InfeasibleState,
  InvalidArgument,
  UnnormalizedPhases,
  NotMMM,
  InvalidCoupling,
  NonOrthonormalOperators,
  CompletenessViolated,
  NotPreserving,
  StepRejected,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorKind kind);

// Every failure in the library is reported as an Error carrying its kind, a
// short subject (which bound, which entry, which operator) and the size of
// the violation when one is meaningful.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string subject, double magnitude = 0.0);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& subject() const noexcept { return subject_; }
  double magnitude() const noexcept { return magnitude_; }

 private:
  ErrorKind kind_;
  std::string subject_;
  double magnitude_;
};

}  // namespace xstates
