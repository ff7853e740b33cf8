#ifndef NULLWAVE_ERROR_HPP
#define NULLWAVE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace nullwave {

enum class ErrorKind {
  NonHermitian,
  VarianceMismatch,
  NotNull,
  ZeroVector,
  NotAnnihilated,
  OutOfDomain,
  NotRankOne,
  ZeroMatrix,
  ZeroGradient,
  ChartBreakdown,
  NotSFR,
  DegenerateConstantRatio,
  ZeroTwistor,
  EtaZero,
  ZeroPoint,
  EtaDenominatorZero,
  SingularChart,
  NewtonDiverged,
  SingularBracket,
  PoleAt,
  ZeroH,
  NoRootFound,
  DegenerateEquation,
  SingularDenominator,
  Parse,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace nullwave

#endif
