#include "nullwave/error.hpp"

namespace nullwave {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonHermitian: return "NonHermitian";
    case ErrorKind::VarianceMismatch: return "VarianceMismatch";
    case ErrorKind::NotNull: return "NotNull";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::NotAnnihilated: return "NotAnnihilated";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::NotRankOne: return "NotRankOne";
    case ErrorKind::ZeroMatrix: return "ZeroMatrix";
    case ErrorKind::ZeroGradient: return "ZeroGradient";
    case ErrorKind::ChartBreakdown: return "ChartBreakdown";
    case ErrorKind::NotSFR: return "NotSFR";
    case ErrorKind::DegenerateConstantRatio: return "DegenerateConstantRatio";
    case ErrorKind::ZeroTwistor: return "ZeroTwistor";
    case ErrorKind::EtaZero: return "EtaZero";
    case ErrorKind::ZeroPoint: return "ZeroPoint";
    case ErrorKind::EtaDenominatorZero: return "EtaDenominatorZero";
    case ErrorKind::SingularChart: return "SingularChart";
    case ErrorKind::NewtonDiverged: return "NewtonDiverged";
    case ErrorKind::SingularBracket: return "SingularBracket";
    case ErrorKind::PoleAt: return "PoleAt";
    case ErrorKind::ZeroH: return "ZeroH";
    case ErrorKind::NoRootFound: return "NoRootFound";
    case ErrorKind::DegenerateEquation: return "DegenerateEquation";
    case ErrorKind::SingularDenominator: return "SingularDenominator";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace nullwave
