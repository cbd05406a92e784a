#include "qqe/errors.hpp"

namespace qqe {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::NotPSD: return "NotPSD";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::InvariantViolation: return "InvariantViolation";
    case Errc::DegenerateEnergy: return "DegenerateEnergy";
    case Errc::ZeroNominalEnergy: return "ZeroNominalEnergy";
    case Errc::NotIsometry: return "NotIsometry";
    case Errc::RankMismatch: return "RankMismatch";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::ParseError: return "ParseError";
    case Errc::OptimizerDidNotConverge: return "OptimizerDidNotConverge";
    case Errc::ConstructionFailed: return "ConstructionFailed";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace qqe
