#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qqe {

enum class Errc {
  NotHermitian,
  NoConvergence,
  NotPSD,
  DimensionMismatch,
  InvariantViolation,
  DegenerateEnergy,
  ZeroNominalEnergy,
  NotIsometry,
  RankMismatch,
  OutOfRange,
  ParseError,
  OptimizerDidNotConverge,
  ConstructionFailed,
};

std::string_view to_string(Errc code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to a stable exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace qqe
