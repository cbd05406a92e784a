#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "json.hpp"
#include "qqe/qstate.hpp"

namespace qqe {

/// Contents of a state file: `kind` is one of "pure", "density", "ensemble".
///
///   {"kind": "pure", "p00": .., "p01": .., "p10": .., "p11": .., "phi01": .., "phi10": .., "phi11": ..}
///   {"kind": "density", "entries": [[re, im], ... 16 pairs, row-major]}
///   {"kind": "ensemble", "entries": [{"q": .., "pure": {p00 .. phi11}}, ...]}
///
/// Phases default to 0 when omitted. Unknown top-level keys are ignored so
/// that CLI reports (which carry extra fields) can be read back as inputs.
using Json = nlohmann::ordered_json;

using StateSpec = std::variant<PureState2Q, DensityMatrix2Q, Ensemble>;

std::string_view kind_of(const StateSpec& s);

/// Syntax problems raise Error{ParseError} with "line L, column C"; missing or
/// mistyped fields raise Error{ParseError} naming the field; values that break
/// a type invariant raise Error{InvariantViolation} prefixed with the field.
StateSpec parse_state(std::string_view text);
StateSpec read_state_file(const std::filesystem::path& path);

Json to_json(const PureState2Q& s);
Json to_json(const DensityMatrix2Q& rho);
Json to_json(const Ensemble& e);
Json to_json(const StateSpec& s);

StateSpec state_from_json(const Json& j);

}  // namespace qqe
