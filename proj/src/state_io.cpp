#include "qqe/state_io.hpp"

#include <fstream>
#include <sstream>

#include "qqe/errors.hpp"

namespace qqe {

using json = Json;

namespace {

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

double number_field(const json& obj, const std::string& key, const std::string& path, bool required) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) throw Error(Errc::ParseError, "field '" + path + key + "' is missing");
    return 0.0;
  }
  if (!it->is_number()) throw Error(Errc::ParseError, "field '" + path + key + "' must be a number");
  return it->get<double>();
}

template <class F>
auto with_field(const std::string& path, F&& make) {
  try {
    return make();
  } catch (const Error& e) {
    if (e.code() == Errc::InvariantViolation) {
      throw Error(Errc::InvariantViolation, "field '" + path + "': " + e.what());
    }
    throw;
  }
}

PureState2Q pure_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw Error(Errc::ParseError, "field '" + path + "' must be an object");
  const std::string prefix = path.empty() ? "" : path + ".";
  const double p00 = number_field(j, "p00", prefix, true);
  const double p01 = number_field(j, "p01", prefix, true);
  const double p10 = number_field(j, "p10", prefix, true);
  const double p11 = number_field(j, "p11", prefix, true);
  const double phi01 = number_field(j, "phi01", prefix, false);
  const double phi10 = number_field(j, "phi10", prefix, false);
  const double phi11 = number_field(j, "phi11", prefix, false);
  return with_field(path.empty() ? "p00..p11" : path,
                    [&] { return PureState2Q::from_canonical(p00, p01, p10, p11, phi01, phi10, phi11); });
}

DensityMatrix2Q density_from_json(const json& j) {
  const auto it = j.find("entries");
  if (it == j.end()) throw Error(Errc::ParseError, "field 'entries' is missing");
  if (!it->is_array() || it->size() != 16) {
    throw Error(Errc::ParseError, "field 'entries' must be an array of 16 [re, im] pairs");
  }
  Mat4 m;
  for (std::size_t k = 0; k < 16; ++k) {
    const json& pair = (*it)[k];
    const std::string where = "entries[" + std::to_string(k) + "]";
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      throw Error(Errc::ParseError, "field '" + where + "' must be a [re, im] pair of numbers");
    }
    m(static_cast<Eigen::Index>(k / 4), static_cast<Eigen::Index>(k % 4)) = Complex(pair[0].get<double>(), pair[1].get<double>());
  }
  return with_field("entries", [&] { return DensityMatrix2Q::from_matrix(m); });
}

Ensemble ensemble_from_json(const json& j) {
  const auto it = j.find("entries");
  if (it == j.end()) throw Error(Errc::ParseError, "field 'entries' is missing");
  if (!it->is_array()) throw Error(Errc::ParseError, "field 'entries' must be an array");
  std::vector<EnsembleEntry> entries;
  for (std::size_t k = 0; k < it->size(); ++k) {
    const json& item = (*it)[k];
    const std::string where = "entries[" + std::to_string(k) + "]";
    if (!item.is_object()) throw Error(Errc::ParseError, "field '" + where + "' must be an object");
    const double q = number_field(item, "q", where + ".", true);
    const auto pure = item.find("pure");
    if (pure == item.end()) throw Error(Errc::ParseError, "field '" + where + ".pure' is missing");
    entries.push_back({q, pure_from_json(*pure, where + ".pure")});
  }
  return with_field("entries", [&] { return Ensemble(std::move(entries)); });
}

}  // namespace

std::string_view kind_of(const StateSpec& s) {
  switch (s.index()) {
    case 0: return "pure";
    case 1: return "density";
    default: return "ensemble";
  }
}

StateSpec state_from_json(const json& j) {
  if (!j.is_object()) throw Error(Errc::ParseError, "state file must contain a JSON object");
  const auto kind = j.find("kind");
  if (kind == j.end()) throw Error(Errc::ParseError, "field 'kind' is missing");
  if (!kind->is_string()) throw Error(Errc::ParseError, "field 'kind' must be a string");
  const std::string k = kind->get<std::string>();
  if (k == "pure") return pure_from_json(j, "");
  if (k == "density") return density_from_json(j);
  if (k == "ensemble") return ensemble_from_json(j);
  throw Error(Errc::ParseError, "field 'kind' must be one of pure, density, ensemble (got '" + k + "')");
}

StateSpec parse_state(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, line_column(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
  }
  return state_from_json(j);
}

StateSpec read_state_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state(buf.str());
}

json to_json(const PureState2Q& s) {
  return json{{"p00", s.p00()},     {"p01", s.p01()},     {"p10", s.p10()},    {"p11", s.p11()},
              {"phi01", s.phi01()}, {"phi10", s.phi10()}, {"phi11", s.phi11()}};
}

json to_json(const DensityMatrix2Q& rho) {
  json entries = json::array();
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) entries.push_back({rho(i, k).real(), rho(i, k).imag()});
  return json{{"kind", "density"}, {"entries", entries}};
}

json to_json(const Ensemble& e) {
  json entries = json::array();
  for (const auto& entry : e.entries()) entries.push_back({{"q", entry.weight}, {"pure", to_json(entry.state)}});
  return json{{"kind", "ensemble"}, {"entries", entries}};
}

json to_json(const StateSpec& s) {
  return std::visit(
      [](const auto& v) -> json {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, PureState2Q>) {
          json j{{"kind", "pure"}};
          j.update(to_json(v));
          return j;
        } else {
          return to_json(v);
        }
      },
      s);
}

}  // namespace qqe
