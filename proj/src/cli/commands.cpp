#include <cstdio>
#include <fstream>
#include <sstream>
#include <variant>

#include "qqe/cli.hpp"
#include "qqe/energetics.hpp"
#include "qqe/ensembles.hpp"
#include "qqe/entanglement.hpp"
#include "qqe/errors.hpp"
#include "qqe/state_io.hpp"

namespace qqe::cli {

namespace {

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json energetics_json(const QubitEnergetics& q) {
  return Json{{"E", q.E},           {"E_C", q.E_C},         {"E_I", q.E_I},
              {"Ebar_C", q.Ebar_C}, {"Ebar_I", q.Ebar_I},   {"D", q.D},
              {"epsilon", complex_json(q.epsilon)},          {"phi", q.phi},
              {"degenerate", q.degenerate},                  {"phase_defined", q.phase_defined}};
}

Json concurrence_json(const ConcurrenceReport& c) {
  return Json{{"lambdas", c.lambdas}, {"concurrence", c.concurrence}, {"scaled_sq", c.scaled_sq}};
}

Json split_json(const DeficitSplit& s) {
  return Json{{"D_Q", s.D_Q}, {"D_Cl_A", s.D_Cl_A}, {"D_Cl_B", s.D_Cl_B},
              {"L", s.L},     {"D_A", s.D_A},       {"D_B", s.D_B}};
}

DensityMatrix2Q density_of(const StateSpec& s) {
  return std::visit(
      [](const auto& v) -> DensityMatrix2Q {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PureState2Q>) return density_of_pure(v);
        else if constexpr (std::is_same_v<T, Ensemble>) return density_of_ensemble(v);
        else return v;
      },
      s);
}

// Writes to --output when given, otherwise to `out`.
class Sink {
 public:
  Sink(const RunConfig& config, std::ostream& out) : out_(&out) {
    if (config.output) {
      file_.open(*config.output, std::ios::binary);
      if (!file_) throw Error(Errc::ParseError, "cannot open output " + config.output->string());
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

StateSpec load_input(const RunConfig& config) {
  if (!config.input_path) throw Error(Errc::ParseError, "an input state file is required");
  return read_state_file(*config.input_path);
}

}  // namespace

std::string csv_number(double x) {
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

void validate(const RunConfig& config) {
  if (config.grid_n < 2) throw Error(Errc::OutOfRange, "--grid-n must be >= 2");
  if (config.trials < 1) throw Error(Errc::OutOfRange, "--trials must be >= 1");
  if (config.tol && !(*config.tol > 0.0)) throw Error(Errc::OutOfRange, "--tol must be > 0");
  if (config.m < 1) throw Error(Errc::OutOfRange, "--m must be >= 1");
  if (config.restarts < 1) throw Error(Errc::OutOfRange, "--restarts must be >= 1");
}

int run_analyze(const RunConfig& config, std::ostream& out, std::ostream&) {
  const StateSpec state = load_input(config);
  const DensityMatrix2Q rho = density_of(state);

  const QubitEnergetics a = qubit_energetics(reduced_state(rho, Qubit::A));
  const QubitEnergetics b = qubit_energetics(reduced_state(rho, Qubit::B));
  const double nominal = a.Ebar_C + b.Ebar_C;

  Json analysis;
  analysis["qubits"] = Json{{"A", energetics_json(a)}, {"B", energetics_json(b)}};
  analysis["purity"] = purity(rho);
  analysis["negativity"] = negativity(rho);

  if (const auto* pure = std::get_if<PureState2Q>(&state)) {
    // Pure inputs: use the exact reduced states so E^A = p10 + p11 holds bit-for-bit.
    analysis["qubits"] = Json{{"A", energetics_json(qubit_energetics(reduced_state(*pure, Qubit::A)))},
                              {"B", energetics_json(qubit_energetics(reduced_state(*pure, Qubit::B)))}};
    const ConcurrenceReport c = concurrence_pure(*pure);
    analysis["concurrence"] = concurrence_json(c);
    const TradeoffAudit t = tradeoff_audit(*pure);
    analysis["tradeoff"] = Json{{"Ebar_C_total", t.Ebar_C_total}, {"E_C_total", t.E_C_total},
                                {"C2", t.C2}, {"residual", t.residual}, {"bound_slack", t.bound_slack}};
    analysis["deficit_closed_form"] = deficit_closed_form(*pure);
    analysis["efficiency"] = nominal > kNominalDegeneracyTol ? Json(efficiency(*pure)) : Json(nullptr);
  } else {
    const ConcurrenceReport c = concurrence_mixed(rho);
    analysis["concurrence"] = concurrence_json(c);
    if (const auto* ens = std::get_if<Ensemble>(&state)) {
      const DeficitSplit split = deficit_split(*ens);
      analysis["deficit_split"] = split_json(split);
      analysis["constraint_residual"] = constraint_audit(*ens);
      analysis["efficiency"] = nominal > kNominalDegeneracyTol ? Json(2.0 * split.D_Q / nominal) : Json(nullptr);
    }
    // Efficiency of the least favourable decomposition, 2 C²[ρ] / Ebar_C.
    analysis["efficiency_min"] = nominal > kNominalDegeneracyTol ? Json(2.0 * c.scaled_sq / nominal) : Json(nullptr);
  }

  Json report = to_json(state);
  report["analysis"] = analysis;
  Sink sink(config, out);
  sink.stream() << report.dump(2) << '\n';
  return kExitOk;
}

int run_surface(const RunConfig& config, std::ostream& out, std::ostream&) {
  const std::vector<double> grid = linspace(0.0, 1.0, config.grid_n);
  Sink sink(config, out);
  std::ostream& os = sink.stream();
  if (config.format == OutputFormat::Csv) {
    os << "E_A,E_B,C2_max,eta_max\n";
    for (const double ea : grid) {
      for (const double eb : grid) {
        const SurfacePoint p = max_surfaces(ea, eb);
        os << csv_number(ea) << ',' << csv_number(eb) << ',' << csv_number(p.C2_max) << ',' << csv_number(p.eta_max)
           << '\n';
      }
    }
  } else {
    Json rows = Json::array();
    for (const double ea : grid) {
      for (const double eb : grid) {
        const SurfacePoint p = max_surfaces(ea, eb);
        rows.push_back(Json{{"E_A", ea}, {"E_B", eb}, {"C2_max", p.C2_max}, {"eta_max", p.eta_max}});
      }
    }
    os << Json{{"kind", "surface"}, {"rows", rows}}.dump(2) << '\n';
  }
  return kExitOk;
}

int run_privacy(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<double> grid;
  if (config.mixture_case == MixtureCase::Asymmetric && config.axis == AsymmetricAxis::E) {
    grid = linspace(0.5, 2.0 / 3.0, config.grid_n);
  } else {
    grid = linspace(0.0, 0.5, config.grid_n);
  }
  const std::vector<ProtocolPoint> points = sweep_protocol(config.mixture_case, grid, config.axis);
  for (const auto& p : points) {
    if (!p.energy_ok) err << "warning: total energy " << p.total_energy << " at param " << p.E << '\n';
  }

  const std::string name(to_string(config.mixture_case));
  Sink sink(config, out);
  std::ostream& os = sink.stream();
  if (config.format == OutputFormat::Csv) {
    os << "case,param,alice,eve,gain,loss,eta_E\n";
    for (const auto& p : points) {
      os << name << ',' << csv_number(p.E) << ',' << csv_number(p.alice) << ',' << csv_number(p.eve) << ','
         << csv_number(p.gain) << ',' << csv_number(p.loss) << ',' << csv_number(p.eta_E) << '\n';
    }
  } else {
    Json rows = Json::array();
    for (const auto& p : points) {
      rows.push_back(Json{{"case", name}, {"param", p.E},   {"alice", p.alice}, {"eve", p.eve},
                          {"gain", p.gain}, {"loss", p.loss}, {"eta_E", p.eta_E}});
    }
    os << Json{{"kind", "privacy"}, {"rows", rows}}.dump(2) << '\n';
  }
  return kExitOk;
}

int run_decompose(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const StateSpec state = load_input(config);
  if (std::holds_alternative<PureState2Q>(state)) {
    throw Error(Errc::ParseError, "decompose expects a density or ensemble file");
  }
  const DensityMatrix2Q rho = density_of(state);

  DecompositionOptions opts;
  opts.m = config.m;
  opts.restarts = config.restarts;
  opts.seed = config.seed;
  if (config.tol) opts.tol = *config.tol;
  const DecompositionResult result = minimize_avg_sq_concurrence(rho, opts);
  const WoottersDecomposition w = wootters_optimal_decomposition(rho);

  Json report = to_json(result.ensemble);
  report["decomposition"] = Json{{"value", result.value},
                                 {"wootters_C2", result.wootters_C2},
                                 {"gap", result.gap},
                                 {"tol", opts.tol},
                                 {"restarts_used", result.restarts_used},
                                 {"converged", result.converged}};
  Json wj = to_json(w.ensemble);
  wj["analytic"] = w.analytic;
  wj["max_concurrence_deviation"] = w.max_deviation;
  report["wootters_decomposition"] = wj;

  Sink sink(config, out);
  sink.stream() << report.dump(2) << '\n';
  if (!result.converged) {
    err << "OptimizerDidNotConverge: gap " << result.gap << " exceeds tol " << opts.tol << '\n';
    return kExitVerificationFailure;
  }
  return kExitOk;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    switch (config.command) {
      case Command::Analyze: return run_analyze(config, out, err);
      case Command::Surface: return run_surface(config, out, err);
      case Command::Privacy: return run_privacy(config, out, err);
      case Command::Decompose: return run_decompose(config, out, err);
      case Command::Verify: return run_verify(config, out, err);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace qqe::cli
