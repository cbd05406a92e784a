#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qqe/cli.hpp"
#include "qqe/energetics.hpp"
#include "qqe/ensembles.hpp"
#include "qqe/entanglement.hpp"
#include "qqe/errors.hpp"
#include "qqe/privacy.hpp"
#include "qqe/state_io.hpp"

namespace py = pybind11;
using namespace qqe;

namespace {

Ensemble ensemble_from_pairs(const std::vector<std::pair<double, PureState2Q>>& pairs) {
  std::vector<EnsembleEntry> entries;
  for (const auto& [q, s] : pairs) entries.push_back({q, s});
  return Ensemble(std::move(entries));
}

std::vector<std::pair<double, PureState2Q>> ensemble_pairs(const Ensemble& e) {
  std::vector<std::pair<double, PureState2Q>> out;
  for (const auto& entry : e.entries()) out.emplace_back(entry.weight, entry.state);
  return out;
}

py::object spec_to_python(const StateSpec& s) {
  return std::visit([](const auto& v) { return py::cast(v); }, s);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Energetics and entanglement of two-qubit states";

  static py::exception<Error> error(m, "QqeError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(error)(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  py::enum_<Qubit>(m, "Qubit").value("A", Qubit::A).value("B", Qubit::B);

  py::class_<PureState2Q>(m, "PureState2Q")
      .def(py::init<>())
      .def_static("from_canonical", &PureState2Q::from_canonical, py::arg("p00"), py::arg("p01"), py::arg("p10"),
                  py::arg("p11"), py::arg("phi01") = 0.0, py::arg("phi10") = 0.0, py::arg("phi11") = 0.0)
      .def_static("from_amplitudes", &PureState2Q::from_amplitudes, py::arg("amplitudes"))
      .def_property_readonly("p00", &PureState2Q::p00)
      .def_property_readonly("p01", &PureState2Q::p01)
      .def_property_readonly("p10", &PureState2Q::p10)
      .def_property_readonly("p11", &PureState2Q::p11)
      .def_property_readonly("phi01", &PureState2Q::phi01)
      .def_property_readonly("phi10", &PureState2Q::phi10)
      .def_property_readonly("phi11", &PureState2Q::phi11)
      .def_property_readonly("delta_phi", &PureState2Q::delta_phi)
      .def("energy", &PureState2Q::energy)
      .def("amplitudes", &PureState2Q::amplitudes)
      .def("__repr__", [](const PureState2Q& s) { return "PureState2Q(" + to_json(s).dump() + ")"; });

  py::class_<DensityMatrix2Q>(m, "DensityMatrix2Q")
      .def_static("from_matrix", &DensityMatrix2Q::from_matrix, py::arg("matrix"))
      .def_property_readonly("matrix", &DensityMatrix2Q::matrix);

  py::class_<Ensemble>(m, "Ensemble")
      .def(py::init(&ensemble_from_pairs), py::arg("entries"))
      .def_property_readonly("entries", &ensemble_pairs)
      .def("__len__", &Ensemble::size);

  py::class_<QubitState>(m, "QubitState")
      .def_static("from_matrix", &QubitState::from_matrix)
      .def_property_readonly("matrix", &QubitState::matrix)
      .def_property_readonly("energy", &QubitState::energy)
      .def_property_readonly("mean_field", &QubitState::mean_field);

  py::class_<QubitEnergetics>(m, "QubitEnergetics")
      .def_readonly("E", &QubitEnergetics::E)
      .def_readonly("E_C", &QubitEnergetics::E_C)
      .def_readonly("E_I", &QubitEnergetics::E_I)
      .def_readonly("Ebar_C", &QubitEnergetics::Ebar_C)
      .def_readonly("Ebar_I", &QubitEnergetics::Ebar_I)
      .def_readonly("D", &QubitEnergetics::D)
      .def_readonly("epsilon", &QubitEnergetics::epsilon)
      .def_readonly("phi", &QubitEnergetics::phi)
      .def_readonly("degenerate", &QubitEnergetics::degenerate)
      .def_readonly("phase_defined", &QubitEnergetics::phase_defined);

  py::class_<TradeoffAudit>(m, "TradeoffAudit")
      .def_readonly("Ebar_C_total", &TradeoffAudit::Ebar_C_total)
      .def_readonly("E_C_total", &TradeoffAudit::E_C_total)
      .def_readonly("C2", &TradeoffAudit::C2)
      .def_readonly("residual", &TradeoffAudit::residual)
      .def_readonly("bound_slack", &TradeoffAudit::bound_slack);

  py::class_<ConcurrenceReport>(m, "ConcurrenceReport")
      .def_readonly("lambdas", &ConcurrenceReport::lambdas)
      .def_readonly("concurrence", &ConcurrenceReport::concurrence)
      .def_readonly("scaled_sq", &ConcurrenceReport::scaled_sq);

  py::class_<DeficitSplit>(m, "DeficitSplit")
      .def_readonly("D_Q", &DeficitSplit::D_Q)
      .def_readonly("D_Cl_A", &DeficitSplit::D_Cl_A)
      .def_readonly("D_Cl_B", &DeficitSplit::D_Cl_B)
      .def_readonly("L", &DeficitSplit::L)
      .def_readonly("D_A", &DeficitSplit::D_A)
      .def_readonly("D_B", &DeficitSplit::D_B);

  py::class_<DecompositionResult>(m, "DecompositionResult")
      .def_readonly("value", &DecompositionResult::value)
      .def_readonly("ensemble", &DecompositionResult::ensemble)
      .def_readonly("wootters_C2", &DecompositionResult::wootters_C2)
      .def_readonly("gap", &DecompositionResult::gap)
      .def_readonly("restarts_used", &DecompositionResult::restarts_used)
      .def_readonly("converged", &DecompositionResult::converged);

  py::class_<WoottersDecomposition>(m, "WoottersDecomposition")
      .def_readonly("ensemble", &WoottersDecomposition::ensemble)
      .def_readonly("analytic", &WoottersDecomposition::analytic)
      .def_readonly("max_deviation", &WoottersDecomposition::max_deviation)
      .def_readonly("reconstruction", &WoottersDecomposition::reconstruction);

  py::class_<ProtocolPoint>(m, "ProtocolPoint")
      .def_readonly("E", &ProtocolPoint::E)
      .def_readonly("alice", &ProtocolPoint::alice)
      .def_readonly("eve", &ProtocolPoint::eve)
      .def_readonly("gain", &ProtocolPoint::gain)
      .def_readonly("loss", &ProtocolPoint::loss)
      .def_readonly("eta_E", &ProtocolPoint::eta_E)
      .def_readonly("total_energy", &ProtocolPoint::total_energy)
      .def_readonly("energy_ok", &ProtocolPoint::energy_ok);

  py::enum_<MixtureCase>(m, "MixtureCase")
      .value("symmetric", MixtureCase::Symmetric)
      .value("asymmetric", MixtureCase::Asymmetric);
  py::enum_<AsymmetricAxis>(m, "AsymmetricAxis").value("eprime", AsymmetricAxis::EPrime).value("e", AsymmetricAxis::E);

  // States.
  m.def("density_of_pure", &density_of_pure);
  m.def("density_of_ensemble", &density_of_ensemble);
  m.def("reduced_state", py::overload_cast<const DensityMatrix2Q&, Qubit>(&reduced_state));
  m.def("reduced_state", py::overload_cast<const PureState2Q&, Qubit>(&reduced_state));
  m.def("meter_states", [](const PureState2Q& s, Qubit q) {
    const MeterPair p = meter_states(s, q);
    return py::make_tuple(p.m0, p.m1, p.energy);
  });
  m.def("purity", py::overload_cast<const DensityMatrix2Q&>(&purity));
  m.def("random_pure", &random_pure, py::arg("seed"));
  m.def("random_density", &random_density, py::arg("seed"), py::arg("rank"));

  // Energetics.
  m.def("qubit_energetics", &qubit_energetics);
  m.def("indistinguishability", &indistinguishability);
  m.def("deficit_closed_form", &deficit_closed_form);
  m.def("tradeoff_audit", &tradeoff_audit);
  m.def("efficiency", &efficiency);
  m.def("max_surfaces", [](double ea, double eb) {
    const SurfacePoint p = max_surfaces(ea, eb);
    return py::make_tuple(p.C2_max, p.eta_max);
  });
  m.def(
      "maximize_concurrence_sq",
      [](double ea, double eb, int restarts, std::uint64_t seed) {
        MaximizerOptions opts;
        opts.restarts = restarts;
        opts.seed = seed;
        const MaximizerResult r = maximize_concurrence_sq(ea, eb, opts);
        return py::make_tuple(r.C2, r.state);
      },
      py::arg("E_A"), py::arg("E_B"), py::arg("restarts") = 50, py::arg("seed") = 0);
  m.def("energy_uncertainty_check", &energy_uncertainty_check);

  // Entanglement.
  m.def("spin_flip", py::overload_cast<const DensityMatrix2Q&>(&spin_flip));
  m.def("concurrence_pure", &concurrence_pure);
  m.def("concurrence_mixed", &concurrence_mixed);
  m.def("negativity", &negativity);

  // Ensembles.
  m.def("deficit_split", &deficit_split);
  m.def("constraint_audit", &constraint_audit);
  m.def("average_sq_concurrence", &average_sq_concurrence);
  m.def("hjw_ensemble", &hjw_ensemble, py::arg("rho"), py::arg("isometry"));
  m.def(
      "minimize_avg_sq_concurrence",
      [](const DensityMatrix2Q& rho, int restarts, int m_states, double tol, std::uint64_t seed) {
        DecompositionOptions opts;
        opts.restarts = restarts;
        opts.m = m_states;
        opts.tol = tol;
        opts.seed = seed;
        return minimize_avg_sq_concurrence(rho, opts);
      },
      py::arg("rho"), py::arg("restarts") = 20, py::arg("m") = 4, py::arg("tol") = 1e-6, py::arg("seed") = 0);
  m.def("wootters_optimal_decomposition", &wootters_optimal_decomposition);

  // Protocol.
  m.def("psi_p", &psi_p);
  m.def("symmetric_mixture", &symmetric_mixture);
  m.def("asymmetric_mixture", &asymmetric_mixture);
  m.def("total_energy", &total_energy);
  m.def("evaluate_protocol", &evaluate_protocol, py::arg("ensemble"), py::arg("parameter") = 0.0);
  m.def("sweep_protocol", &sweep_protocol, py::arg("case"), py::arg("grid"), py::arg("axis") = AsymmetricAxis::EPrime);

  // State files.
  m.def("parse_state", [](const std::string& text) { return spec_to_python(parse_state(text)); });
  m.def("read_state_file", [](const std::string& path) { return spec_to_python(read_state_file(path)); });
  m.def("dumps", [](const StateSpec& s) { return to_json(s).dump(2); });

  // Randomized audits, as printed by `qqe verify`.
  m.def(
      "verify_report",
      [](std::uint64_t seed, int trials) {
        cli::RunConfig config;
        config.command = cli::Command::Verify;
        config.seed = seed;
        config.trials = trials;
        std::ostringstream out, err;
        const int code = cli::run(config, out, err);
        return py::make_tuple(code, out.str());
      },
      py::arg("seed") = 42, py::arg("trials") = 1000);
}
