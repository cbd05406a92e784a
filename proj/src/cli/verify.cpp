#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>

#include "qqe/cli.hpp"
#include "qqe/energetics.hpp"
#include "qqe/ensembles.hpp"
#include "qqe/entanglement.hpp"
#include "qqe/errors.hpp"
#include "qqe/state_io.hpp"

namespace qqe::cli {

namespace {

struct Outcome {
  double residual;
  bool ok;
};

// Runs `trial` n times; each call returns the residual, whether it passed,
// and (lazily) the instance for the failure report.
class SuiteRunner {
 public:
  SuiteRunner(std::string name, double tol) { result_.name = std::move(name), result_.tol = tol; }

  void record(const Outcome& o, const std::function<std::string()>& instance) {
    ++result_.trials;
    result_.max_residual = std::max(result_.max_residual, o.residual);
    if (o.ok) {
      ++result_.passed;
    } else if (!result_.first_failure) {
      result_.first_failure = instance();
    }
  }

  double tol() const { return result_.tol; }
  SuiteResult take() { return std::move(result_); }

 private:
  SuiteResult result_;
};

std::uint64_t suite_seed(std::uint64_t seed, std::uint64_t index) { return seed + 1000003ULL * (index + 1); }

std::string dump(const StateSpec& s) { return Json(to_json(s)).dump(); }

}  // namespace

std::vector<SuiteResult> run_verification(std::uint64_t seed, int trials, std::optional<double> tol_override) {
  auto tol = [&](double pinned) { return tol_override.value_or(pinned); };
  std::vector<SuiteResult> out;

  {
    SuiteRunner suite("tradeoff", tol(1e-10));
    StateSampler sampler(suite_seed(seed, 0));
    for (int k = 0; k < trials; ++k) {
      const PureState2Q s = sampler.pure();
      const double r = std::abs(tradeoff_audit(s).residual);
      suite.record({r, r <= suite.tol()}, [&] { return dump(s); });
    }
    out.push_back(suite.take());
  }

  {
    SuiteRunner suite("deficit_equality", tol(1e-12));
    StateSampler sampler(suite_seed(seed, 1));
    for (int k = 0; k < trials; ++k) {
      const PureState2Q s = sampler.pure();
      const double da = qubit_energetics(reduced_state(s, Qubit::A)).D;
      const double db = qubit_energetics(reduced_state(s, Qubit::B)).D;
      const double closed = deficit_closed_form(s);
      const double r = std::max({std::abs(da - db), std::abs(da - closed), std::abs(db - closed)});
      suite.record({r, r <= suite.tol()}, [&] { return dump(s); });
    }
    out.push_back(suite.take());
  }

  {
    SuiteRunner suite("deficit_concurrence", tol(1e-12));
    StateSampler sampler(suite_seed(seed, 2));
    for (int k = 0; k < trials; ++k) {
      const PureState2Q s = sampler.pure();
      const double c2 = concurrence_pure(s).scaled_sq;
      const double r = std::abs(qubit_energetics(reduced_state(s, Qubit::A)).D - c2);
      suite.record({r, r <= suite.tol()}, [&] { return dump(s); });
    }
    out.push_back(suite.take());
  }

  {
    // Even trials: generic Haar states, where neither side of the equivalence
    // should hold. Odd trials: states built with E^A = E^B or E^A = 1 − E^B,
    // where |ε_A| = |ε_B| must hold.
    SuiteRunner suite("correlation_theorem", tol(1e-10));
    StateSampler sampler(suite_seed(seed, 3));
    for (int k = 0; k < trials; ++k) {
      PureState2Q s;
      if (k % 2 == 0) {
        s = sampler.pure();
      } else {
        const double a = sampler.uniform(0.05, 0.9);
        const double b = sampler.uniform(0.05, 1.0) * (1.0 - a) * 0.5;
        const double c = 1.0 - a - 2.0 * b;
        const double ph1 = sampler.uniform(0.0, 6.283), ph2 = sampler.uniform(0.0, 6.283), ph3 = sampler.uniform(0.0, 6.283);
        s = (k % 4 == 1) ? PureState2Q::from_canonical(a, b, b, c, ph1, ph2, ph3)   // p01 = p10
                         : PureState2Q::from_canonical(b, a, c, b, ph1, ph2, ph3);  // p00 = p11
      }
      const double ea = s.energy(Qubit::A);
      const double eb = s.energy(Qubit::B);
      const double gap = std::abs(std::abs(indistinguishability(s, Qubit::A)) - std::abs(indistinguishability(s, Qubit::B)));
      const bool energies_match = std::abs(ea - eb) <= suite.tol() || std::abs(ea - (1.0 - eb)) <= suite.tol();
      const bool eps_match = gap <= suite.tol();
      const double residual = energies_match ? gap : 0.0;
      suite.record({residual, energies_match == eps_match}, [&] { return dump(s); });
    }
    out.push_back(suite.take());
  }

  {
    SuiteRunner suite("energy_uncertainty", tol(1e-12));
    StateSampler sampler(suite_seed(seed, 4));
    for (int k = 0; k < trials; ++k) {
      const PureState2Q s = sampler.pure();
      const double c2 = concurrence_pure(s).scaled_sq;
      const double r = std::max(std::abs(energy_uncertainty_check(reduced_state(s, Qubit::A), c2)),
                                std::abs(energy_uncertainty_check(reduced_state(s, Qubit::B), c2)));
      suite.record({r, r <= suite.tol()}, [&] { return dump(s); });
    }
    out.push_back(suite.take());
  }

  {
    SuiteRunner suite("negativity", tol(1e-10));
    StateSampler sampler(suite_seed(seed, 5));
    for (int k = 0; k < trials; ++k) {
      const PureState2Q s = sampler.pure();
      const double n = negativity(density_of_pure(s));
      const double r = std::abs(n * n - concurrence_pure(s).scaled_sq);
      suite.record({r, r <= suite.tol()}, [&] { return dump(s); });
    }
    out.push_back(suite.take());
  }

  {
    SuiteRunner suite("concurrence_routes", tol(1e-9));
    StateSampler sampler(suite_seed(seed, 6));
    for (int k = 0; k < trials; ++k) {
      const PureState2Q s = sampler.pure();
      const double r = std::abs(concurrence_pure(s).concurrence - concurrence_mixed(density_of_pure(s)).concurrence);
      suite.record({r, r <= suite.tol()}, [&] { return dump(s); });
    }
    out.push_back(suite.take());
  }

  {
    SuiteRunner constraint("mixed_constraint", tol(1e-10));
    SuiteRunner forms("deficit_split_forms", tol(1e-12));
    StateSampler sampler(suite_seed(seed, 7));
    for (int k = 0; k < trials; ++k) {
      const int count = 1 + static_cast<int>(sampler.uniform(0.0, 6.0));
      const Ensemble e = sampler.ensemble(std::min(count, 6));
      const double r = std::abs(constraint_audit(e));
      constraint.record({r, r <= constraint.tol()}, [&] { return dump(e); });

      const DeficitSplit split = deficit_split(e);
      const double form_gap = std::max(std::abs(split.D_Cl_A - classical_deficit_difference_form(e, Qubit::A)),
                                       std::abs(split.D_Cl_B - classical_deficit_difference_form(e, Qubit::B)));
      const double negative = std::max({0.0, -split.D_Cl_A, -split.D_Cl_B});
      const double rf = std::max(form_gap, negative);
      forms.record({rf, rf <= forms.tol()}, [&] { return dump(e); });
    }
    out.push_back(constraint.take());
    out.push_back(forms.take());
  }

  {
    // value − C²[ρ] must close to the tolerance and never undercut the
    // eigenvalue formula by more than 1e-8.
    SuiteRunner suite("decomposition_certificate", tol(1e-6));
    StateSampler sampler(suite_seed(seed, 8));
    const int n = std::max(1, trials / 50);
    for (int k = 0; k < n; ++k) {
      const DensityMatrix2Q rho = sampler.density(1 + k % 4);
      DecompositionOptions opts;
      opts.seed = suite_seed(seed, 100 + static_cast<std::uint64_t>(k));
      const DecompositionResult res = minimize_avg_sq_concurrence(rho, opts);
      const double r = std::max(0.0, res.gap);
      const bool ok = res.gap <= suite.tol() && res.value >= res.wootters_C2 - 1e-8;
      suite.record({r, ok}, [&] { return dump(rho); });
    }
    out.push_back(suite.take());
  }

  return out;
}

int run_verify(const RunConfig& config, std::ostream& console, std::ostream&) {
  std::ofstream file;
  if (config.output) {
    file.open(*config.output, std::ios::binary);
    if (!file) throw Error(Errc::ParseError, "cannot open output " + config.output->string());
  }
  std::ostream& out = config.output ? static_cast<std::ostream&>(file) : console;
  const std::vector<SuiteResult> suites = run_verification(config.seed, config.trials, config.tol);
  char line[256];
  std::snprintf(line, sizeof(line), "verify seed=%llu trials=%d\n", static_cast<unsigned long long>(config.seed),
                config.trials);
  out << line;
  bool all = true;
  for (const auto& s : suites) {
    std::snprintf(line, sizeof(line), "%-26s %s %6d/%-6d max_residual=%.3e tol=%.1e\n", s.name.c_str(),
                  s.ok() ? "PASS" : "FAIL", s.passed, s.trials, s.max_residual, s.tol);
    out << line;
    if (!s.ok()) {
      all = false;
      out << "  first failure: " << *s.first_failure << '\n';
    }
  }
  out << (all ? "result: PASS\n" : "result: FAIL\n");
  return all ? kExitOk : kExitVerificationFailure;
}

}  // namespace qqe::cli
