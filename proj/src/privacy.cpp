#include "qqe/privacy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qqe/ensembles.hpp"
#include "qqe/entanglement.hpp"
#include "qqe/errors.hpp"

namespace qqe {

std::string_view to_string(MixtureCase c) {
  return c == MixtureCase::Symmetric ? "symmetric" : "asymmetric";
}

PureState2Q psi_p(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::OutOfRange, "p must lie in [0, 1], got " + std::to_string(p));
  return PureState2Q::from_canonical(1.0 - p, 0.0, 0.0, p);
}

Ensemble symmetric_mixture(double E) {
  if (!(E >= 0.0 && E <= 0.5)) throw Error(Errc::OutOfRange, "symmetric case needs E in [0, 1/2]");
  const double third = 1.0 / 3.0;
  return Ensemble::normalized({{third, psi_p(E)}, {third, psi_p(1.0 - E)}, {third, psi_p(0.5)}});
}

Ensemble asymmetric_mixture(double E_prime) {
  if (!(E_prime >= 0.0 && E_prime <= 0.5)) throw Error(Errc::OutOfRange, "asymmetric case needs E' in [0, 1/2]");
  const double E = (2.0 - E_prime) / 3.0;
  return Ensemble::normalized({{0.5, psi_p(E)}, {1.0 / 6.0, psi_p(E_prime)}, {1.0 / 3.0, psi_p(0.5)}});
}

double total_energy(const Ensemble& e) {
  double sum = 0.0;
  for (const auto& entry : e.entries()) {
    sum += entry.weight * (entry.state.energy(Qubit::A) + entry.state.energy(Qubit::B));
  }
  return sum;
}

ProtocolPoint evaluate_protocol(const Ensemble& e, double parameter) {
  ProtocolPoint out;
  out.E = parameter;
  out.alice = 2.0 * average_sq_concurrence(e);
  out.eve = 2.0 * concurrence_mixed(density_of_ensemble(e)).scaled_sq;
  out.gain = out.alice - out.eve;
  out.loss = 0.5 - out.alice;
  // gain + loss = 1/2 − eve; below rounding level the ratio is reported as 0.
  const double denom = out.gain + out.loss;
  out.eta_E = denom > 1e-12 ? std::clamp(out.gain / denom, 0.0, 1.0) : 0.0;
  out.total_energy = total_energy(e);
  out.energy_ok = std::abs(out.total_energy - 1.0) <= 1e-9;
  return out;
}

std::vector<ProtocolPoint> sweep_protocol(MixtureCase c, const std::vector<double>& grid, AsymmetricAxis axis) {
  std::vector<ProtocolPoint> out;
  out.reserve(grid.size());
  for (const double g : grid) {
    if (c == MixtureCase::Symmetric) {
      out.push_back(evaluate_protocol(symmetric_mixture(g), g));
    } else if (axis == AsymmetricAxis::EPrime) {
      out.push_back(evaluate_protocol(asymmetric_mixture(g), g));
    } else {
      if (!(g >= 0.5 - 1e-15 && g <= 2.0 / 3.0 + 1e-15)) {
        throw Error(Errc::OutOfRange, "asymmetric E must lie in [1/2, 2/3]");
      }
      const double e_prime = std::clamp(2.0 - 3.0 * g, 0.0, 0.5);
      out.push_back(evaluate_protocol(asymmetric_mixture(e_prime), g));
    }
  }
  return out;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) throw Error(Errc::OutOfRange, "grid needs at least two points");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (n - 1);
  out.back() = hi;
  return out;
}

}  // namespace qqe
