#pragma once

#include <string_view>
#include <vector>

#include "qqe/qstate.hpp"

namespace qqe {

/// One row of the energy-encoded entanglement distribution sweep.
struct ProtocolPoint {
  double E = 0.0;      // sweep parameter
  double alice = 0.0;  // 2 Σ q_k C_k²
  double eve = 0.0;    // 2 C²[ρ]
  double gain = 0.0;   // alice − eve
  double loss = 0.0;   // 1/2 − alice
  double eta_E = 0.0;  // gain / (gain + loss), 0 when the denominator vanishes
  double total_energy = 0.0;
  bool energy_ok = true;  // total energy within 1e-9 of 1
};

enum class MixtureCase { Symmetric, Asymmetric };

/// Parameter actually swept for the asymmetric case: E′ directly, or the
/// dominant component energy E = (2 − E′)/3.
enum class AsymmetricAxis { EPrime, E };

std::string_view to_string(MixtureCase c);

/// sqrt(1 − p)|00> + sqrt(p)|11>. Throws Error{OutOfRange} outside [0, 1].
PureState2Q psi_p(double p);

/// (1/3){Ψ(E), Ψ(1 − E), Ψ(1/2)} for E in [0, 1/2].
Ensemble symmetric_mixture(double E);

/// {1/2 Ψ(E), 1/6 Ψ(E′), 1/3 Ψ(1/2)} with E = (2 − E′)/3, E′ in [0, 1/2].
Ensemble asymmetric_mixture(double E_prime);

/// Σ q_k (E^A_k + E^B_k).
double total_energy(const Ensemble& e);

ProtocolPoint evaluate_protocol(const Ensemble& e, double parameter = 0.0);

/// `grid` holds values of the swept parameter (E for the symmetric case,
/// E′ or E according to `axis` for the asymmetric one).
std::vector<ProtocolPoint> sweep_protocol(MixtureCase c, const std::vector<double>& grid,
                                          AsymmetricAxis axis = AsymmetricAxis::EPrime);

/// n evenly spaced points from lo to hi inclusive (n >= 2).
std::vector<double> linspace(double lo, double hi, int n);

}  // namespace qqe
