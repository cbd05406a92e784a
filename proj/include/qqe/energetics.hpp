#pragma once

#include <cstdint>

#include "qqe/linalg.hpp"
#include "qqe/qstate.hpp"

namespace qqe {

inline constexpr double kNominalDegeneracyTol = 1e-12;

/// Energy structure of one qubit, in photon units.
struct QubitEnergetics {
  double E = 0.0;        // mean energy <a†a>
  double E_C = 0.0;      // coherent energy |<a>|²
  double E_I = 0.0;      // incoherent energy E − E_C
  double Ebar_C = 0.0;   // nominal coherent energy E(1 − E)
  double Ebar_I = 0.0;   // nominal incoherent energy E²
  double D = 0.0;        // coherent energy deficit Ebar_C − E_C
  Complex epsilon = 0.0; // <a> / sqrt(Ebar_C)
  double phi = 0.0;      // arg ε in [0, 2π)
  bool degenerate = false;  // Ebar_C ≈ 0: ε reported as 0 and D as 0
  bool phase_defined = true;
};

QubitEnergetics qubit_energetics(const QubitState& q);

/// ε^m = <M0|M1> from the meter rewriting. Throws Error{DegenerateEnergy}.
Complex indistinguishability(const PureState2Q& s, Qubit which);

/// |ε^m|² evaluated from the probabilities and Δφ alone.
double indistinguishability_sq_closed_form(const PureState2Q& s, Qubit which);

/// p01 p10 + p00 p11 − 2 sqrt(p00 p01 p10 p11) cos Δφ.
double deficit_closed_form(const PureState2Q& s);

struct TradeoffAudit {
  double Ebar_C_total = 0.0;
  double E_C_total = 0.0;
  double C2 = 0.0;
  double residual = 0.0;    // Ebar_C_total − E_C_total − 2 C²
  double bound_slack = 0.0; // min(Ebar_C^A, Ebar_C^B) − C²
};

/// Throws Error{InvariantViolation} if C² exceeds min(Ebar_C^A, Ebar_C^B) by more than 1e-12.
TradeoffAudit tradeoff_audit(const PureState2Q& s);

/// η = 2C² / Ebar_C_total. Throws Error{ZeroNominalEnergy} when both qubits sit
/// in energy eigenstates.
double efficiency(const PureState2Q& s);

struct SurfacePoint {
  double C2_max = 0.0;
  double eta_max = 0.0;
};

/// Largest scaled square concurrence (and the matching efficiency) compatible
/// with local energies (E_A, E_B). Throws Error{OutOfRange} outside [0, 1]².
SurfacePoint max_surfaces(double E_A, double E_B);

struct MaximizerOptions {
  int restarts = 50;
  double tol = 1e-10;
  int max_iterations = 2000;
  std::uint64_t seed = 0;
};

struct MaximizerResult {
  double C2 = 0.0;
  PureState2Q state;
  int iterations = 0;
};

/// Numerical maximization of C² over pure states whose marginal energies are
/// pinned to (E_A, E_B). The state is parameterized by p11 and the three
/// relative phases; p11 is projected back onto its feasible interval after
/// every step. Serves as an independent check of max_surfaces.
MaximizerResult maximize_concurrence_sq(double E_A, double E_B, const MaximizerOptions& opts = {});

/// (ΔE)² − (|<a>|² + C²) with (ΔE)² = E(1 − E).
double energy_uncertainty_check(const QubitState& q, double C2);

}  // namespace qqe
