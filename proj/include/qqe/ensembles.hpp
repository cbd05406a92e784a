#pragma once

#include <cstdint>
#include <vector>

#include "qqe/linalg.hpp"
#include "qqe/qstate.hpp"

namespace qqe {

inline constexpr double kRankTol = 1e-10;
inline constexpr double kWeightFloor = 1e-14;
inline constexpr double kIsometryTol = 1e-10;

/// Decomposition-dependent split of the per-qubit coherent energy deficits.
struct DeficitSplit {
  double D_Q = 0.0;     // Σ q_k C_k²
  double D_Cl_A = 0.0;  // V{<a^A>_k} + V{E^A_k}
  double D_Cl_B = 0.0;
  double L = 0.0;       // D_Cl_A + D_Cl_B
  double D_A = 0.0;     // deficit of the reduced mixture
  double D_B = 0.0;
};

DeficitSplit deficit_split(const Ensemble& e);

/// Classical deficit written as (Σ q_k E_C^{m,k} − E_C^m) + (Σ q_k Ebar_I^{m,k} − Ebar_I^m).
double classical_deficit_difference_form(const Ensemble& e, Qubit which);

/// Σ q_k C_k².
double average_sq_concurrence(const Ensemble& e);

/// Ebar_C − E_C − 2 D_Q − L evaluated on the mixture.
double constraint_audit(const Ensemble& e);

/// Eigenvalues above 1e-10 (descending) and the matching eigenvectors.
struct Spectrum {
  std::vector<double> values;
  std::vector<Vec4> vectors;
  int rank() const { return static_cast<int>(values.size()); }
};

Spectrum spectral_decomposition(const DensityMatrix2Q& rho);

/// sqrt(q_k)|Ψ_k> = Σ_i V_ki sqrt(λ_i)|v_i>. V must be m×r with V†V = 1 and
/// r = rank ρ. Entries with weight below 1e-14 are dropped.
/// Throws Error{RankMismatch} or Error{NotIsometry}.
Ensemble hjw_ensemble(const DensityMatrix2Q& rho, const CMatrix& isometry);

/// First `cols` columns of exp(iH), where H is the m×m Hermitian matrix with
/// diagonal params[0..m) followed by (re, im) pairs of the strict upper triangle.
CMatrix isometry_from_parameters(const std::vector<double>& params, int m, int cols);

struct DecompositionOptions {
  int restarts = 20;
  int m = 4;
  double tol = 1e-6;
  std::uint64_t seed = 0;
  int max_iterations = 500;
  double fd_step = 1e-6;
  double grad_tol = 1e-9;
};

struct DecompositionResult {
  double value = 0.0;        // best Σ q_k C_k² found
  Ensemble ensemble;         // decomposition attaining `value`
  double wootters_C2 = 0.0;  // (ℂ[ρ] / 2)² from the eigenvalue formula
  double gap = 0.0;          // value − wootters_C2
  int restarts_used = 0;
  bool converged = false;    // gap <= tol
};

/// Random-restart quasi-Newton descent of Σ q_k C_k² over m×r isometries.
/// Restart k draws its starting point from an engine seeded with seed + k and
/// the search stops at the first restart that closes the gap to `tol`.
/// A result with converged == false is the OptimizerDidNotConverge outcome.
DecompositionResult minimize_avg_sq_concurrence(const DensityMatrix2Q& rho, const DecompositionOptions& opts = {});

struct WoottersDecomposition {
  Ensemble ensemble;
  bool analytic = true;         // false: numeric minimizer fallback
  double max_deviation = 0.0;   // max_k |ℂ_k − ℂ[ρ]|
  double reconstruction = 0.0;  // ‖Σ q_k |Ψ_k><Ψ_k| − ρ‖_max
};

/// At most four pure states, every one with concurrence ℂ[ρ].
WoottersDecomposition wootters_optimal_decomposition(const DensityMatrix2Q& rho);

}  // namespace qqe
