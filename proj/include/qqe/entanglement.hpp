#pragma once

#include <array>

#include "qqe/linalg.hpp"
#include "qqe/qstate.hpp"

namespace qqe {

/// Spin-flipped spectrum and the concurrence derived from it.
struct ConcurrenceReport {
  std::array<double, 4> lambdas{};  // descending
  double concurrence = 0.0;         // max(0, λ0 − λ1 − λ2 − λ3)
  double scaled_sq = 0.0;           // concurrence² / 4
};

/// σ_y⊗σ_y.
Mat4 sigma_yy();

/// (σ_y⊗σ_y) ρ* (σ_y⊗σ_y).
Mat4 spin_flip(const Mat4& rho);
Mat4 spin_flip(const DensityMatrix2Q& rho);

/// <ψ*|σ_y⊗σ_y|ψ>-type bilinear form ψ^T (σ_y⊗σ_y) ψ. Its modulus is the
/// concurrence of a normalized ψ.
Complex preconcurrence(const Vec4& psi);

/// 2 sqrt(det ρ^A); the report's lambdas are (ℂ, 0, 0, 0).
ConcurrenceReport concurrence_pure(const PureState2Q& s);

/// Eigenvalue route through the Hermitian product sqrt(ρ) ρ̃ sqrt(ρ).
ConcurrenceReport concurrence_mixed(const DensityMatrix2Q& rho);

/// Partial transpose on qubit B.
Mat4 partial_transpose_b(const Mat4& rho);

/// (‖ρ^{T_B}‖₁ − 1) / 2.
double negativity(const DensityMatrix2Q& rho);

}  // namespace qqe
