#include "qqe/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace qqe {

Mat4 sigma_yy() {
  static const Mat4 yy = kron(pauli_y(), pauli_y());
  return yy;
}

Mat4 spin_flip(const Mat4& rho) {
  const Mat4 yy = sigma_yy();
  return yy * rho.conjugate() * yy;
}

Mat4 spin_flip(const DensityMatrix2Q& rho) { return spin_flip(rho.matrix()); }

Complex preconcurrence(const Vec4& psi) {
  return (psi.transpose() * sigma_yy() * psi)(0, 0);
}

ConcurrenceReport concurrence_pure(const PureState2Q& s) {
  // 2 sqrt(det ρ^A) = 2|c00 c11 − c01 c10|, written in the canonical parameters.
  // Taking the modulus (rather than the root of a determinant) keeps nearly
  // separable states at rounding level and the Bell state exactly at 1.
  const Complex d = std::sqrt(s.p00() * s.p11()) - std::polar(std::sqrt(s.p01() * s.p10()), s.delta_phi());
  ConcurrenceReport out;
  out.concurrence = 2.0 * std::abs(d);
  out.scaled_sq = 0.25 * out.concurrence * out.concurrence;
  out.lambdas = {out.concurrence, 0.0, 0.0, 0.0};
  return out;
}

ConcurrenceReport concurrence_mixed(const DensityMatrix2Q& rho) {
  // With ρ = X X† (columns x_i = sqrt(μ_i) v_i) one has
  //   sqrt(ρ) ρ̃ sqrt(ρ) = A A†,  A = sqrt(ρ) Y sqrt(ρ)*,
  // and the singular values of A equal those of τ = Xᵀ Y X. They are read off
  // the Hermitian dilation [[0, τ], [τ†, 0]], whose spectrum is ±σ_i, so the
  // λ_i never pass through a square root of a rounding-level eigenvalue.
  const EigenSystem es = hermitian_eigensystem(rho.matrix());
  CMatrix x(4, 4);
  for (int k = 0; k < 4; ++k) x.col(k) = std::sqrt(std::max(0.0, es.values(k))) * es.vectors.col(k);
  const CMatrix tau = x.transpose() * sigma_yy() * x;

  CMatrix dilation = CMatrix::Zero(8, 8);
  dilation.topRightCorner(4, 4) = tau;
  dilation.bottomLeftCorner(4, 4) = tau.adjoint();
  const EigenSystem dil = hermitian_eigensystem(dilation);

  ConcurrenceReport out;
  for (int k = 0; k < 4; ++k) out.lambdas[static_cast<std::size_t>(k)] = std::max(0.0, dil.values(7 - k));
  std::sort(out.lambdas.begin(), out.lambdas.end(), std::greater<>());
  const auto& l = out.lambdas;
  out.concurrence = std::max(0.0, l[0] - l[1] - l[2] - l[3]);
  out.scaled_sq = 0.25 * out.concurrence * out.concurrence;
  return out;
}

Mat4 partial_transpose_b(const Mat4& rho) {
  Mat4 out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int b2 = 0; b2 < 2; ++b2) out(2 * a + b, 2 * a2 + b2) = rho(2 * a + b2, 2 * a2 + b);
  return out;
}

double negativity(const DensityMatrix2Q& rho) {
  const EigenSystem es = hermitian_eigensystem(partial_transpose_b(rho.matrix()));
  const double trace_norm = es.values.cwiseAbs().sum();
  return std::max(0.0, 0.5 * (trace_norm - 1.0));
}

}  // namespace qqe
