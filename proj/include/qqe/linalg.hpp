#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qqe {

using Complex = std::complex<double>;

using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec2 = Eigen::Vector2cd;
using Vec4 = Eigen::Vector4cd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdClamp = 1e-10;
inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kJacobiOffTol = 1e-13;

/// Eigenvalues in ascending order; column i of `vectors` belongs to values[i].
struct EigenSystem {
  RVector values;
  CMatrix vectors;
};

/// Cyclic complex Jacobi diagonalization. Accepts any square matrix with
/// ‖H − H†‖_max ≤ 1e-10; the Hermitian part is what gets diagonalized.
/// Throws Error{NotHermitian} or Error{NoConvergence}.
EigenSystem hermitian_eigensystem(const CMatrix& h);

/// Square root of a Hermitian PSD matrix. Eigenvalues down to −1e-10 are
/// clamped to zero, anything lower is Error{NotPSD}.
CMatrix matrix_sqrt_psd(const CMatrix& h);

/// (A ⊗ B)_{(2i+k)(2j+l)} = A_ij B_kl. Both factors must be 2×2.
Mat4 kron(const CMatrix& a, const CMatrix& b);

/// Largest |H_ij − conj(H_ji)|.
double hermiticity_defect(const CMatrix& h);

double max_abs(const CMatrix& m);

Mat2 pauli_y();

}  // namespace qqe
