#include "qqe/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "qqe/errors.hpp"

namespace qqe {

double hermiticity_defect(const CMatrix& h) {
  if (h.rows() != h.cols()) {
    throw Error(Errc::DimensionMismatch, "matrix is not square");
  }
  return max_abs(h - h.adjoint());
}

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

namespace {

double off_diagonal_norm(const CMatrix& a) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (i != j) sum += std::norm(a(i, j));
    }
  }
  return std::sqrt(sum);
}

// Annihilates a(p,q) with the unitary G = diag(1, e^{-iα}) · [[c, s], [-s, c]]
// acting on coordinates (p, q), where a(p,q) = |a(p,q)| e^{iα}.
void jacobi_rotate(CMatrix& a, CMatrix& v, Eigen::Index p, Eigen::Index q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;

  const Complex phase = apq / mag;  // e^{iα}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const Complex gpp = c;
  const Complex gpq = s;
  const Complex gqp = -s * std::conj(phase);
  const Complex gqq = c * std::conj(phase);

  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * gpp + akq * gqp;
    a(k, q) = akp * gpq + akq * gqq;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * gpp + vkq * gqp;
    v(k, q) = vkp * gpq + vkq * gqq;
  }
}

}  // namespace

EigenSystem hermitian_eigensystem(const CMatrix& h) {
  const double defect = hermiticity_defect(h);
  if (!(defect <= kHermitianTol)) {
    throw Error(Errc::NotHermitian, "max |H - H^dagger| = " + std::to_string(defect));
  }
  if (!h.allFinite()) {
    throw Error(Errc::NotHermitian, "matrix has non-finite entries");
  }

  const Eigen::Index n = h.rows();
  CMatrix a = 0.5 * (h + h.adjoint());
  CMatrix v = CMatrix::Identity(n, n);
  const double scale = std::max(1.0, a.norm());

  int sweep = 0;
  while (off_diagonal_norm(a) > kJacobiOffTol * scale) {
    if (++sweep > kJacobiMaxSweeps) {
      throw Error(Errc::NoConvergence, "Jacobi sweeps exceeded " + std::to_string(kJacobiMaxSweeps));
    }
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        jacobi_rotate(a, v, p, q);
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() < a(j, j).real(); });

  EigenSystem out{RVector(n), CMatrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto src = order[static_cast<std::size_t>(k)];
    out.values(k) = a(src, src).real();
    out.vectors.col(k) = v.col(src);
  }
  return out;
}

CMatrix matrix_sqrt_psd(const CMatrix& h) {
  const EigenSystem es = hermitian_eigensystem(h);
  if (es.values.size() > 0 && es.values(0) < -kPsdClamp) {
    throw Error(Errc::NotPSD, "smallest eigenvalue " + std::to_string(es.values(0)));
  }
  const RVector roots = es.values.cwiseMax(0.0).cwiseSqrt();
  return es.vectors * roots.cast<Complex>().asDiagonal() * es.vectors.adjoint();
}

Mat4 kron(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != 2 || a.cols() != 2 || b.rows() != 2 || b.cols() != 2) {
    throw Error(Errc::DimensionMismatch, "kron expects two 2x2 factors");
  }
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

Mat2 pauli_y() {
  Mat2 y;
  y << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return y;
}

}  // namespace qqe
