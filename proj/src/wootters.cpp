#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "qqe/ensembles.hpp"
#include "qqe/entanglement.hpp"
#include "qqe/errors.hpp"

namespace qqe {

namespace {

// <a|b̃> with |b̃> = (σ_y⊗σ_y)|b*>.
Complex tilde_overlap(const Vec4& a, const Vec4& b) {
  return a.dot(sigma_yy() * b.conjugate());
}

// Takagi factorization τ = Q diag(σ) Q^T of a complex symmetric matrix,
// read off the real symmetric embedding [[Re τ, Im τ], [Im τ, −Re τ]] whose
// spectrum is ±σ. Positive eigenvectors (x, y) give columns q = x + iy with
// τ q* = σ q; the null space is completed by complex Gram-Schmidt.
CMatrix takagi_vectors(const CMatrix& tau) {
  const Eigen::Index r = tau.rows();
  CMatrix embed(2 * r, 2 * r);
  embed.topLeftCorner(r, r) = tau.real().cast<Complex>();
  embed.topRightCorner(r, r) = tau.imag().cast<Complex>();
  embed.bottomLeftCorner(r, r) = tau.imag().cast<Complex>();
  embed.bottomRightCorner(r, r) = -tau.real().cast<Complex>();
  const EigenSystem es = hermitian_eigensystem(embed);

  const double scale = std::max(1.0, es.values.cwiseAbs().maxCoeff());
  const double thr = 1e-12 * scale;

  auto as_complex = [&](Eigen::Index k) -> CVector {
    const Eigen::VectorXd x = es.vectors.col(k).head(r).real();
    const Eigen::VectorXd y = es.vectors.col(k).tail(r).real();
    CVector q(r);
    for (Eigen::Index i = 0; i < r; ++i) q(i) = Complex(x(i), y(i));
    return q;
  };

  std::vector<CVector> basis;
  for (Eigen::Index k = 2 * r - 1; k >= 0 && es.values(k) > thr && static_cast<Eigen::Index>(basis.size()) < r; --k) {
    CVector q = as_complex(k);
    for (const auto& b : basis) q -= b.dot(q) * b;
    q.normalize();
    basis.push_back(q);
  }

  std::vector<CVector> candidates;
  for (Eigen::Index k = 0; k < 2 * r; ++k) {
    if (std::abs(es.values(k)) <= thr) candidates.push_back(as_complex(k));
  }
  while (static_cast<Eigen::Index>(basis.size()) < r) {
    double best_norm = 0.0;
    CVector best;
    for (const auto& c : candidates) {
      CVector q = c;
      for (const auto& b : basis) q -= b.dot(q) * b;
      const double n = q.norm();
      if (n > best_norm) {
        best_norm = n;
        best = q;
      }
    }
    if (best_norm < 1e-6) throw Error(Errc::ConstructionFailed, "Takagi null space is incomplete");
    basis.push_back(best / best_norm);
  }

  CMatrix out(r, r);
  for (Eigen::Index k = 0; k < r; ++k) out.col(k) = basis[static_cast<std::size_t>(k)];
  return out;
}

// Real orthogonal A with (A K Aᵀ)_ii = 0 for a traceless real symmetric K,
// built from Givens rotations that each pin one diagonal entry to zero.
Eigen::Matrix4d zero_diagonal_rotation(Eigen::Matrix4d k) {
  Eigen::Matrix4d a = Eigen::Matrix4d::Identity();
  const double tiny = 1e-15 * std::max(1.0, k.cwiseAbs().maxCoeff());
  std::array<bool, 4> done{};
  for (int step = 0; step < 4; ++step) {
    int i = -1;
    int j = -1;
    for (int t = 0; t < 4; ++t) {
      if (done[static_cast<std::size_t>(t)]) continue;
      if (std::abs(k(t, t)) <= tiny) {
        done[static_cast<std::size_t>(t)] = true;
        continue;
      }
      if (k(t, t) > 0.0 && (i < 0 || k(t, t) > k(i, i))) i = t;
      if (k(t, t) < 0.0 && (j < 0 || k(t, t) < k(j, j))) j = t;
    }
    if (i < 0 || j < 0) break;

    const double kii = k(i, i);
    const double kij = k(i, j);
    const double kjj = k(j, j);
    // Root of kjj t² + 2 kij t + kii = 0; kii > 0 > kjj keeps the discriminant positive.
    const double t = (-kij - std::sqrt(kij * kij - kii * kjj)) / kjj;
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    Eigen::Matrix4d rot = Eigen::Matrix4d::Identity();
    rot(i, i) = c;
    rot(i, j) = s;
    rot(j, i) = -s;
    rot(j, j) = c;
    k = rot * k * rot.transpose();
    a = rot * a;
    k(i, i) = 0.0;
    done[static_cast<std::size_t>(i)] = true;
  }
  return a;
}

// Phases with Σ_j e^{-2iθ_j} λ_j = 0, which exist whenever λ0 <= λ1 + λ2 + λ3.
std::array<double, 4> closing_phases(const std::array<double, 4>& lam) {
  auto safe_acos = [](double x) { return std::acos(std::clamp(x, -1.0, 1.0)); };
  const double chord = std::max(lam[0] - lam[1], lam[2] - lam[3]);

  std::array<Complex, 4> w{};
  w[0] = lam[0];
  const double alpha = lam[0] * lam[1] > 0.0
                           ? safe_acos((chord * chord - lam[0] * lam[0] - lam[1] * lam[1]) / (2.0 * lam[0] * lam[1]))
                           : std::acos(-1.0);
  w[1] = std::polar(lam[1], alpha);
  const Complex rest = -(w[0] + w[1]);
  const double base = std::abs(rest) > 0.0 ? std::arg(rest) : 0.0;
  const double beta = chord * lam[2] > 0.0
                          ? safe_acos((chord * chord + lam[2] * lam[2] - lam[3] * lam[3]) / (2.0 * chord * lam[2]))
                          : 0.0;
  w[2] = std::polar(lam[2], base + beta);
  w[3] = rest - w[2];

  std::array<double, 4> theta{};
  for (std::size_t j = 0; j < 4; ++j) theta[j] = std::abs(w[j]) > 0.0 ? -0.5 * std::arg(w[j]) : 0.0;
  return theta;
}

struct Candidate {
  std::vector<Vec4> states;  // subnormalized
};

Candidate construct(const DensityMatrix2Q& rho) {
  const Spectrum spec = spectral_decomposition(rho);
  const int r = spec.rank();
  if (r == 1) return Candidate{{std::sqrt(spec.values[0]) * spec.vectors[0]}};

  std::vector<Vec4> v(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) {
    v[static_cast<std::size_t>(i)] = std::sqrt(spec.values[static_cast<std::size_t>(i)]) * spec.vectors[static_cast<std::size_t>(i)];
  }
  CMatrix tau(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) tau(i, j) = tilde_overlap(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(j)]);
  tau = 0.5 * (tau + tau.transpose());

  const CMatrix q = takagi_vectors(tau);
  // x_i = Σ_j Q_ji v_j gives <x_i|x̃_j> = σ_i δ_ij; fix each phase so σ_i is real and >= 0.
  std::array<Vec4, 4> x{};
  std::array<double, 4> lam{};
  for (auto& xi : x) xi = Vec4::Zero();
  for (int i = 0; i < r; ++i) {
    Vec4 xi = Vec4::Zero();
    for (int j = 0; j < r; ++j) xi += q(j, i) * v[static_cast<std::size_t>(j)];
    const Complex d = tilde_overlap(xi, xi);
    if (std::abs(d) > 0.0) xi *= std::polar(1.0, 0.5 * std::arg(d));
    x[static_cast<std::size_t>(i)] = xi;
    lam[static_cast<std::size_t>(i)] = std::abs(tilde_overlap(xi, xi));
  }
  std::array<std::size_t, 4> order{0, 1, 2, 3};
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lam[a] > lam[b]; });
  std::array<Vec4, 4> xs{};
  std::array<double, 4> ls{};
  for (std::size_t k = 0; k < 4; ++k) {
    xs[k] = x[order[k]];
    ls[k] = lam[order[k]];
  }

  const double conc = ls[0] - ls[1] - ls[2] - ls[3];
  Candidate out;
  if (conc > 1e-14) {
    std::array<Vec4, 4> y = xs;
    for (std::size_t k = 1; k < 4; ++k) y[k] *= Complex(0.0, 1.0);
    Eigen::Matrix4d kmat = Eigen::Matrix4d::Zero();
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        kmat(i, j) = -conc * y[static_cast<std::size_t>(i)].dot(y[static_cast<std::size_t>(j)]).real();
      }
    }
    kmat(0, 0) += ls[0];
    for (int i = 1; i < 4; ++i) kmat(i, i) -= ls[static_cast<std::size_t>(i)];
    const Eigen::Matrix4d a = zero_diagonal_rotation(kmat);
    for (int i = 0; i < 4; ++i) {
      Vec4 z = Vec4::Zero();
      for (int j = 0; j < 4; ++j) z += a(i, j) * y[static_cast<std::size_t>(j)];
      out.states.push_back(z);
    }
  } else if (r == 2) {
    // ℂ = 0 forces λ0 = λ1: (x0 ± i x1)/sqrt(2) has preconcurrence (λ0 − λ1)/2.
    const double h = 1.0 / std::sqrt(2.0);
    out.states.push_back(h * (xs[0] + Complex(0.0, 1.0) * xs[1]));
    out.states.push_back(h * (xs[0] - Complex(0.0, 1.0) * xs[1]));
  } else {
    const std::array<double, 4> theta = closing_phases(ls);
    static constexpr int kSigns[4][4] = {{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}};
    for (int i = 0; i < 4; ++i) {
      Vec4 z = Vec4::Zero();
      for (int j = 0; j < 4; ++j) {
        z += 0.5 * kSigns[i][j] * std::polar(1.0, theta[static_cast<std::size_t>(j)]) * xs[static_cast<std::size_t>(j)];
      }
      out.states.push_back(z);
    }
  }
  return out;
}

struct Check {
  double deviation;
  double reconstruction;
};

Check check(const Ensemble& e, const DensityMatrix2Q& rho, double target) {
  double dev = 0.0;
  for (const auto& entry : e.entries()) dev = std::max(dev, std::abs(concurrence_pure(entry.state).concurrence - target));
  const double rec = max_abs(density_of_ensemble(e).matrix() - rho.matrix());
  return {dev, rec};
}

}  // namespace

WoottersDecomposition wootters_optimal_decomposition(const DensityMatrix2Q& rho) {
  const double target = concurrence_mixed(rho).concurrence;
  try {
    const Candidate cand = construct(rho);
    std::vector<EnsembleEntry> entries;
    for (const auto& z : cand.states) {
      const double w = z.squaredNorm();
      if (w >= kWeightFloor) entries.push_back({w, PureState2Q::from_amplitudes(z)});
    }
    Ensemble e = Ensemble::normalized(std::move(entries));
    const Check c = check(e, rho, target);
    if (c.deviation <= 1e-8 && c.reconstruction <= 1e-10) {
      return WoottersDecomposition{std::move(e), true, c.deviation, c.reconstruction};
    }
  } catch (const Error&) {
    // fall through to the numeric minimizer
  }

  DecompositionResult numeric = minimize_avg_sq_concurrence(rho);
  const Check c = check(numeric.ensemble, rho, target);
  return WoottersDecomposition{std::move(numeric.ensemble), false, c.deviation, c.reconstruction};
}

}  // namespace qqe
