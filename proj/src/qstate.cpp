#include "qqe/qstate.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "qqe/errors.hpp"

namespace qqe {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Amplitudes with |c|² at or below this are treated as exactly zero by the gauge fix.
constexpr double kZeroAmplitudeSq = 1e-30;

double wrap_phase(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi || w == 0.0) w = 0.0;  // also folds -0.0
  return w;
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

PureState2Q PureState2Q::from_canonical(double p00, double p01, double p10, double p11,
                                        double phi01, double phi10, double phi11) {
  const std::array<double, 4> p{p00, p01, p10, p11};
  const std::array<double, 4> phi{0.0, phi01, phi10, phi11};
  double sum = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    if (!std::isfinite(p[k]) || !std::isfinite(phi[k])) {
      throw Error(Errc::InvariantViolation, "pure state has a non-finite parameter");
    }
    if (p[k] < 0.0) {
      throw Error(Errc::InvariantViolation, "pure state probability p[" + std::to_string(k) + "] = " + num(p[k]) + " < 0");
    }
    sum += p[k];
  }
  if (std::abs(sum - 1.0) > kNormTol) {
    throw Error(Errc::InvariantViolation, "pure state probabilities sum to " + num(sum));
  }
  if (p00 > kZeroAmplitudeSq) {
    PureState2Q s;
    s.p_ = p;
    for (std::size_t k = 1; k < 4; ++k) s.phi_[k] = p[k] > kZeroAmplitudeSq ? wrap_phase(phi[k]) : 0.0;
    return s;
  }
  // p00 = 0: route through the amplitude form so the gauge moves to the first
  // nonzero amplitude, as for numerically generated states.
  Vec4 v;
  for (std::size_t k = 0; k < 4; ++k) v(static_cast<Eigen::Index>(k)) = std::polar(std::sqrt(p[k]), -phi[k]);
  PureState2Q s = from_amplitudes(v);
  // Keep the caller's probabilities bit-for-bit.
  s.p_ = p;
  return s;
}

PureState2Q PureState2Q::from_amplitudes(const Vec4& v) {
  if (!v.allFinite()) {
    throw Error(Errc::InvariantViolation, "amplitude vector has non-finite entries");
  }
  const double norm = v.norm();
  if (!(norm > 0.0)) {
    throw Error(Errc::InvariantViolation, "amplitude vector is zero");
  }
  const Vec4 u = v / norm;

  Complex gauge = 1.0;
  for (Eigen::Index k = 0; k < 4; ++k) {
    if (std::norm(u(k)) > kZeroAmplitudeSq) {
      gauge = std::conj(u(k)) / std::abs(u(k));
      break;
    }
  }

  PureState2Q s;
  for (Eigen::Index k = 0; k < 4; ++k) {
    const Complex c = u(k) * gauge;
    const auto idx = static_cast<std::size_t>(k);
    s.p_[idx] = std::norm(c);
    s.phi_[idx] = s.p_[idx] > kZeroAmplitudeSq ? wrap_phase(-std::arg(c)) : 0.0;
  }
  // The gauge amplitude is real by construction; pin its phase exactly.
  for (std::size_t k = 0; k < 4; ++k) {
    if (s.p_[k] > kZeroAmplitudeSq) {
      s.phi_[k] = 0.0;
      break;
    }
  }
  s.phi_[0] = 0.0;
  return s;
}

double PureState2Q::energy(Qubit which) const {
  return which == Qubit::A ? p_[2] + p_[3] : p_[1] + p_[3];
}

Vec4 PureState2Q::amplitudes() const {
  Vec4 v;
  for (std::size_t k = 0; k < 4; ++k) {
    v(static_cast<Eigen::Index>(k)) = std::polar(std::sqrt(p_[k]), -phi_[k]);
  }
  return v;
}

DensityMatrix2Q DensityMatrix2Q::from_matrix(const Mat4& m) {
  if (!m.allFinite()) {
    throw Error(Errc::InvariantViolation, "density matrix has non-finite entries");
  }
  const double defect = hermiticity_defect(m);
  if (defect > kHermitianTol) {
    throw Error(Errc::InvariantViolation, "density matrix is not Hermitian (defect " + num(defect) + ")");
  }
  const Mat4 h = 0.5 * (m + m.adjoint());
  const double tr = h.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw Error(Errc::InvariantViolation, "density matrix trace is " + num(tr));
  }
  const EigenSystem es = hermitian_eigensystem(h);
  if (es.values(0) < -kPsdClamp) {
    throw Error(Errc::InvariantViolation, "density matrix has eigenvalue " + num(es.values(0)));
  }
  return DensityMatrix2Q(h);
}

Ensemble::Ensemble(std::vector<EnsembleEntry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) {
    throw Error(Errc::InvariantViolation, "ensemble is empty");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    const double q = entries_[k].weight;
    if (!std::isfinite(q) || !(q > 0.0)) {
      throw Error(Errc::InvariantViolation, "ensemble weight q[" + std::to_string(k) + "] = " + num(q) + " is not positive");
    }
    sum += q;
  }
  if (std::abs(sum - 1.0) > kNormTol) {
    throw Error(Errc::InvariantViolation, "ensemble weights sum to " + num(sum));
  }
}

Ensemble Ensemble::normalized(std::vector<EnsembleEntry> entries, double floor) {
  std::vector<EnsembleEntry> kept;
  kept.reserve(entries.size());
  double sum = 0.0;
  for (auto& e : entries) {
    if (e.weight > floor) {
      sum += e.weight;
      kept.push_back(std::move(e));
    }
  }
  for (auto& e : kept) e.weight /= sum;
  return Ensemble(std::move(kept));
}

QubitState QubitState::from_matrix(const Mat2& m) {
  if (!m.allFinite()) {
    throw Error(Errc::InvariantViolation, "qubit state has non-finite entries");
  }
  if (hermiticity_defect(m) > kHermitianTol) {
    throw Error(Errc::InvariantViolation, "qubit state is not Hermitian");
  }
  const Mat2 h = 0.5 * (m + m.adjoint());
  if (std::abs(h.trace().real() - 1.0) > kHermitianTol) {
    throw Error(Errc::InvariantViolation, "qubit state trace is " + num(h.trace().real()));
  }
  const double e = h(1, 1).real();
  // For 2×2, PSD is equivalent to nonnegative diagonal and determinant.
  if (h(0, 0).real() < -kPsdClamp || e < -kPsdClamp) {
    throw Error(Errc::InvariantViolation, "qubit state has a negative population");
  }
  if (std::norm(h(1, 0)) > e * (1.0 - e) + kNormTol) {
    throw Error(Errc::InvariantViolation, "qubit state coherence exceeds E(1-E)");
  }
  return QubitState(h);
}

DensityMatrix2Q density_of_pure(const PureState2Q& s) {
  const Vec4 v = s.amplitudes();
  return DensityMatrix2Q::from_matrix(v * v.adjoint());
}

DensityMatrix2Q density_of_ensemble(const Ensemble& e) {
  Mat4 rho = Mat4::Zero();
  for (const auto& entry : e.entries()) {
    const Vec4 v = entry.state.amplitudes();
    rho += entry.weight * (v * v.adjoint());
  }
  return DensityMatrix2Q::from_matrix(rho);
}

QubitState reduced_state(const DensityMatrix2Q& rho, Qubit which) {
  const Mat4& m = rho.matrix();
  Mat2 r = Mat2::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        r(i, j) += which == Qubit::A ? m(2 * i + k, 2 * j + k) : m(2 * k + i, 2 * k + j);
      }
    }
  }
  return QubitState::from_matrix(r);
}

QubitState reduced_state(const PureState2Q& s, Qubit which) {
  const Vec4 c = s.amplitudes();
  Mat2 r = Mat2::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        r(i, j) += which == Qubit::A ? c(2 * i + k) * std::conj(c(2 * j + k))
                                     : c(2 * k + i) * std::conj(c(2 * k + j));
      }
    }
  }
  // Diagonal from the probabilities directly so E^A = p10 + p11 holds exactly.
  const double e = s.energy(which);
  r(1, 1) = e;
  r(0, 0) = 1.0 - e;
  return QubitState::from_matrix(r);
}

MeterPair meter_states(const PureState2Q& s, Qubit which) {
  const double e = s.energy(which);
  if (e <= kMeterDegeneracyTol || e >= 1.0 - kMeterDegeneracyTol) {
    throw Error(Errc::DegenerateEnergy, "meter states undefined for E = " + num(e));
  }
  const Vec4 c = s.amplitudes();
  MeterPair out{Vec2::Zero(), Vec2::Zero(), e};
  if (which == Qubit::A) {
    out.m0 << c(0), c(1);
    out.m1 << c(2), c(3);
  } else {
    out.m0 << c(0), c(2);
    out.m1 << c(1), c(3);
  }
  out.m0 /= std::sqrt(1.0 - e);
  out.m1 /= std::sqrt(e);
  return out;
}

Vec4 reconstruct_from_meters(const MeterPair& meters, Qubit which) {
  const Vec2 m0 = std::sqrt(1.0 - meters.energy) * meters.m0;
  const Vec2 m1 = std::sqrt(meters.energy) * meters.m1;
  Vec4 out;
  if (which == Qubit::A) {
    out << m0(0), m0(1), m1(0), m1(1);
  } else {
    out << m0(0), m1(0), m0(1), m1(1);
  }
  return out;
}

double purity(const DensityMatrix2Q& rho) {
  return (rho.matrix() * rho.matrix()).trace().real();
}

double purity(const QubitState& q) {
  return (q.matrix() * q.matrix()).trace().real();
}

Complex StateSampler::complex_gaussian() {
  const double re = normal_(engine_);
  const double im = normal_(engine_);
  return {re, im};
}

double StateSampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double StateSampler::gaussian() { return normal_(engine_); }

PureState2Q StateSampler::pure() {
  Vec4 v;
  for (Eigen::Index k = 0; k < 4; ++k) v(k) = complex_gaussian();
  return PureState2Q::from_amplitudes(v);
}

DensityMatrix2Q StateSampler::density(int rank) {
  if (rank < 1 || rank > 4) {
    throw Error(Errc::OutOfRange, "density rank must be in 1..4, got " + std::to_string(rank));
  }
  CMatrix g(4, rank);
  for (Eigen::Index j = 0; j < rank; ++j)
    for (Eigen::Index i = 0; i < 4; ++i) g(i, j) = complex_gaussian();
  Mat4 m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix2Q::from_matrix(0.5 * (m + m.adjoint()));
}

Mat2 StateSampler::unitary2() {
  Mat2 g;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = complex_gaussian();
  Eigen::HouseholderQR<Mat2> qr(g);
  Mat2 q = qr.householderQ();
  const Mat2 r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 2; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

Ensemble StateSampler::ensemble(int count) {
  std::vector<EnsembleEntry> entries;
  entries.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const double w = uniform(0.05, 1.0);
    entries.push_back({w, pure()});
  }
  return Ensemble::normalized(std::move(entries));
}

PureState2Q random_pure(std::uint64_t seed) { return StateSampler(seed).pure(); }

DensityMatrix2Q random_density(std::uint64_t seed, int rank) { return StateSampler(seed).density(rank); }

}  // namespace qqe
