#include "qqe/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "qqe/energetics.hpp"
#include "qqe/entanglement.hpp"
#include "qqe/errors.hpp"

namespace qqe {

namespace {

struct LocalMoments {
  Complex mean_field;
  double energy;
};

LocalMoments local_moments(const PureState2Q& s, Qubit which) {
  const QubitState q = reduced_state(s, which);
  return {q.mean_field(), q.energy()};
}

double variance_classical_deficit(const Ensemble& e, Qubit which) {
  Complex mean_a = 0.0;
  double mean_abs_a = 0.0;
  double mean_e = 0.0;
  double mean_e2 = 0.0;
  for (const auto& entry : e.entries()) {
    const LocalMoments m = local_moments(entry.state, which);
    mean_a += entry.weight * m.mean_field;
    mean_abs_a += entry.weight * std::norm(m.mean_field);
    mean_e += entry.weight * m.energy;
    mean_e2 += entry.weight * m.energy * m.energy;
  }
  return (mean_abs_a - std::norm(mean_a)) + (mean_e2 - mean_e * mean_e);
}

}  // namespace

double average_sq_concurrence(const Ensemble& e) {
  double sum = 0.0;
  for (const auto& entry : e.entries()) sum += entry.weight * concurrence_pure(entry.state).scaled_sq;
  return sum;
}

DeficitSplit deficit_split(const Ensemble& e) {
  const DensityMatrix2Q rho = density_of_ensemble(e);
  DeficitSplit out;
  out.D_Q = average_sq_concurrence(e);
  out.D_Cl_A = variance_classical_deficit(e, Qubit::A);
  out.D_Cl_B = variance_classical_deficit(e, Qubit::B);
  out.L = out.D_Cl_A + out.D_Cl_B;
  out.D_A = qubit_energetics(reduced_state(rho, Qubit::A)).D;
  out.D_B = qubit_energetics(reduced_state(rho, Qubit::B)).D;
  return out;
}

double classical_deficit_difference_form(const Ensemble& e, Qubit which) {
  const QubitEnergetics mixture = qubit_energetics(reduced_state(density_of_ensemble(e), which));
  double avg_coherent = 0.0;
  double avg_nominal_incoherent = 0.0;
  for (const auto& entry : e.entries()) {
    const QubitEnergetics k = qubit_energetics(reduced_state(entry.state, which));
    avg_coherent += entry.weight * k.E_C;
    avg_nominal_incoherent += entry.weight * k.Ebar_I;
  }
  return (avg_coherent - mixture.E_C) + (avg_nominal_incoherent - mixture.Ebar_I);
}

double constraint_audit(const Ensemble& e) {
  const DensityMatrix2Q rho = density_of_ensemble(e);
  const QubitEnergetics a = qubit_energetics(reduced_state(rho, Qubit::A));
  const QubitEnergetics b = qubit_energetics(reduced_state(rho, Qubit::B));
  const DeficitSplit split = deficit_split(e);
  return (a.Ebar_C + b.Ebar_C) - (a.E_C + b.E_C) - 2.0 * split.D_Q - split.L;
}

Spectrum spectral_decomposition(const DensityMatrix2Q& rho) {
  const EigenSystem es = hermitian_eigensystem(rho.matrix());
  Spectrum out;
  for (Eigen::Index k = 3; k >= 0; --k) {
    if (es.values(k) > kRankTol) {
      out.values.push_back(es.values(k));
      out.vectors.push_back(es.vectors.col(k));
    }
  }
  return out;
}

Ensemble hjw_ensemble(const DensityMatrix2Q& rho, const CMatrix& isometry) {
  const Spectrum spec = spectral_decomposition(rho);
  const int r = spec.rank();
  if (isometry.cols() != r) {
    throw Error(Errc::RankMismatch, "isometry has " + std::to_string(isometry.cols()) + " columns but rank is " +
                                        std::to_string(r));
  }
  if (isometry.rows() < r) {
    throw Error(Errc::NotIsometry, "isometry has fewer rows than columns");
  }
  const double defect = max_abs(isometry.adjoint() * isometry - CMatrix::Identity(r, r));
  if (!(defect <= kIsometryTol)) {
    throw Error(Errc::NotIsometry, "max |V^dagger V - 1| = " + std::to_string(defect));
  }

  std::vector<EnsembleEntry> entries;
  for (Eigen::Index k = 0; k < isometry.rows(); ++k) {
    Vec4 w = Vec4::Zero();
    for (int i = 0; i < r; ++i) {
      w += isometry(k, i) * std::sqrt(spec.values[static_cast<std::size_t>(i)]) * spec.vectors[static_cast<std::size_t>(i)];
    }
    const double q = w.squaredNorm();
    if (q >= kWeightFloor) entries.push_back({q, PureState2Q::from_amplitudes(w)});
  }
  return Ensemble::normalized(std::move(entries));
}

CMatrix isometry_from_parameters(const std::vector<double>& params, int m, int cols) {
  if (static_cast<int>(params.size()) != m * m || cols > m || cols < 1) {
    throw Error(Errc::DimensionMismatch, "isometry parameterization expects m*m parameters and 1 <= cols <= m");
  }
  CMatrix h = CMatrix::Zero(m, m);
  std::size_t idx = 0;
  for (int k = 0; k < m; ++k) h(k, k) = params[idx++];
  for (int k = 0; k < m; ++k) {
    for (int l = k + 1; l < m; ++l) {
      const Complex z(params[idx], params[idx + 1]);
      idx += 2;
      h(k, l) = z;
      h(l, k) = std::conj(z);
    }
  }
  const EigenSystem es = hermitian_eigensystem(h);
  CVector phases(m);
  for (int k = 0; k < m; ++k) phases(k) = std::polar(1.0, es.values(k));
  const CMatrix u = es.vectors * phases.asDiagonal() * es.vectors.adjoint();
  return u.leftCols(cols);
}

namespace {

class DecompositionObjective {
 public:
  DecompositionObjective(const Spectrum& spec, int m) : m_(m), r_(spec.rank()), x_(4, spec.rank()) {
    for (int i = 0; i < r_; ++i) {
      x_.col(i) = std::sqrt(spec.values[static_cast<std::size_t>(i)]) * spec.vectors[static_cast<std::size_t>(i)];
    }
  }

  int dimension() const { return m_ * m_; }

  double operator()(const std::vector<double>& params) const {
    const CMatrix v = isometry_from_parameters(params, m_, r_);
    const CMatrix w = x_ * v.transpose();  // column k is Σ_i V_ki x_i
    double sum = 0.0;
    for (int k = 0; k < m_; ++k) {
      const Vec4 wk = w.col(k);
      const double q = wk.squaredNorm();
      if (q > 1e-300) sum += std::norm(preconcurrence(wk)) / (4.0 * q);
    }
    return sum;
  }

 private:
  int m_;
  int r_;
  CMatrix x_;
};

std::vector<double> fd_gradient(const DecompositionObjective& f, const std::vector<double>& x, double h) {
  std::vector<double> g(x.size());
  std::vector<double> probe = x;
  for (std::size_t k = 0; k < x.size(); ++k) {
    probe[k] = x[k] + h;
    const double up = f(probe);
    probe[k] = x[k] - h;
    const double down = f(probe);
    probe[k] = x[k];
    g[k] = (up - down) / (2.0 * h);
  }
  return g;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

struct LocalMinimum {
  std::vector<double> x;
  double value;
};

// BFGS with an Armijo backtracking line search on a finite-difference gradient.
LocalMinimum descend(const DecompositionObjective& f, std::vector<double> x, const DecompositionOptions& opts) {
  const std::size_t n = x.size();
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  double fx = f(x);
  std::vector<double> g = fd_gradient(f, x, opts.fd_step);

  for (int it = 0; it < opts.max_iterations; ++it) {
    if (std::sqrt(dot(g, g)) < opts.grad_tol) break;

    std::vector<double> dir(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        dir[i] -= hinv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * g[j];
    double slope = dot(g, dir);
    if (slope >= 0.0) {
      hinv.setIdentity();
      for (std::size_t i = 0; i < n; ++i) dir[i] = -g[i];
      slope = -dot(g, g);
    }

    double step = 1.0;
    std::vector<double> trial(n);
    double ft = fx;
    bool accepted = false;
    while (step > 1e-12) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] + step * dir[i];
      ft = f(trial);
      if (ft <= fx + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    const std::vector<double> g_new = fd_gradient(f, trial, opts.fd_step);
    Eigen::VectorXd s(static_cast<Eigen::Index>(n));
    Eigen::VectorXd y(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      s(static_cast<Eigen::Index>(i)) = trial[i] - x[i];
      y(static_cast<Eigen::Index>(i)) = g_new[i] - g[i];
    }
    const double sy = s.dot(y);
    if (sy > 1e-16) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
      hinv = (id - rho * s * y.transpose()) * hinv * (id - rho * y * s.transpose()) + rho * s * s.transpose();
    }
    x = trial;
    g = g_new;
    fx = ft;
  }
  return {std::move(x), fx};
}

}  // namespace

DecompositionResult minimize_avg_sq_concurrence(const DensityMatrix2Q& rho, const DecompositionOptions& opts) {
  if (opts.restarts < 1) throw Error(Errc::OutOfRange, "restarts must be >= 1");
  const Spectrum spec = spectral_decomposition(rho);
  const int r = spec.rank();
  if (opts.m < r) throw Error(Errc::OutOfRange, "m must be at least the rank of rho");

  const double target = concurrence_mixed(rho).scaled_sq;
  const DecompositionObjective objective(spec, opts.m);

  std::vector<double> best_x(static_cast<std::size_t>(objective.dimension()), 0.0);
  double best = objective(best_x);
  int used = 0;
  for (int restart = 0; restart < opts.restarts && best - target > opts.tol; ++restart) {
    ++used;
    std::mt19937_64 engine(opts.seed + static_cast<std::uint64_t>(restart));
    std::uniform_real_distribution<double> angle(-3.14159265358979323846, 3.14159265358979323846);
    std::vector<double> start(static_cast<std::size_t>(objective.dimension()));
    for (auto& v : start) v = angle(engine);
    const LocalMinimum local = descend(objective, std::move(start), opts);
    if (local.value < best) {
      best = local.value;
      best_x = local.x;
    }
  }

  Ensemble argmin = hjw_ensemble(rho, isometry_from_parameters(best_x, opts.m, r));
  // Report the value of the ensemble actually returned, not the objective's copy.
  const double value = average_sq_concurrence(argmin);
  const double gap = value - target;
  return DecompositionResult{value, std::move(argmin), target, gap, used, gap <= opts.tol};
}

}  // namespace qqe
