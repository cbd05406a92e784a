#pragma once

// Test-only reference computations. Nothing here calls into the library's
// eigen-solver or concurrence code.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;

/// Closed-form concurrence of an X-shaped two-qubit density matrix.
inline double x_state_concurrence(const Eigen::Matrix4cd& rho) {
  const double r11 = rho(0, 0).real(), r22 = rho(1, 1).real(), r33 = rho(2, 2).real(), r44 = rho(3, 3).real();
  const double a = std::abs(rho(0, 3)) - std::sqrt(std::max(0.0, r22 * r33));
  const double b = std::abs(rho(1, 2)) - std::sqrt(std::max(0.0, r11 * r44));
  return 2.0 * std::max({0.0, a, b});
}

/// Random X-form density: diagonal from a Dirichlet(1,1,1,1) draw, anti-diagonal
/// coherences uniformly inside their positivity bounds.
inline Eigen::Matrix4cd random_x_state(std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::array<double, 4> d{};
  double sum = 0.0;
  for (auto& v : d) sum += (v = expo(rng));
  for (auto& v : d) v /= sum;
  const Complex z14 = std::polar(std::sqrt(d[0] * d[3]) * unit(rng), 2.0 * std::numbers::pi * unit(rng));
  const Complex z23 = std::polar(std::sqrt(d[1] * d[2]) * unit(rng), 2.0 * std::numbers::pi * unit(rng));
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  for (int k = 0; k < 4; ++k) m(k, k) = d[static_cast<std::size_t>(k)];
  m(0, 3) = z14;
  m(3, 0) = std::conj(z14);
  m(1, 2) = z23;
  m(2, 1) = std::conj(z23);
  return m;
}

/// Brute-force max of |c00 c11 − c01 c10|² over pure states with marginal
/// energies (ea, eb): dense scan of p11 and of the one phase combination that
/// matters, then golden-section refinement in p11 at the best phase.
inline double brute_force_max_c2(double ea, double eb) {
  const double lo = std::max(0.0, ea + eb - 1.0);
  const double hi = std::min(ea, eb);
  auto f = [&](double t, double chi) {
    const double p00 = std::max(0.0, 1.0 - ea - eb + t), p01 = std::max(0.0, eb - t), p10 = std::max(0.0, ea - t);
    const Complex v = std::sqrt(p00 * std::max(0.0, t)) - std::polar(std::sqrt(p01 * p10), chi);
    return std::norm(v);
  };
  double best = 0.0, best_t = lo, best_chi = 0.0;
  constexpr int kT = 2000, kChi = 72;
  for (int i = 0; i <= kT; ++i) {
    const double t = lo + (hi - lo) * i / kT;
    for (int j = 0; j < kChi; ++j) {
      const double chi = 2.0 * std::numbers::pi * j / kChi;
      const double v = f(t, chi);
      if (v > best) best = v, best_t = t, best_chi = chi;
    }
  }
  double a = std::max(lo, best_t - (hi - lo) / kT), b = std::min(hi, best_t + (hi - lo) / kT);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 200; ++it) {
    const double c = b - g * (b - a), d = a + g * (b - a);
    if (f(c, best_chi) > f(d, best_chi)) b = d;
    else a = c;
  }
  return std::max(best, f(0.5 * (a + b), best_chi));
}

/// Hilbert–Schmidt (square Ginibre) states sampled with a different engine and
/// a hand-rolled Box–Muller transform; returns Tr ρ².
inline double independent_ginibre_purity(std::minstd_rand& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto gauss = [&] {
    const double u1 = 1.0 - unit(rng), u2 = unit(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  };
  Eigen::Matrix4cd g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = Complex(gauss(), gauss());
  Eigen::Matrix4cd rho = g * g.adjoint();
  rho /= rho.trace().real();
  return (rho * rho).trace().real();
}

}  // namespace oracle
