#include "qqe/energetics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "qqe/entanglement.hpp"
#include "qqe/errors.hpp"

namespace qqe {

QubitEnergetics qubit_energetics(const QubitState& q) {
  QubitEnergetics out;
  out.E = q.energy();
  const Complex mean_field = q.mean_field();
  out.E_C = std::norm(mean_field);
  out.E_I = out.E - out.E_C;
  out.Ebar_C = out.E * (1.0 - out.E);
  out.Ebar_I = out.E * out.E;

  if (out.Ebar_C > kNominalDegeneracyTol) {
    out.D = out.Ebar_C - out.E_C;
    out.epsilon = mean_field / std::sqrt(out.Ebar_C);
  } else {
    out.degenerate = true;
    out.D = 0.0;
    out.epsilon = 0.0;
  }

  if (std::abs(out.epsilon) > 0.0) {
    double phi = std::arg(out.epsilon);
    if (phi < 0.0) phi += 2.0 * std::numbers::pi;
    out.phi = phi;
  } else {
    out.phase_defined = false;
    out.phi = 0.0;
  }
  return out;
}

Complex indistinguishability(const PureState2Q& s, Qubit which) {
  const MeterPair meters = meter_states(s, which);
  return meters.m0.dot(meters.m1);  // conjugates the first argument
}

double indistinguishability_sq_closed_form(const PureState2Q& s, Qubit which) {
  const double e = s.energy(which);
  if (e <= kMeterDegeneracyTol || e >= 1.0 - kMeterDegeneracyTol) {
    throw Error(Errc::DegenerateEnergy, "indistinguishability undefined for E = " + std::to_string(e));
  }
  const double cross = 2.0 * std::sqrt(s.p00() * s.p01() * s.p10() * s.p11()) * std::cos(s.delta_phi());
  const double direct = which == Qubit::A ? s.p00() * s.p10() + s.p01() * s.p11()
                                          : s.p00() * s.p01() + s.p10() * s.p11();
  return (direct + cross) / (e * (1.0 - e));
}

double deficit_closed_form(const PureState2Q& s) {
  return s.p01() * s.p10() + s.p00() * s.p11() -
         2.0 * std::sqrt(s.p00() * s.p01() * s.p10() * s.p11()) * std::cos(s.delta_phi());
}

TradeoffAudit tradeoff_audit(const PureState2Q& s) {
  const QubitEnergetics a = qubit_energetics(reduced_state(s, Qubit::A));
  const QubitEnergetics b = qubit_energetics(reduced_state(s, Qubit::B));
  TradeoffAudit out;
  out.Ebar_C_total = a.Ebar_C + b.Ebar_C;
  out.E_C_total = a.E_C + b.E_C;
  out.C2 = concurrence_pure(s).scaled_sq;
  out.residual = out.Ebar_C_total - out.E_C_total - 2.0 * out.C2;
  out.bound_slack = std::min(a.Ebar_C, b.Ebar_C) - out.C2;
  if (out.bound_slack < -1e-12) {
    throw Error(Errc::InvariantViolation,
                "C^2 exceeds the smaller nominal coherent energy by " + std::to_string(-out.bound_slack));
  }
  return out;
}

double efficiency(const PureState2Q& s) {
  const double ea = s.energy(Qubit::A);
  const double eb = s.energy(Qubit::B);
  const double nominal = ea * (1.0 - ea) + eb * (1.0 - eb);
  if (nominal <= kNominalDegeneracyTol) {
    throw Error(Errc::ZeroNominalEnergy, "both qubits are in energy eigenstates");
  }
  return 2.0 * concurrence_pure(s).scaled_sq / nominal;
}

SurfacePoint max_surfaces(double E_A, double E_B) {
  if (!(E_A >= 0.0 && E_A <= 1.0 && E_B >= 0.0 && E_B <= 1.0)) {
    throw Error(Errc::OutOfRange, "local energies must lie in [0, 1]");
  }
  const double na = E_A * (1.0 - E_A);
  const double nb = E_B * (1.0 - E_B);
  SurfacePoint out;
  out.C2_max = std::min(na, nb);
  const double total = na + nb;
  out.eta_max = total > 0.0 ? 2.0 * out.C2_max / total : 0.0;
  return out;
}

namespace {

// x = (p11, φ01, φ10, φ11) with p10 = E_A − p11, p01 = E_B − p11, p00 = 1 − E_A − E_B + p11.
struct MarginalParameterization {
  double E_A;
  double E_B;
  double lo;
  double hi;

  double clamp_p11(double t) const { return std::clamp(t, lo, hi); }

  std::array<double, 4> probabilities(double t) const {
    return {std::max(0.0, 1.0 - E_A - E_B + t), std::max(0.0, E_B - t), std::max(0.0, E_A - t), std::max(0.0, t)};
  }

  double value(const std::array<double, 4>& x) const {
    const auto p = probabilities(clamp_p11(x[0]));
    const Complex c00 = std::sqrt(p[0]);
    const Complex c01 = std::polar(std::sqrt(p[1]), -x[1]);
    const Complex c10 = std::polar(std::sqrt(p[2]), -x[2]);
    const Complex c11 = std::polar(std::sqrt(p[3]), -x[3]);
    return std::norm(c00 * c11 - c01 * c10);
  }
};

}  // namespace

MaximizerResult maximize_concurrence_sq(double E_A, double E_B, const MaximizerOptions& opts) {
  if (!(E_A >= 0.0 && E_A <= 1.0 && E_B >= 0.0 && E_B <= 1.0)) {
    throw Error(Errc::OutOfRange, "local energies must lie in [0, 1]");
  }
  const MarginalParameterization param{E_A, E_B, std::max(0.0, E_A + E_B - 1.0), std::min(E_A, E_B)};
  std::mt19937_64 engine(opts.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  constexpr double kFdStep = 1e-7;
  using Vec = Eigen::Vector4d;
  auto project = [&](Vec x) {
    x(0) = param.clamp_p11(x(0));
    return x;
  };
  auto value = [&](const Vec& x) { return param.value({x(0), x(1), x(2), x(3)}); };
  // Central differences, one-sided across the p11 bounds.
  auto gradient = [&](const Vec& x) {
    Vec g;
    for (int k = 0; k < 4; ++k) {
      Vec up = x, down = x;
      up(k) += kFdStep;
      down(k) -= kFdStep;
      up = project(up);
      down = project(down);
      const double width = up(k) - down(k);
      g(k) = width > 0.0 ? (value(up) - value(down)) / width : 0.0;
    }
    return g;
  };

  Vec best_x = Vec::Zero();
  double best = -1.0;
  int total_iterations = 0;

  for (int restart = 0; restart < opts.restarts; ++restart) {
    Vec x(param.lo + (param.hi - param.lo) * unit(engine), 2.0 * std::numbers::pi * unit(engine),
          2.0 * std::numbers::pi * unit(engine), 2.0 * std::numbers::pi * unit(engine));
    double f = value(x);
    Vec g = gradient(x);
    Eigen::Matrix4d h = Eigen::Matrix4d::Identity();  // inverse Hessian estimate of −f

    for (int it = 0; it < opts.max_iterations; ++it) {
      ++total_iterations;
      // p11 pinned at a bound with the gradient pushing outward: freeze it.
      const bool pinned = (x(0) <= param.lo && g(0) < 0.0) || (x(0) >= param.hi && g(0) > 0.0);
      Vec free_g = g;
      if (pinned) free_g(0) = 0.0;
      if (free_g.norm() < opts.tol) break;

      Vec d = h * free_g;
      if (pinned) d(0) = 0.0;
      if (d.dot(free_g) <= 0.0) {
        h.setIdentity();
        d = free_g;
      }

      double step = 1.0;
      bool accepted = false;
      Vec trial;
      double ft = f;
      while (step > 1e-16) {
        trial = project(x + step * d);
        ft = value(trial);
        if (ft > f) {
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) break;

      const Vec gt = gradient(trial);
      const Vec s = trial - x;
      const Vec y = g - gt;  // gradient change of −f
      const double sy = s.dot(y);
      x = trial;
      f = ft;
      g = gt;
      if (sy > 1e-300) {
        const double rho = 1.0 / sy;
        const Eigen::Matrix4d id = Eigen::Matrix4d::Identity();
        h = (id - rho * s * y.transpose()) * h * (id - rho * y * s.transpose()) + rho * s * s.transpose();
      } else {
        h.setIdentity();
      }
      if (s.norm() < 1e-13) break;
    }

    if (f > best) {
      best = f;
      best_x = x;
    }
  }

  const auto p = param.probabilities(param.clamp_p11(best_x(0)));
  const double sum = p[0] + p[1] + p[2] + p[3];
  MaximizerResult out;
  out.C2 = best;
  out.state = PureState2Q::from_canonical(p[0] / sum, p[1] / sum, p[2] / sum, p[3] / sum, best_x(1), best_x(2), best_x(3));
  out.iterations = total_iterations;
  return out;
}

double energy_uncertainty_check(const QubitState& q, double C2) {
  const double e = q.energy();
  return e * (1.0 - e) - (std::norm(q.mean_field()) + C2);
}

}  // namespace qqe
