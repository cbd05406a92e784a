#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "qqe/energetics.hpp"
#include "qqe/entanglement.hpp"

using namespace qqe;
using fixture::error_code;

namespace {

QubitState qubit(double e, Complex mean_field) {
  Mat2 m;
  m << 1.0 - e, std::conj(mean_field), mean_field, e;
  return QubitState::from_matrix(m);
}

}  // namespace

TEST_CASE("single-qubit energetics") {
  SUBCASE("maximally mixed") {
    const QubitEnergetics q = qubit_energetics(qubit(0.5, 0.0));
    CHECK(q.E == doctest::Approx(0.5));
    CHECK(q.E_C == 0.0);
    CHECK(q.Ebar_C == doctest::Approx(0.25));
    CHECK(q.D == doctest::Approx(0.25));
    CHECK(std::abs(q.epsilon) == 0.0);
    CHECK_FALSE(q.phase_defined);
  }
  SUBCASE("pure |+>") {
    const QubitEnergetics q = qubit_energetics(qubit(0.5, 0.5));
    CHECK(q.E_C == doctest::Approx(0.25));
    CHECK(std::abs(q.D) < 1e-15);
    CHECK(std::abs(q.epsilon) == doctest::Approx(1.0));
    CHECK(q.phi == doctest::Approx(0.0));
  }
  SUBCASE("reduced Bell state has D = C^2") {
    const QubitEnergetics q = qubit_energetics(reduced_state(fixture::bell(), Qubit::A));
    CHECK(q.D == doctest::Approx(0.25));
    CHECK(q.D == doctest::Approx(concurrence_pure(fixture::bell()).scaled_sq));
  }
  SUBCASE("energy eigenstate is flagged degenerate") {
    const QubitEnergetics q = qubit_energetics(qubit(1.0, 0.0));
    CHECK(q.degenerate);
    CHECK(q.D == 0.0);
    CHECK(q.epsilon == Complex(0.0));
  }
  SUBCASE("phase lies in [0, 2pi)") {
    const QubitEnergetics q = qubit_energetics(qubit(0.5, std::polar(0.3, -0.5)));
    CHECK(q.phi == doctest::Approx(2 * std::numbers::pi - 0.5));
  }
  SUBCASE("field invariants on random states") {
    StateSampler rng(21);
    for (int i = 0; i < 500; ++i) {
      const QubitEnergetics q = qubit_energetics(reduced_state(rng.density(1 + i % 4), i % 2 ? Qubit::A : Qubit::B));
      CHECK(std::abs(q.E - q.E_C - q.E_I) <= 1e-12);
      CHECK(std::abs(q.D - (q.Ebar_C - q.E_C)) <= 1e-12);
      CHECK(std::abs(q.epsilon) <= 1.0 + 1e-12);
      CHECK(q.D >= -1e-12);
      CHECK(q.Ebar_I == doctest::Approx(q.E * q.E));
    }
  }
}

TEST_CASE("indistinguishability") {
  CHECK(std::abs(indistinguishability(fixture::bell(), Qubit::A)) < 1e-15);
  CHECK(std::abs(indistinguishability(fixture::bell(), Qubit::B)) < 1e-15);
  CHECK(std::abs(indistinguishability(fixture::plus_plus(), Qubit::A)) == doctest::Approx(1.0));
  CHECK(std::abs(indistinguishability(fixture::plus_plus(), Qubit::B)) == doctest::Approx(1.0));
  CHECK(indistinguishability_sq_closed_form(fixture::plus_plus(), Qubit::A) == doctest::Approx(1.0));
  CHECK(error_code([] { indistinguishability(fixture::ground(), Qubit::A); }) == Errc::DegenerateEnergy);
  CHECK(error_code([] { indistinguishability_sq_closed_form(fixture::ground(), Qubit::B); }) == Errc::DegenerateEnergy);

  StateSampler rng(8);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const PureState2Q s = rng.pure();
    for (Qubit q : {Qubit::A, Qubit::B}) {
      worst = std::max(worst, std::abs(std::norm(indistinguishability(s, q)) - indistinguishability_sq_closed_form(s, q)));
      // The meter overlap is the purity parameter of the reduced state.
      const QubitEnergetics e = qubit_energetics(reduced_state(s, q));
      worst = std::max(worst, std::abs(std::abs(e.epsilon) - std::abs(indistinguishability(s, q))));
    }
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("deficit closed form") {
  CHECK(deficit_closed_form(fixture::bell()) == doctest::Approx(0.25));
  CHECK(std::abs(deficit_closed_form(fixture::plus_plus())) < 1e-15);
  CHECK(std::abs(deficit_closed_form(fixture::plus_zero())) < 1e-15);
  const PureState2Q max_ent = PureState2Q::from_canonical(0.25, 0.25, 0.25, 0.25, 0, 0, std::numbers::pi);
  CHECK(deficit_closed_form(max_ent) == doctest::Approx(0.25));

  StateSampler rng(10);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const PureState2Q s = rng.pure();
    const double da = qubit_energetics(reduced_state(s, Qubit::A)).D;
    const double db = qubit_energetics(reduced_state(s, Qubit::B)).D;
    const double c2 = concurrence_pure(s).scaled_sq;
    worst = std::max({worst, std::abs(da - db), std::abs(da - deficit_closed_form(s)), std::abs(da - c2)});
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("trade-off audit") {
  SUBCASE("Bell") {
    const TradeoffAudit t = tradeoff_audit(fixture::bell());
    CHECK(t.Ebar_C_total == doctest::Approx(0.5));
    CHECK(std::abs(t.E_C_total) < 1e-15);
    CHECK(t.C2 == doctest::Approx(0.25));
    CHECK(std::abs(t.residual) < 1e-15);
  }
  SUBCASE("product of reference states") {
    const TradeoffAudit t = tradeoff_audit(fixture::plus_plus());
    CHECK(t.E_C_total == doctest::Approx(t.Ebar_C_total));
    CHECK(std::abs(t.C2) < 1e-15);
  }
  SUBCASE("random pure states") {
    StateSampler rng(12);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const TradeoffAudit t = tradeoff_audit(rng.pure());
      worst = std::max(worst, std::abs(t.residual));
      CHECK(t.bound_slack >= -1e-12);
    }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("efficiency") {
  CHECK(efficiency(fixture::bell()) == doctest::Approx(1.0));
  for (double p : {0.01, 0.2, 0.5, 0.73, 0.99}) CHECK(efficiency(fixture::psi(p)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(efficiency(fixture::plus_plus())) < 1e-14);
  CHECK(std::abs(efficiency(fixture::plus_zero())) < 1e-14);
  CHECK(error_code([] { efficiency(fixture::ground()); }) == Errc::ZeroNominalEnergy);
  StateSampler rng(13);
  for (int i = 0; i < 1000; ++i) {
    const double eta = efficiency(rng.pure());
    CHECK(eta >= 0.0);
    CHECK(eta <= 1.0 + 1e-10);
  }
}

TEST_CASE("optimal surfaces") {
  const SurfacePoint mid = max_surfaces(0.5, 0.5);
  CHECK(mid.C2_max == doctest::Approx(0.25));
  CHECK(mid.eta_max == doctest::Approx(1.0));

  const SurfacePoint off = max_surfaces(0.5, 0.3);
  CHECK(off.C2_max == doctest::Approx(0.21));
  CHECK(off.eta_max == doctest::Approx(2 * 0.21 / 0.46));
  CHECK(off.eta_max == doctest::Approx(0.9130).epsilon(1e-4));

  for (double e : {0.1, 0.25, 0.4, 0.9}) {
    const SurfacePoint a = max_surfaces(e, 1 - e), b = max_surfaces(e, e);
    CHECK(a.C2_max == doctest::Approx(b.C2_max));
    CHECK(a.eta_max == doctest::Approx(b.eta_max));
    CHECK(std::abs(a.eta_max - 1.0) <= 1e-10);
  }
  CHECK(max_surfaces(0.0, 0.0).eta_max == 0.0);
  CHECK(max_surfaces(0.0, 0.7).C2_max == 0.0);
  CHECK(error_code([] { max_surfaces(-0.1, 0.5); }) == Errc::OutOfRange);
  CHECK(error_code([] { max_surfaces(0.5, 1.5); }) == Errc::OutOfRange);
}

TEST_CASE("numeric maximizer agrees with the closed form and a brute-force scan") {
  for (double ea : {0.0, 0.15, 0.5, 0.3, 0.85}) {
    for (double eb : {0.05, 0.3, 0.5, 0.7, 1.0}) {
      const MaximizerResult r = maximize_concurrence_sq(ea, eb);
      CHECK(std::abs(r.C2 - max_surfaces(ea, eb).C2_max) <= 1e-6);
      CHECK(std::abs(r.C2 - oracle::brute_force_max_c2(ea, eb)) <= 1e-6);
      // The reported state honors the marginals and carries the reported C^2.
      CHECK(std::abs(r.state.energy(Qubit::A) - ea) <= 1e-12);
      CHECK(std::abs(r.state.energy(Qubit::B) - eb) <= 1e-12);
      CHECK(std::abs(concurrence_pure(r.state).scaled_sq - r.C2) <= 1e-12);
    }
  }
  CHECK(error_code([] { maximize_concurrence_sq(1.2, 0.5); }) == Errc::OutOfRange);
}

TEST_CASE("energy uncertainty relation") {
  CHECK(std::abs(energy_uncertainty_check(reduced_state(fixture::bell(), Qubit::A), 0.25)) < 1e-15);
  CHECK(std::abs(energy_uncertainty_check(reduced_state(fixture::plus_zero(), Qubit::A), 0.0)) < 1e-15);
  StateSampler rng(14);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const PureState2Q s = rng.pure();
    const double c2 = concurrence_pure(s).scaled_sq;
    for (Qubit q : {Qubit::A, Qubit::B}) worst = std::max(worst, std::abs(energy_uncertainty_check(reduced_state(s, q), c2)));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("correlation theorem") {
  // Equal purity parameters go together with perfectly (anti-)correlated energies.
  StateSampler rng(15);
  int satisfying = 0, generic = 0;
  for (int i = 0; i < 2000; ++i) {
    PureState2Q s = rng.pure();
    if (i % 3 == 1) {
      const double q = s.p01() + s.p10();
      s = PureState2Q::from_canonical(s.p00(), q / 2, q / 2, s.p11(), s.phi01(), s.phi10(), s.phi11());
    } else if (i % 3 == 2) {
      const double q = s.p00() + s.p11();
      s = PureState2Q::from_canonical(q / 2, s.p01(), s.p10(), q / 2, s.phi01(), s.phi10(), s.phi11());
    }
    const double ea = s.energy(Qubit::A), eb = s.energy(Qubit::B);
    const bool correlated = std::abs(ea - eb) <= 1e-10 || std::abs(ea - (1 - eb)) <= 1e-10;
    const double gap = std::abs(std::abs(indistinguishability(s, Qubit::A)) - std::abs(indistinguishability(s, Qubit::B)));
    CHECK((gap <= 1e-10) == correlated);
    (correlated ? satisfying : generic)++;
  }
  CHECK(satisfying > 500);
  CHECK(generic > 500);
}

TEST_CASE("deficit shape") {
  // Nominal coherent energy peaks at E = 1/2.
  double best_e = 0.0, best = -1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double e = i / 1000.0;
    const double v = qubit_energetics(qubit(e, 0.0)).Ebar_C;
    if (v > best) best = v, best_e = e;
  }
  CHECK(best_e == doctest::Approx(0.5));
  CHECK(best == doctest::Approx(0.25));
  // At fixed E the deficit falls as |ε| grows.
  for (double e : {0.2, 0.5, 0.8}) {
    double previous = 1.0;
    for (int k = 0; k <= 20; ++k) {
      const double eps = k / 20.0;
      const double d = qubit_energetics(qubit(e, eps * std::sqrt(e * (1 - e)))).D;
      CHECK(d < previous + 1e-15);
      previous = d;
    }
  }
}
