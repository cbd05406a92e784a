#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "qqe/energetics.hpp"
#include "qqe/ensembles.hpp"
#include "qqe/entanglement.hpp"

using namespace qqe;
using fixture::error_code;

namespace {

double reconstruction_error(const Ensemble& e, const DensityMatrix2Q& rho) {
  return max_abs(density_of_ensemble(e).matrix() - rho.matrix());
}

// Random m×r isometry from the QR factor of a complex Gaussian matrix.
CMatrix random_isometry(StateSampler& rng, int m, int r) {
  CMatrix g(m, r);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < r; ++j) g(i, j) = Complex(rng.gaussian(), rng.gaussian());
  Eigen::HouseholderQR<CMatrix> qr(g);
  return qr.householderQ() * CMatrix::Identity(m, r);
}

}  // namespace

TEST_CASE("deficit split") {
  SUBCASE("singleton ensemble") {
    StateSampler rng(41);
    for (int i = 0; i < 100; ++i) {
      const PureState2Q s = rng.pure();
      const DeficitSplit d = deficit_split(Ensemble({{1.0, s}}));
      CHECK(std::abs(d.D_Cl_A) <= 1e-12);
      CHECK(std::abs(d.D_Cl_B) <= 1e-12);
      CHECK(std::abs(d.D_Q - concurrence_pure(s).scaled_sq) <= 1e-15);
    }
  }
  SUBCASE("three-component symmetric mixture at E = 0") {
    const DeficitSplit d = deficit_split(fixture::rho_s0_ensemble());
    CHECK(d.D_Q == doctest::Approx(1.0 / 12.0));
    CHECK(d.D_Cl_A == doctest::Approx(1.0 / 6.0));
    CHECK(d.D_Cl_B == doctest::Approx(1.0 / 6.0));
    CHECK(d.L == doctest::Approx(1.0 / 3.0));
    CHECK(d.D_A == doctest::Approx(0.25));
    CHECK(d.D_B == doctest::Approx(0.25));
  }
  SUBCASE("Bell states sharing local energies and mean fields") {
    const PureState2Q minus = PureState2Q::from_canonical(0.5, 0, 0, 0.5, 0, 0, std::numbers::pi);
    const DeficitSplit d = deficit_split(Ensemble({{0.5, fixture::bell()}, {0.5, minus}}));
    CHECK(std::abs(d.D_Cl_A) < 1e-15);
    CHECK(std::abs(d.D_Cl_B) < 1e-15);
  }
  SUBCASE("random ensembles") {
    StateSampler rng(42);
    double worst_form = 0.0, worst_total = 0.0;
    for (int i = 0; i < 2000; ++i) {
      const Ensemble e = rng.ensemble(1 + i % 6);
      const DeficitSplit d = deficit_split(e);
      CHECK(d.D_Cl_A >= -1e-12);
      CHECK(d.D_Cl_B >= -1e-12);
      CHECK(d.L == doctest::Approx(d.D_Cl_A + d.D_Cl_B));
      worst_form = std::max({worst_form, std::abs(d.D_Cl_A - classical_deficit_difference_form(e, Qubit::A)),
                             std::abs(d.D_Cl_B - classical_deficit_difference_form(e, Qubit::B))});
      worst_total = std::max({worst_total, std::abs(d.D_A - d.D_Q - d.D_Cl_A), std::abs(d.D_B - d.D_Q - d.D_Cl_B)});
    }
    CHECK(worst_form <= 1e-12);
    CHECK(worst_total <= 1e-12);
  }
}

TEST_CASE("mixed-state constraint") {
  CHECK(std::abs(constraint_audit(Ensemble({{1.0, fixture::bell()}}))) < 1e-15);
  CHECK(std::abs(constraint_audit(fixture::rho_s0_ensemble())) < 1e-15);
  StateSampler rng(43);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) worst = std::max(worst, std::abs(constraint_audit(rng.ensemble(1 + i % 6))));
  CHECK(worst <= 1e-10);
}

TEST_CASE("spectral decomposition") {
  const Spectrum s = spectral_decomposition(DensityMatrix2Q::from_matrix(fixture::diag4(0.1, 0.0, 0.6, 0.3)));
  REQUIRE(s.rank() == 3);
  CHECK(s.values[0] == doctest::Approx(0.6));
  CHECK(s.values[2] == doctest::Approx(0.1));
  CHECK(std::abs(s.vectors[0](2)) == doctest::Approx(1.0));
}

TEST_CASE("HJW ensembles") {
  SUBCASE("identity isometry gives the eigen-decomposition") {
    const DensityMatrix2Q rho = DensityMatrix2Q::from_matrix(fixture::diag4(0.5, 0, 0, 0.5));
    const Ensemble e = hjw_ensemble(rho, CMatrix::Identity(2, 2));
    REQUIRE(e.size() == 2);
    for (const auto& entry : e.entries()) {
      CHECK(entry.weight == doctest::Approx(0.5));
      CHECK(concurrence_pure(entry.state).concurrence < 1e-15);
    }
  }
  SUBCASE("Hadamard mixing of the dephased Bell state") {
    const DensityMatrix2Q rho = DensityMatrix2Q::from_matrix(fixture::diag4(0.5, 0, 0, 0.5));
    CMatrix h(2, 2);
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    const Ensemble e = hjw_ensemble(rho, h);
    REQUIRE(e.size() == 2);
    for (const auto& entry : e.entries()) {
      CHECK(entry.weight == doctest::Approx(0.5));
      CHECK(entry.state.p00() == doctest::Approx(0.5));
      CHECK(entry.state.p11() == doctest::Approx(0.5));
      CHECK(concurrence_pure(entry.state).concurrence == doctest::Approx(1.0));
    }
    const double phase_gap = std::abs(e.entries()[0].state.phi11() - e.entries()[1].state.phi11());
    CHECK(phase_gap == doctest::Approx(std::numbers::pi));
  }
  SUBCASE("random isometries reconstruct rho") {
    StateSampler rng(44);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
      const DensityMatrix2Q rho = rng.density(1 + i % 4);
      const int r = spectral_decomposition(rho).rank();
      const Ensemble e = hjw_ensemble(rho, random_isometry(rng, r + i % 3, r));
      worst = std::max(worst, reconstruction_error(e, rho));
      CHECK(average_sq_concurrence(e) >= concurrence_mixed(rho).scaled_sq - 1e-8);
    }
    CHECK(worst <= 1e-10);
  }
  SUBCASE("totals do not depend on the decomposition") {
    StateSampler rng(45);
    for (int i = 0; i < 200; ++i) {
      const DensityMatrix2Q rho = rng.density(2 + i % 3);
      const int r = spectral_decomposition(rho).rank();
      const DeficitSplit a = deficit_split(hjw_ensemble(rho, random_isometry(rng, 4, r)));
      const DeficitSplit b = deficit_split(hjw_ensemble(rho, random_isometry(rng, r, r)));
      CHECK(std::abs((a.D_Q + a.D_Cl_A) - (b.D_Q + b.D_Cl_A)) <= 1e-10);
      CHECK(std::abs((a.D_Q + a.D_Cl_B) - (b.D_Q + b.D_Cl_B)) <= 1e-10);
    }
  }
  SUBCASE("errors") {
    const DensityMatrix2Q rho = DensityMatrix2Q::from_matrix(fixture::diag4(0.5, 0, 0, 0.5));
    CHECK(error_code([&] { hjw_ensemble(rho, CMatrix::Identity(3, 3)); }) == Errc::RankMismatch);
    CMatrix bad(2, 2);
    bad << 1, 1, 0, 1;
    CHECK(error_code([&] { hjw_ensemble(rho, bad); }) == Errc::NotIsometry);
  }
}

TEST_CASE("isometry parameterization") {
  StateSampler rng(46);
  for (int i = 0; i < 100; ++i) {
    const int m = 1 + i % 4;
    std::vector<double> params(static_cast<std::size_t>(m * m));
    for (double& p : params) p = rng.gaussian();
    const CMatrix v = isometry_from_parameters(params, m, std::max(1, m - i % 2));
    CHECK(max_abs(v.adjoint() * v - CMatrix::Identity(v.cols(), v.cols())) <= 1e-12);
  }
  const std::vector<double> zeros(16, 0.0);
  CHECK(max_abs(isometry_from_parameters(zeros, 4, 2) - CMatrix::Identity(4, 2)) < 1e-15);
}

TEST_CASE("decomposition minimizer") {
  SUBCASE("pure input") {
    const DensityMatrix2Q rho = density_of_pure(fixture::bell());
    const DecompositionResult r = minimize_avg_sq_concurrence(rho);
    CHECK(r.value == doctest::Approx(0.25));
    CHECK(r.ensemble.size() == 1);
    CHECK(r.converged);
  }
  SUBCASE("separable diagonal mixture") {
    const DecompositionResult r = minimize_avg_sq_concurrence(DensityMatrix2Q::from_matrix(fixture::diag4(0.5, 0, 0, 0.5)));
    CHECK(r.value <= 1e-8);
    CHECK(r.converged);
  }
  SUBCASE("three-component symmetric mixture at E = 0") {
    const DensityMatrix2Q rho = DensityMatrix2Q::from_matrix(fixture::rho_s0_matrix());
    const DecompositionResult r = minimize_avg_sq_concurrence(rho);
    const double oracle_c2 = std::pow(oracle::x_state_concurrence(fixture::rho_s0_matrix()) / 2, 2);
    CHECK(r.wootters_C2 == doctest::Approx(oracle_c2));
    CHECK(r.value == doctest::Approx(1.0 / 36.0).epsilon(1e-5));
    CHECK(r.gap <= 1e-6);
    CHECK(r.value < average_sq_concurrence(fixture::rho_s0_ensemble()));
    CHECK(reconstruction_error(r.ensemble, rho) <= 1e-10);
  }
  SUBCASE("random densities") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
      const DensityMatrix2Q rho = random_density(1000 + seed, 1 + static_cast<int>(seed % 4));
      DecompositionOptions opts;
      opts.seed = seed;
      const DecompositionResult r = minimize_avg_sq_concurrence(rho, opts);
      CHECK(r.gap <= 1e-6);
      CHECK(r.value >= r.wootters_C2 - 1e-8);
      CHECK(std::abs(average_sq_concurrence(r.ensemble) - r.value) <= 1e-15);
      CHECK(reconstruction_error(r.ensemble, rho) <= 1e-10);
      CHECK(r.restarts_used <= opts.restarts);
    }
  }
  SUBCASE("a starved search reports failure instead of hiding it") {
    DecompositionOptions opts;
    opts.restarts = 1;
    opts.max_iterations = 1;
    opts.tol = 1e-15;
    const DecompositionResult r = minimize_avg_sq_concurrence(DensityMatrix2Q::from_matrix(fixture::rho_s0_matrix()), opts);
    CHECK_FALSE(r.converged);
    CHECK(r.gap > opts.tol);
    CHECK(r.gap == doctest::Approx(r.value - r.wootters_C2));
  }
}

TEST_CASE("Wootters decomposition") {
  SUBCASE("Bell projector") {
    const WoottersDecomposition w = wootters_optimal_decomposition(density_of_pure(fixture::bell()));
    REQUIRE(w.ensemble.size() == 1);
    CHECK(concurrence_pure(w.ensemble.entries()[0].state).concurrence == doctest::Approx(1.0));
  }
  SUBCASE("dephased Bell state gives separable components") {
    const DensityMatrix2Q rho = DensityMatrix2Q::from_matrix(fixture::diag4(0.5, 0, 0, 0.5));
    const WoottersDecomposition w = wootters_optimal_decomposition(rho);
    CHECK(w.ensemble.size() == 2);
    for (const auto& entry : w.ensemble.entries()) CHECK(concurrence_pure(entry.state).concurrence <= 1e-8);
    CHECK(reconstruction_error(w.ensemble, rho) <= 1e-10);
  }
  SUBCASE("three-component symmetric mixture at E = 0") {
    const DensityMatrix2Q rho = DensityMatrix2Q::from_matrix(fixture::rho_s0_matrix());
    const WoottersDecomposition w = wootters_optimal_decomposition(rho);
    CHECK(w.ensemble.size() <= 4);
    for (const auto& entry : w.ensemble.entries())
      CHECK(std::abs(concurrence_pure(entry.state).concurrence - 1.0 / 3.0) <= 1e-8);
    CHECK(reconstruction_error(w.ensemble, rho) <= 1e-10);
    CHECK(w.analytic);
  }
  SUBCASE("random densities of every rank") {
    int analytic = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const DensityMatrix2Q rho = random_density(5000 + seed, 1 + static_cast<int>(seed % 4));
      const double target = concurrence_mixed(rho).concurrence;
      const WoottersDecomposition w = wootters_optimal_decomposition(rho);
      CHECK(w.ensemble.size() <= 4);
      CHECK(reconstruction_error(w.ensemble, rho) <= 1e-10);
      if (w.analytic) {
        ++analytic;
        for (const auto& entry : w.ensemble.entries())
          CHECK(std::abs(concurrence_pure(entry.state).concurrence - target) <= 1e-8);
      }
      CHECK(std::abs(w.max_deviation) >= 0.0);
    }
    CHECK(analytic == 200);
  }
  SUBCASE("separable full-rank mixtures") {
    for (double p : {0.0, 0.1, 1.0 / 3.0}) {
      const Mat4 bell = density_of_pure(fixture::bell()).matrix();
      const DensityMatrix2Q rho = DensityMatrix2Q::from_matrix(p * bell + (1 - p) * 0.25 * Mat4::Identity());
      const WoottersDecomposition w = wootters_optimal_decomposition(rho);
      CHECK(w.analytic);
      for (const auto& entry : w.ensemble.entries()) CHECK(concurrence_pure(entry.state).concurrence <= 1e-8);
      CHECK(reconstruction_error(w.ensemble, rho) <= 1e-10);
    }
  }
}
