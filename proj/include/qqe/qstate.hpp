#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "qqe/linalg.hpp"

namespace qqe {

// Basis ordering is {|00>, |01>, |10>, |11>} everywhere; the first index is qubit A.

enum class Qubit { A, B };

inline constexpr double kNormTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kMeterDegeneracyTol = 1e-12;

/// Pure two-qubit state in the canonical form
///   sqrt(p00)|00> + sqrt(p01) e^{-i phi01}|01> + sqrt(p10) e^{-i phi10}|10> + sqrt(p11) e^{-i phi11}|11>.
///
/// The global phase is fixed by making the first nonzero amplitude (in basis
/// order) real and positive; with p00 > 0 this is the usual phi00 = 0 gauge.
/// Phases are stored in [0, 2π) and are 0 wherever the probability vanishes.
class PureState2Q {
 public:
  /// |00>.
  PureState2Q() = default;

  /// Validates p_xy >= 0 and Σp = 1 within 1e-12. Throws Error{InvariantViolation}.
  static PureState2Q from_canonical(double p00, double p01, double p10, double p11,
                                    double phi01 = 0.0, double phi10 = 0.0, double phi11 = 0.0);

  /// Normalizes `v` and gauge-fixes it. Throws on a zero or non-finite vector.
  static PureState2Q from_amplitudes(const Vec4& v);

  /// p(x, y) for x, y in {0, 1}.
  double p(int x, int y) const { return p_[static_cast<std::size_t>(2 * x + y)]; }
  double phi(int x, int y) const { return phi_[static_cast<std::size_t>(2 * x + y)]; }

  double p00() const { return p_[0]; }
  double p01() const { return p_[1]; }
  double p10() const { return p_[2]; }
  double p11() const { return p_[3]; }
  double phi01() const { return phi_[1]; }
  double phi10() const { return phi_[2]; }
  double phi11() const { return phi_[3]; }

  /// φ11 − φ10 − φ01.
  double delta_phi() const { return phi_[3] - phi_[2] - phi_[1]; }

  /// E^A = p10 + p11, E^B = p01 + p11.
  double energy(Qubit which) const;

  Vec4 amplitudes() const;

 private:
  std::array<double, 4> p_{1.0, 0.0, 0.0, 0.0};
  std::array<double, 4> phi_{};
};

/// c_xy = sqrt(p_xy) e^{-i φ_xy}.
inline Vec4 amplitudes(const PureState2Q& s) { return s.amplitudes(); }

/// 4×4 Hermitian, PSD, unit-trace operator.
class DensityMatrix2Q {
 public:
  /// Validates the invariants (Hermitian 1e-10, trace 1e-12, eigenvalues >= −1e-10)
  /// and stores the Hermitian part. Throws Error{InvariantViolation}.
  static DensityMatrix2Q from_matrix(const Mat4& m);

  const Mat4& matrix() const { return mat_; }
  Complex operator()(int i, int j) const { return mat_(i, j); }

 private:
  explicit DensityMatrix2Q(const Mat4& m) : mat_(m) {}
  Mat4 mat_;
};

struct EnsembleEntry {
  double weight;
  PureState2Q state;
};

/// Weighted pure-state mixture; the states need not be orthogonal.
class Ensemble {
 public:
  /// Requires every weight > 0 and Σ weights = 1 within 1e-12.
  explicit Ensemble(std::vector<EnsembleEntry> entries);

  /// Divides the weights by their sum first; useful for numerically
  /// generated decompositions. Entries with weight below `floor` are dropped.
  static Ensemble normalized(std::vector<EnsembleEntry> entries, double floor = 0.0);

  const std::vector<EnsembleEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<EnsembleEntry> entries_;
};

/// Reduced single-qubit state together with E = <1|ρ|1> and <a> = <1|ρ|0>.
class QubitState {
 public:
  /// Validates Hermiticity, trace, PSD and |<a>|² <= E(1−E) + 1e-12.
  static QubitState from_matrix(const Mat2& m);

  const Mat2& matrix() const { return mat_; }
  double energy() const { return mat_(1, 1).real(); }
  Complex mean_field() const { return mat_(1, 0); }

 private:
  explicit QubitState(const Mat2& m) : mat_(m) {}
  Mat2 mat_;
};

/// Partner-qubit states correlated with the energy eigenstates of the system
/// qubit: |Ψ> = sqrt(1−E)|0, M0> + sqrt(E)|1, M1> (system factor written first).
struct MeterPair {
  Vec2 m0;
  Vec2 m1;
  double energy;
};

DensityMatrix2Q density_of_pure(const PureState2Q& s);
DensityMatrix2Q density_of_ensemble(const Ensemble& e);

QubitState reduced_state(const DensityMatrix2Q& rho, Qubit which);
QubitState reduced_state(const PureState2Q& s, Qubit which);

/// Throws Error{DegenerateEnergy} when E or 1 − E is within 1e-12 of zero.
MeterPair meter_states(const PureState2Q& s, Qubit which);

/// Rebuilds the two-qubit amplitude vector from a meter pair.
Vec4 reconstruct_from_meters(const MeterPair& meters, Qubit which);

double purity(const DensityMatrix2Q& rho);
double purity(const QubitState& q);

/// Seeded source of random states. Owns its engine; not meant to be shared
/// between threads.
class StateSampler {
 public:
  explicit StateSampler(std::uint64_t seed) : engine_(seed) {}

  /// Haar-random pure state (normalized complex Gaussian vector).
  PureState2Q pure();

  /// ρ = G G† / Tr(G G†) with G a 4×rank complex Gaussian matrix.
  DensityMatrix2Q density(int rank);

  /// Haar-random 2×2 unitary.
  Mat2 unitary2();

  /// Random ensemble of `count` Haar states with uniform-random weights.
  Ensemble ensemble(int count);

  double uniform(double lo = 0.0, double hi = 1.0);
  double gaussian();
  std::mt19937_64& engine() { return engine_; }

 private:
  Complex complex_gaussian();

  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

PureState2Q random_pure(std::uint64_t seed);
DensityMatrix2Q random_density(std::uint64_t seed, int rank);

}  // namespace qqe
