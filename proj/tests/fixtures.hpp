#pragma once
// Small hand-built states shared by the unit tests.
#include <cmath>

#include "qqe/errors.hpp"
#include "qqe/qstate.hpp"

namespace fixture {

inline qqe::PureState2Q bell() { return qqe::PureState2Q::from_canonical(0.5, 0.0, 0.0, 0.5); }

inline qqe::PureState2Q ground() { return qqe::PureState2Q::from_canonical(1.0, 0.0, 0.0, 0.0); }

/// |+>|+>.
inline qqe::PureState2Q plus_plus() { return qqe::PureState2Q::from_canonical(0.25, 0.25, 0.25, 0.25); }

/// |+>|0>.
inline qqe::PureState2Q plus_zero() { return qqe::PureState2Q::from_canonical(0.5, 0.0, 0.5, 0.0); }

/// sqrt(1 − p)|00> + sqrt(p)|11>.
inline qqe::PureState2Q psi(double p) { return qqe::PureState2Q::from_canonical(1.0 - p, 0.0, 0.0, p); }

/// The three-component mixture (1/3){|00>, |11>, Bell}, built by hand.
inline qqe::Ensemble rho_s0_ensemble() {
  return qqe::Ensemble({{1.0 / 3.0, ground()}, {1.0 / 3.0, psi(1.0)}, {1.0 / 3.0, bell()}});
}

inline qqe::Mat4 rho_s0_matrix() {
  qqe::Mat4 m = qqe::Mat4::Zero();
  m(0, 0) = m(3, 3) = 0.5;
  m(0, 3) = m(3, 0) = 1.0 / 6.0;
  return m;
}

inline qqe::Mat4 diag4(double a, double b, double c, double d) {
  qqe::Mat4 m = qqe::Mat4::Zero();
  m.diagonal() << a, b, c, d;
  return m;
}

template <class F>
qqe::Errc error_code(F&& f) {
  try {
    f();
  } catch (const qqe::Error& e) {
    return e.code();
  }
  throw std::logic_error("no qqe::Error thrown");
}

}  // namespace fixture
