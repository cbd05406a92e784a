import math

import numpy as np
import pytest

import qqe


def bell():
    return qqe.PureState2Q.from_canonical(0.5, 0.0, 0.0, 0.5)


def test_bell_energetics():
    s = bell()
    assert np.allclose(s.amplitudes(), [1 / math.sqrt(2), 0, 0, 1 / math.sqrt(2)])
    a = qqe.qubit_energetics(qqe.reduced_state(s, qqe.Qubit.A))
    assert a.D == pytest.approx(0.25)
    assert 2 * qqe.concurrence_pure(s).scaled_sq == 0.5
    assert qqe.efficiency(s) == pytest.approx(1.0)
    assert abs(qqe.tradeoff_audit(s).residual) < 1e-15


def test_density_matrices_are_numpy():
    rho = qqe.density_of_pure(bell())
    m = rho.matrix
    assert m.shape == (4, 4)
    assert m.dtype == np.complex128
    assert qqe.concurrence_mixed(rho).concurrence == pytest.approx(1.0)
    assert qqe.negativity(rho) == pytest.approx(0.5)
    assert qqe.purity(qqe.DensityMatrix2Q.from_matrix(np.eye(4) / 4)) == pytest.approx(0.25)


def test_symmetric_mixture():
    e = qqe.symmetric_mixture(0.0)
    assert len(e) == 3
    split = qqe.deficit_split(e)
    assert split.D_Q == pytest.approx(1 / 12)
    assert split.L == pytest.approx(1 / 3)
    p = qqe.evaluate_protocol(e)
    assert p.alice == pytest.approx(1 / 6)
    assert p.eve == pytest.approx(1 / 18)
    assert p.eta_E == pytest.approx(0.25)


def test_decomposition():
    rho = qqe.density_of_ensemble(qqe.symmetric_mixture(0.0))
    r = qqe.minimize_avg_sq_concurrence(rho)
    assert r.converged
    assert r.value == pytest.approx(1 / 36, rel=1e-5)
    w = qqe.wootters_optimal_decomposition(rho)
    assert w.analytic
    for q, s in w.ensemble.entries:
        assert qqe.concurrence_pure(s).concurrence == pytest.approx(1 / 3, abs=1e-8)


def test_surfaces_and_sweep():
    c2, eta = qqe.max_surfaces(0.5, 0.3)
    assert c2 == pytest.approx(0.21)
    assert eta == pytest.approx(2 * 0.21 / 0.46)
    numeric, state = qqe.maximize_concurrence_sq(0.5, 0.3)
    assert numeric == pytest.approx(0.21, abs=1e-6)
    points = qqe.sweep_protocol(qqe.MixtureCase.asymmetric, [0.0, 0.25, 0.5])
    assert all(p.alice >= p.eve - 1e-10 for p in points)


def test_state_files_round_trip():
    s = qqe.parse_state('{"kind": "pure", "p00": 0.5, "p01": 0, "p10": 0, "p11": 0.5}')
    assert isinstance(s, qqe.PureState2Q)
    again = qqe.parse_state(qqe.dumps(s))
    assert np.allclose(again.amplitudes(), s.amplitudes())


def test_errors_carry_codes():
    with pytest.raises(qqe.QqeError) as info:
        qqe.PureState2Q.from_canonical(0.7, 0.0, 0.0, 0.7)
    assert info.value.code == "InvariantViolation"
    with pytest.raises(qqe.QqeError) as info:
        qqe.parse_state("{ broken")
    assert info.value.code == "ParseError"
    with pytest.raises(ValueError):
        qqe.efficiency(qqe.PureState2Q())


def test_verify_is_deterministic():
    code, report = qqe.verify_report(seed=3, trials=20)
    assert code == 0
    assert report == qqe.verify_report(seed=3, trials=20)[1]
    assert "result: PASS" in report
