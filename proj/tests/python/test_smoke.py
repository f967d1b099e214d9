"""Smoke tests for the Python bindings on the worked 3x3 example."""

import numpy as np
import pytest

import tgideal

A = np.array([[2.0, -1.0, 1.0], [-1.0, 2.0, -1.0], [1.0, -1.0, 2.0]])
X = np.diag(np.diag(A))
P = np.array([[0.0], [0.0], [1.0]])
M = 2.5 * np.eye(3)


def make_d():
    return tgideal.Decomposition.cf_splitting(3, [2])


def test_mu_star_and_worst_case():
    d = make_d()
    assert tgideal.mu_star(A, X, d) == pytest.approx(2.0, abs=1e-12)
    assert tgideal.worst_case_mu(A, X, d, P) == pytest.approx(2.0, abs=1e-10)


def test_ideal_interpolation_forms():
    d = make_d()
    direct = tgideal.ideal_interpolation(A, d, method="direct")
    via_s = tgideal.ideal_interpolation(A, d, method="via_s")
    expected = np.array([[-1.0 / 3.0], [1.0 / 3.0], [1.0]])
    np.testing.assert_allclose(direct, expected, atol=1e-12)
    np.testing.assert_allclose(via_s, expected, atol=1e-12)
    assert tgideal.range_equiv_p0(A, d, direct)


def test_classification_flags():
    d = make_d()
    rep = tgideal.classify(A, X, d, P)
    assert (rep.in_p0, rep.in_p1, rep.in_p2, rep.in_pstar) == (False, True, True, True)
    assert rep.lambda_min_ax == pytest.approx(0.5, abs=1e-12)

    star = tgideal.classify(A, X, d, tgideal.ideal_interpolation(A, d))
    assert star.in_p0 and star.in_pstar


def test_two_grid_experiment():
    d = make_d()
    f = np.ones(3)
    for p in (P, tgideal.ideal_interpolation(A, d)):
        trace = tgideal.tg_solve(A, M, p, f, reduction=1e-6, absolute=True)
        assert trace.converged
        assert trace.iterations == 15
        assert len(trace.residual_norms) == 16


def test_convergence_identity():
    d = make_d()
    etg = tgideal.e_tg(A, M, P)
    norm = tgideal.a_norm(etg, A)
    ktg = tgideal.k_tg(A, M, P)
    assert norm == pytest.approx(1.0 - 1.0 / ktg, abs=1e-10)
    k = tgideal.k_measure(A, M, P @ np.array([[0.0, 0.0, 1.0]]))
    assert k >= ktg - 1e-12
    delta, omega = tgideal.smoother_constants(A, M)
    assert delta == pytest.approx(1.0, abs=1e-12)
    assert omega == pytest.approx(1.6, abs=1e-12)


def test_angles_and_p_sharp():
    d = make_d()
    sharp = tgideal.p_sharp(A, M, d)
    lo, hi = tgideal.theta_angle(A, M, d, sharp)
    assert hi <= 1e-8
    lo_p, hi_p = tgideal.theta_angle(A, M, d, P)
    assert np.cos(hi_p) ** 2 == pytest.approx(2.0 / 3.0, abs=1e-10)


def test_epsilon_smoother_identity():
    m = tgideal.epsilon_smoother(A, 0.25)
    np.testing.assert_allclose(m + m.T - A, 0.5 * A, atol=1e-14)


def test_matrix_market_round_trip(tmp_path):
    path = str(tmp_path / "a.mtx")
    tgideal.write_matrix_market(path, A)
    np.testing.assert_array_equal(tgideal.read_matrix_market(path), A)


def test_input_validation_maps_to_value_error():
    d = make_d()
    with pytest.raises(ValueError):
        tgideal.mu_star(np.array([[1.0, 2.0], [2.0, 1.0]]), np.eye(2), d)
    with pytest.raises(ValueError):
        tgideal.Decomposition.cf_splitting(3, [0, 1, 2])


def test_verify_suite_hook():
    checks = tgideal.run_suite("example21")
    assert checks and all(ok for _, ok, _ in checks)
    solve_checks = [details for name, _, details in checks if name == "solve_p"]
    assert solve_checks and "15 iterations (expected 15)" in solve_checks[0]
