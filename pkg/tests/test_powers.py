"""Principal fractional powers: algorithm agreement, oracles, and edge cases.

scipy.linalg.fractional_matrix_power serves as the independent oracle for
matrices with spectrum away from the branch cut; the hand-derived closed
forms cover the triangular and singular cases scipy does not normalize.
"""

import numpy as np
import pytest
from scipy.linalg import fractional_matrix_power

from accretive_lab import (
    NegativeAxisIntrusion,
    PowerAlgorithm,
    SeriesNotApplicable,
    cayley_transform,
    power_chain,
    principal_log,
    principal_power,
    random_accretive,
    random_half_f,
    trial_rng,
)


def test_sqrt_of_unit_triangular():
    """[[1,1],[0,1]]^(1/2) = [[1, 1/2],[0, 1]] exactly."""
    t = np.array([[1.0, 1.0], [0.0, 1.0]])
    res = principal_power(t, 0.5)
    np.testing.assert_array_equal(res.value, np.array([[1.0, 0.5], [0.0, 1.0]]))
    assert res.shift_used == 0.0


def test_sqrt_of_singular_diagonal_uses_shift():
    """diag(i, 0)^(1/2) = diag(e^{i pi/4}, 0) through the shift ladder."""
    t = np.diag([1j, 0.0])
    res = principal_power(t, 0.5)
    expected = np.diag([np.exp(1j * np.pi / 4), 0.0])
    np.testing.assert_allclose(res.value, expected, atol=1e-9)
    assert res.shift_used > 0.0


def test_agreement_with_scipy_on_accretive():
    rng = trial_rng(5, "oracle", 0)
    t = random_accretive(rng, 4)
    for alg in (PowerAlgorithm.TRIANGULAR_SCHUR,
                PowerAlgorithm.SPECTRAL_DIAGONALIZATION):
        got = principal_power(t, 0.37, alg=alg).value
        ref = fractional_matrix_power(t, 0.37)
        assert np.linalg.norm(got - ref, 2) < 1e-12


def test_alpha_above_one_squares_down():
    rng = trial_rng(5, "oracle", 1)
    t = random_accretive(rng, 3)
    got = principal_power(t, 2.5).value
    ref = fractional_matrix_power(t, 2.5)
    assert np.linalg.norm(got - ref, 2) < 1e-10


def test_alpha_one_is_identity_map():
    t = np.array([[2.0, 1.0], [0.0, 1.0]])
    np.testing.assert_allclose(principal_power(t, 1.0).value, t, atol=1e-14)


def test_semigroup_on_random_accretive():
    rng = trial_rng(5, "oracle", 2)
    t = random_accretive(rng, 5)
    a = principal_power(t, 0.3).value
    b = principal_power(t, 0.45).value
    ab = principal_power(t, 0.75).value
    assert np.linalg.norm(a @ b - ab, 2) < 1e-11


def test_series_algorithm_matches_schur_inside_half_f():
    rng = trial_rng(5, "oracle", 3)
    x = random_half_f(rng, 3)
    s = principal_power(x, 0.5, alg=PowerAlgorithm.BINOMIAL_SERIES_HALF_F).value
    q = principal_power(x, 0.5, alg=PowerAlgorithm.TRIANGULAR_SCHUR).value
    assert np.linalg.norm(s - q, 2) < 1e-10


def test_series_algorithm_rejects_outside_half_f():
    with pytest.raises(SeriesNotApplicable):
        principal_power(np.diag([3.0, 1.0]), 0.5,
                        alg=PowerAlgorithm.BINOMIAL_SERIES_HALF_F)


def test_negative_axis_is_rejected():
    with pytest.raises(NegativeAxisIntrusion):
        principal_power(np.diag([-1.0, 1.0]), 0.5)


def test_check_range_skip_allows_hot_loop():
    # spectrum on the negative axis still raises from the log itself,
    # but a clean accretive matrix skips the boundary scan
    t = np.diag([1.0, 2.0])
    res = principal_power(t, 0.5, check_range=False)
    np.testing.assert_allclose(res.value, np.diag([1.0, np.sqrt(2.0)]), atol=1e-14)


def test_alpha_must_be_positive():
    with pytest.raises(ValueError):
        principal_power(np.eye(2), 0.0)
    with pytest.raises(ValueError):
        principal_power(np.eye(2), -0.5)


def test_shift_policy_off_skips_ladder():
    t = np.diag([1j, 0.0])
    auto = principal_power(t, 0.5, shift_policy="auto")
    off = principal_power(t, 0.5, shift_policy="off")
    assert auto.shift_used > 0.0
    assert off.shift_used == 0.0


def test_shift_policy_validates():
    with pytest.raises(ValueError):
        principal_power(np.eye(2), 0.5, shift_policy="sometimes")


def test_residual_reports_root_defect():
    rng = trial_rng(5, "oracle", 4)
    t = random_accretive(rng, 4)
    res = principal_power(t, 0.25)
    assert res.residual < 1e-12
    recomposed = np.linalg.matrix_power(res.value, 4)
    assert np.linalg.norm(recomposed - t, 2) == pytest.approx(res.residual, rel=1e-6)


def test_scalar_negative_imaginary_root():
    """(-i)^(1/2) = e^{-i pi/4}: the principal branch, not the antipode."""
    res = principal_power(np.array([[-1j]]), 0.5)
    assert res.value[0, 0] == pytest.approx(np.exp(-1j * np.pi / 4), abs=1e-14)


def test_principal_log_oracles():
    np.testing.assert_allclose(
        principal_log(np.diag([1j])), np.diag([1j * np.pi / 2]), atol=1e-14
    )
    np.testing.assert_allclose(
        principal_log(np.array([[1.0, 1.0], [0.0, 1.0]])),
        np.array([[0.0, 1.0], [0.0, 0.0]]),
        atol=1e-14,
    )


def test_principal_log_matches_scipy():
    from scipy.linalg import logm

    rng = trial_rng(5, "oracle", 5)
    t = random_accretive(rng, 4)
    assert np.linalg.norm(principal_log(t) - logm(t), 2) < 1e-11


def test_cayley_transform_of_imaginary_unit():
    """a_t = t a (1 + t a)^{-1} at a = diag(i), t = 1 gives (1+i)/2."""
    got = cayley_transform(np.diag([1j]), 1.0)
    assert got[0, 0] == pytest.approx((1.0 + 1.0j) / 2.0, abs=1e-15)


def test_cayley_lands_in_half_f():
    rng = trial_rng(5, "oracle", 6)
    x = random_accretive(rng, 4)
    for t in (0.25, 1.0, 4.0):
        a_t = cayley_transform(x, t)
        assert np.linalg.norm(np.eye(4) - 2.0 * a_t, 2) <= 1.0 + 1e-10


def test_power_chain_matches_sequential_powers():
    rng = trial_rng(5, "oracle", 7)
    t = random_accretive(rng, 3)
    chained = power_chain(t, (0.5, 0.5))
    direct = principal_power(principal_power(t, 0.5).value, 0.5).value
    assert np.linalg.norm(chained - direct, 2) < 1e-12


def test_ladder_with_aitken_on_singular_nth_roots():
    """diag(i, 0)^(1/n) keeps the nonzero eigenvalue's principal root and
    sends the kernel to zero, for n along a doubling schedule."""
    t = np.diag([1j, 0.0])
    for n in (4, 16, 64):
        got = principal_power(t, 1.0 / n).value
        expected = np.diag([np.exp(1j * np.pi / (2 * n)), 0.0])
        assert np.linalg.norm(got - expected, 2) < 1e-7
