"""Tests for matrix coercion, decompositions, digests, and tolerances."""

import json

import numpy as np
import pytest

from accretive_lab import (
    InputParseError,
    NonFiniteEntries,
    NotSquare,
    TolerancePolicy,
    as_matrix,
    commutes,
    dagger,
    hermitian_part,
    identity,
    is_hermitian,
    is_psd,
    lambda_max,
    lambda_min,
    matrix_digest,
    matrix_from_json,
    matrix_to_json,
    operator_norm,
    skew_part,
    spectrum,
    stack_digest,
)

GOLDEN_RATIO = (1.0 + np.sqrt(5.0)) / 2.0


def test_as_matrix_accepts_nested_lists():
    m = as_matrix([[1, 2], [3, 4]])
    assert m.dtype == complex
    np.testing.assert_array_equal(m, np.array([[1, 2], [3, 4]], dtype=complex))


def test_as_matrix_rejects_non_square():
    with pytest.raises(NotSquare):
        as_matrix(np.zeros((2, 3)))
    with pytest.raises(NotSquare):
        as_matrix([1.0, 2.0])


def test_as_matrix_rejects_nan_and_inf():
    with pytest.raises(NonFiniteEntries):
        as_matrix([[np.nan, 0.0], [0.0, 1.0]])
    with pytest.raises(NonFiniteEntries):
        as_matrix([[1.0, np.inf], [0.0, 1.0]])


def test_hermitian_skew_parts_sum_back():
    rng = np.random.default_rng(11)
    a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    h = hermitian_part(a)
    s = skew_part(a)
    np.testing.assert_allclose(h + s, a, atol=1e-15)
    # symmetrized construction is exactly Hermitian, not just close
    assert np.array_equal(h, dagger(h))


def test_operator_norm_of_pinned_matrix_is_golden_ratio():
    """The 2x2 matrix [[1, i], [i, 0]] has operator norm (1+sqrt(5))/2.

    Its singular values are the square roots of the eigenvalues of
    [[2, -i], [i, 1]], which are (3 +- sqrt(5))/2 = phi^2 and phi^-2.
    """
    x = np.array([[1.0, 1j], [1j, 0.0]])
    assert operator_norm(x) == pytest.approx(GOLDEN_RATIO, abs=1e-15)


def test_is_hermitian_and_is_psd():
    assert is_hermitian(np.diag([1.0, 2.0]))
    assert not is_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))
    assert is_psd(np.diag([0.0, 3.0]))
    assert not is_psd(np.diag([-1e-3, 1.0]))


def test_lambda_extremes_on_diagonal():
    h = np.diag([-2.0, 0.5, 7.0])
    assert lambda_min(h) == pytest.approx(-2.0)
    assert lambda_max(h) == pytest.approx(7.0)


def test_commutes_detects_commutators():
    a = np.diag([1.0, 2.0])
    b = np.diag([5.0, -1.0])
    c = np.array([[0.0, 1.0], [0.0, 0.0]])
    assert commutes(a, b)
    assert not commutes(a, c)


def test_identity_shape_and_dtype():
    e = identity(3)
    assert e.dtype == complex
    np.testing.assert_array_equal(e, np.eye(3))


def test_spectrum_of_triangular_matrix():
    t = np.array([[2.0, 5.0], [0.0, 3.0]])
    vals = sorted(spectrum(t), key=lambda z: z.real)
    np.testing.assert_allclose(vals, [2.0, 3.0], atol=1e-12)


def test_matrix_json_round_trip():
    rng = np.random.default_rng(3)
    a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    payload = matrix_to_json(a)
    assert payload["dim"] == 3
    back = matrix_from_json(payload)
    np.testing.assert_array_equal(back, a)


def test_matrix_json_round_trip_survives_serialization():
    a = np.array([[0.1 + 0.25j, -3.0], [1e-17, 2.0 - 1j]])
    text = json.dumps(matrix_to_json(a))
    back = matrix_from_json(json.loads(text))
    np.testing.assert_array_equal(back, a)


@pytest.mark.parametrize(
    "payload",
    [
        {"re": [[1.0]], "im": [[0.0]]},  # missing dim
        {"dim": 2, "re": [[1.0]], "im": [[0.0]]},  # dim mismatch
        {"dim": 1, "re": [[1.0]], "im": [[0.0, 1.0]]},  # ragged im
        {"dim": 1, "re": [["x"]], "im": [[0.0]]},  # non-numeric
    ],
)
def test_matrix_from_json_rejects_malformed(payload):
    with pytest.raises(InputParseError):
        matrix_from_json(payload)


def test_matrix_digest_is_stable_and_short():
    d1 = matrix_digest(np.eye(2))
    d2 = matrix_digest(np.eye(2))
    assert d1 == d2
    assert len(d1) == 16
    assert d1 != matrix_digest(2 * np.eye(2))


def test_digest_sensitive_to_sign_of_zero_free_values():
    # digests hash the decimal repr of entries, so tiny perturbations count
    a = np.array([[1.0]])
    b = np.array([[1.0 + 1e-16]])
    assert (matrix_digest(a) == matrix_digest(b)) == (repr(1.0) == repr(1.0 + 1e-16))


def test_stack_digest_differs_from_elementwise():
    mats = [np.eye(2), 2 * np.eye(2)]
    assert stack_digest(mats) != stack_digest(list(reversed(mats)))


def test_tolerance_defaults():
    tol = TolerancePolicy()
    assert tol.psd_tol == 1e-9
    assert tol.norm_tol == 1e-10
    assert tol.angle_tol == 1e-7
    assert tol.commute_tol == 1e-10


def test_tolerance_override_from_env(tmp_path, monkeypatch):
    cfg = tmp_path / "tol.json"
    cfg.write_text(json.dumps({"psd_tol": 1e-7}))
    monkeypatch.setenv("ACCRETIVE_LAB_TOL_OVERRIDE", str(cfg))
    tol = TolerancePolicy.default()
    assert tol.psd_tol == 1e-7
    assert tol.norm_tol == 1e-10  # untouched fields keep their defaults


def test_tolerance_override_rejects_unknown_fields(tmp_path, monkeypatch):
    cfg = tmp_path / "tol.json"
    cfg.write_text(json.dumps({"psd_tol": 1e-7, "bogus": 1.0}))
    monkeypatch.setenv("ACCRETIVE_LAB_TOL_OVERRIDE", str(cfg))
    with pytest.raises(InputParseError):
        TolerancePolicy.default()


def test_tolerance_override_rejects_missing_file(monkeypatch):
    monkeypatch.setenv("ACCRETIVE_LAB_TOL_OVERRIDE", "/nonexistent/tol.json")
    with pytest.raises(InputParseError):
        TolerancePolicy.default()
