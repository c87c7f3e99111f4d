"""Numerical-range boundary, sector fitting, and containment tests.

Oracles used here are closed forms: Hermitian matrices have segment
ranges, the elementary Jordan block has a disk of radius 1/2, and normal
matrices have the convex hull of their eigenvalues.
"""

import numpy as np
import pytest

from accretive_lab import (
    NegativeAxisIntrusion,
    Sector,
    avoids_negative_reals,
    boundary,
    boundary_csv,
    centered_half_angle,
    in_sector,
    max_angular_deviation,
    sector_excess,
    sector_fit,
)


def test_boundary_point_count_matches_angles():
    bnd = boundary(np.diag([1.0, 2.0]), 64)
    assert bnd.n_angles == 64
    assert len(bnd.points) == 64
    assert len(bnd.support_values) == 64
    assert len(bnd.angles) == 64
    np.testing.assert_allclose(np.diff(bnd.angles), 2 * np.pi / 64)


def test_boundary_of_hermitian_is_real_segment():
    bnd = boundary(np.diag([-1.0, 2.0]), 128)
    assert np.max(np.abs(np.imag(bnd.points))) < 1e-12
    assert np.max(np.real(bnd.points)) == pytest.approx(2.0, abs=1e-12)
    assert np.min(np.real(bnd.points)) == pytest.approx(-1.0, abs=1e-12)


def test_boundary_of_jordan_block_is_half_disk_radius():
    """W([[0,1],[0,0]]) is the closed disk of radius 1/2 around 0."""
    bnd = boundary(np.array([[0.0, 1.0], [0.0, 0.0]]), 256)
    np.testing.assert_allclose(np.abs(bnd.points), 0.5, atol=1e-12)
    np.testing.assert_allclose(bnd.support_values, 0.5, atol=1e-12)


def test_boundary_support_values_of_scalar():
    bnd = boundary(np.array([[2.0 + 1.0j]]), 16)
    np.testing.assert_allclose(bnd.points, 2.0 + 1.0j)
    # h(theta) = Re(e^{i theta} z) maximized entrywise
    expected = np.real(np.exp(1j * bnd.angles) * (2.0 + 1.0j))
    np.testing.assert_allclose(bnd.support_values, expected, atol=1e-12)


def test_avoids_negative_reals():
    assert avoids_negative_reals(np.diag([1.0, 1j]))
    assert not avoids_negative_reals(np.diag([-1.0, 1.0]))
    # the Jordan block's range is a disk through the negative axis
    assert not avoids_negative_reals(np.array([[0.0, 1.0], [0.0, 0.0]]))
    # the zero matrix counts as avoiding (only the origin)
    assert avoids_negative_reals(np.zeros((2, 2)))


def test_sector_fit_of_normal_pair():
    s = sector_fit(np.diag([np.exp(0.3j), np.exp(-0.3j)]))
    assert s.theta == pytest.approx(0.0, abs=1e-12)
    assert s.phi == pytest.approx(0.3, abs=1e-12)


def test_sector_fit_recovers_rotation():
    a = np.exp(0.7j) * np.diag([np.exp(0.25j), np.exp(-0.25j)])
    s = sector_fit(a)
    assert s.theta == pytest.approx(0.7, abs=1e-10)
    assert s.phi == pytest.approx(0.25, abs=1e-10)


def test_sector_fit_of_shifted_jordan_block():
    """W([[c,1],[0,c]]) is the disk |z-c| <= 1/2, so phi = asin(1/(2c))."""
    c = 1.5
    s = sector_fit(np.array([[c, 1.0], [0.0, c]]))
    assert s.theta == pytest.approx(0.0, abs=1e-10)
    assert s.phi == pytest.approx(np.arcsin(0.5 / c), abs=1e-10)


def test_sector_fit_asymmetric_arc():
    a = np.diag([np.exp(0.5j), np.exp(0.1j)])
    s = sector_fit(a)
    assert s.theta == pytest.approx(0.3, abs=1e-10)
    assert s.phi == pytest.approx(0.2, abs=1e-10)


def test_sector_fit_raises_on_negative_axis():
    with pytest.raises(NegativeAxisIntrusion):
        sector_fit(np.diag([-1.0, 1.0]))


def test_sector_fit_of_zero_matrix_is_degenerate():
    s = sector_fit(np.zeros((2, 2)))
    assert s.theta == 0.0
    assert s.phi == 0.0


def test_centered_half_angle_of_psd_is_zero():
    assert centered_half_angle(np.diag([1.0, 2.0])) == pytest.approx(0.0, abs=1e-12)


def test_centered_half_angle_matches_eigenvalue_argument():
    a = np.diag([1.0 + 1.0j, 1.0 - 1.0j])
    assert centered_half_angle(a) == pytest.approx(np.pi / 4, abs=1e-10)


def test_max_angular_deviation_about_offset_axis():
    a = np.diag([np.exp(0.6j), np.exp(0.2j)])
    dev = max_angular_deviation(a, 0.4)
    assert dev == pytest.approx(0.2, abs=1e-10)


def test_sector_excess_zero_inside():
    a = np.diag([np.exp(0.3j), np.exp(-0.3j)])
    assert sector_excess(a, 0.3 + 1e-9) == 0.0


def test_sector_excess_distance_oracle():
    # unit point at angle 0.3 against the sector of half-angle 0.25:
    # distance is sin(0.05)
    a = np.diag([np.exp(0.3j), 1.0])
    assert sector_excess(a, 0.25) == pytest.approx(np.sin(0.05), abs=1e-9)


def test_sector_excess_ignores_tiny_wild_points():
    """A vanishing eigenvalue with a wild argument contributes at most its
    own magnitude to the distance, unlike an angular measurement."""
    a = np.diag([1.0, 1e-12 * np.exp(3.0j)])
    assert sector_excess(a, 0.1) <= 2e-12


def test_sector_excess_of_zero_matrix():
    assert sector_excess(np.zeros((3, 3)), 0.5) == 0.0


def test_in_sector_respects_rotation():
    a = np.exp(0.7j) * np.diag([np.exp(0.25j), np.exp(-0.25j)])
    assert in_sector(a, Sector(0.7, 0.26))
    assert not in_sector(a, Sector(0.0, 0.26))


def test_sector_contains_origin_always():
    assert in_sector(np.zeros((2, 2)), Sector(0.0, 0.0))


def test_boundary_csv_layout():
    bnd = boundary(np.diag([1.0, 1j]), 8)
    text = boundary_csv(bnd)
    lines = text.strip().split("\n")
    assert lines[0] == "theta,re,im,support_value"
    assert len(lines) == 9
    first = lines[1].split(",")
    assert len(first) == 4
    assert float(first[0]) == 0.0
    # 17 significant digits means the floats round-trip exactly
    assert float(first[3]) == bnd.support_values[0]
