"""Numerical range (field of values) computations.

The numerical range W(T) of a d x d matrix is the compact convex set
{v* T v : ||v|| = 1}.  Its support function in direction theta is the top
eigenvalue of the Hermitian part of e^{i theta} T, and the corresponding
extremal eigenvector yields a boundary point.  Everything in this module —
boundary tracing, negative-axis avoidance, and minimal-sector fitting —
is built on that one eigenproblem per angle.
"""
from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .errors import NegativeAxisIntrusion
from .matcore import TolerancePolicy, as_matrix, dagger, operator_norm

__all__ = [
    "Sector",
    "NumericalRangeBoundary",
    "boundary",
    "avoids_negative_reals",
    "sector_fit",
    "in_sector",
    "centered_half_angle",
    "max_angular_deviation",
    "sector_excess",
    "boundary_csv",
]

DEFAULT_N_ANGLES = 720
_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class Sector:
    """The rotated sector e^{i theta} S_phi.

    ``z`` belongs to the sector iff ``z == 0`` or
    ``|arg(z e^{-i theta})| <= phi``.

    :param theta: rotation of the sector axis, radians, ``|theta| <= pi``.
    :param phi: half-angle in ``[0, pi]``.
    """

    theta: float
    phi: float

    def __post_init__(self) -> None:
        if not (abs(self.theta) <= np.pi + 1e-15):
            raise ValueError(f"|theta| must be <= pi, got {self.theta}")
        if not (-1e-15 <= self.phi <= np.pi + 1e-15):
            raise ValueError(f"phi must lie in [0, pi], got {self.phi}")

    def contains(self, z: complex, angle_slack: float = 0.0) -> bool:
        if z == 0:
            return True
        return abs(_wrap_angle(np.angle(z) - self.theta)) <= self.phi + angle_slack


@dataclass(frozen=True)
class NumericalRangeBoundary:
    """Sampled boundary of W(T).

    ``points[j]`` is the extremal point of W(T) in direction
    ``theta_j = 2 pi j / n_angles`` and ``support_values[j]`` is the support
    function value ``lambda_max(hermitian_part(e^{i theta_j} T))`` in that
    direction.
    """

    points: np.ndarray
    support_values: np.ndarray
    n_angles: int

    @property
    def angles(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.n_angles) / self.n_angles


def _wrap_angle(x: float) -> float:
    """Map an angle to (-pi, pi]."""
    w = (x + np.pi) % (2.0 * np.pi) - np.pi
    if w == -np.pi:
        return np.pi
    return w


def boundary(T, n_angles: int = DEFAULT_N_ANGLES) -> NumericalRangeBoundary:
    """Trace the boundary of W(T) on a uniform angle grid.

    For each grid angle theta the top eigenpair of
    ``(e^{i theta} T + e^{-i theta} T*)/2`` is computed; the eigenvector v
    gives the boundary point ``v* T v``.  The convex hull of the returned
    points is an inner approximation of W(T) whose Hausdorff distance from
    W(T) is O(||T|| / n_angles^2) when the boundary is smooth.

    :param n_angles: at least 8 grid directions.
    """
    T = as_matrix(T)
    if n_angles < 8:
        raise ValueError(f"n_angles must be >= 8, got {n_angles}")
    d = T.shape[0]
    if d == 1:
        z = complex(T[0, 0])
        thetas = 2.0 * np.pi * np.arange(n_angles) / n_angles
        pts = np.full(n_angles, z, dtype=complex)
        support = np.real(np.exp(1j * thetas) * z)
        return NumericalRangeBoundary(pts, support, n_angles)

    thetas = 2.0 * np.pi * np.arange(n_angles) / n_angles
    phases = np.exp(1j * thetas)
    # stack of Hermitian parts, one per angle: (n, d, d)
    rotated = phases[:, None, None] * T[None, :, :]
    herm = (rotated + np.conj(np.transpose(rotated, (0, 2, 1)))) / 2.0
    vals, vecs = np.linalg.eigh(herm)
    support = vals[:, -1].astype(float)
    top = vecs[:, :, -1]  # (n, d) extremal unit vectors
    pts = np.einsum("ni,ij,nj->n", np.conj(top), T, top)
    return NumericalRangeBoundary(pts, support, n_angles)


def _axis_hits(bnd: NumericalRangeBoundary, norm: float, tol: TolerancePolicy) -> list[float]:
    """Real parts of the hull's intersections with the real axis.

    Walks the closed polygon of boundary samples and collects every edge
    crossing of Im z = 0 plus every vertex whose imaginary part is below
    the localization width (covering collinear/degenerate hulls).
    """
    pts = bnd.points
    n = len(pts)
    # Imaginary-part localization: grid gap of the hull plus tolerance floor.
    width = max(tol.psd_tol * max(1.0, norm), 4.0 * norm * (np.pi / bnd.n_angles) ** 2)
    hits = [float(z.real) for z in pts if abs(z.imag) <= width]
    for j in range(n):
        z1 = pts[j]
        z2 = pts[(j + 1) % n]
        y1, y2 = z1.imag, z2.imag
        if (y1 < -width and y2 > width) or (y1 > width and y2 < -width):
            t = y1 / (y1 - y2)
            hits.append(float(z1.real + t * (z2.real - z1.real)))
    return hits


def avoids_negative_reals(T, tol: TolerancePolicy | None = None,
                          n_angles: int = DEFAULT_N_ANGLES) -> bool:
    """True iff W(T) stays off the ray (-inf, -delta], delta = psd_tol * max(1, ||T||).

    Decision procedure (belt and suspenders):

    1. exact support test at angle pi — if the leftmost extent of W(T) is
       right of ``-delta`` the answer is immediately true;
    2. otherwise the sampled boundary polygon is intersected with the real
       axis and the leftmost crossing decides.
    """
    T = as_matrix(T)
    tol = tol or TolerancePolicy.default()
    norm = operator_norm(T)
    delta = tol.psd_tol * max(1.0, norm)
    if T.shape[0] == 1:
        z = complex(T[0, 0])
        return not (z.real <= -delta and abs(z.imag) <= delta)
    # support function at theta = pi: max of -Re over W(T)
    leftmost = float(np.linalg.eigvalsh((-T - dagger(T)) / 2.0)[-1])
    if leftmost <= delta:  # all of W(T) has Re >= -delta
        return True
    bnd = boundary(T, n_angles)
    hits = _axis_hits(bnd, norm, tol)
    if not hits:
        return True
    return min(hits) > -delta


def _support_point(T: np.ndarray, theta: float) -> complex:
    """Extremal point of W(T) in support direction theta."""
    rotated = np.exp(1j * theta) * T
    herm = (rotated + dagger(rotated)) / 2.0
    _, vecs = np.linalg.eigh(herm)
    v = vecs[:, -1]
    return complex(np.conj(v) @ T @ v)


def _refine_max(T: np.ndarray, objective, theta_center: float,
                half_window: float, iters: int = 48) -> float:
    """Golden-section maximization of ``objective(support_point(theta))``
    over a window of support directions.

    The boundary point of a convex set moves monotonically along the
    boundary as the support direction sweeps, so an angular objective is
    unimodal over a window this small; a grid attainer seeds the window.
    """
    lo = theta_center - half_window
    hi = theta_center + half_window
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1 = objective(_support_point(T, x1))
    f2 = objective(_support_point(T, x2))
    best = max(f1, f2)
    for _ in range(iters):
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = objective(_support_point(T, x2))
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = objective(_support_point(T, x1))
        best = max(best, f1, f2)
    return best


def _window_centers(idx: np.ndarray, m: int, must_include: int) -> list[int]:
    """Representative grid indices for refinement windows.

    Flat stretches of the objective (straight polygon edges of the range,
    whose whole normal fan attains the same extremal vertex) light up long
    circularly-contiguous runs of grid hits; refining every hit repeats
    identical work.  Each run is reduced to its endpoints and midpoint,
    and ``must_include`` (the global grid argmax, whose one-step window
    always brackets a smooth interior maximum) is prepended.
    """
    out = [int(must_include)]
    if idx.size:
        hits = np.zeros(m, dtype=bool)
        hits[idx] = True
        if hits.all():
            runs = [(0, m - 1)]
        else:
            first_gap = int(np.argmin(hits))
            rolled = np.roll(hits, -first_gap)
            runs = []
            j = 0
            while j < m:
                if rolled[j]:
                    k = j
                    while k + 1 < m and rolled[k + 1]:
                        k += 1
                    runs.append(((j + first_gap) % m, (k + first_gap) % m))
                    j = k + 1
                else:
                    j += 1
        for a, b in runs:
            mid = (a + ((b - a) % m) // 2) % m
            for c in (a, mid, b):
                if c not in out:
                    out.append(c)
    return out[:24]


def max_angular_deviation(T, theta: float = 0.0,
                          tol: TolerancePolicy | None = None,
                          n_angles: int = DEFAULT_N_ANGLES,
                          refine: bool = True) -> float:
    """Largest |arg(z e^{-i theta})| over nonzero boundary points of W(T).

    This is the half-angle of the smallest sector with axis direction
    theta containing W(T).  Grid sampling alone underestimates angular
    extremes by O((pi/n_angles)^2); with ``refine`` (the default), the
    windows around the most extreme grid samples are polished by local
    search on the support direction, giving angle accuracy far below
    ``angle_tol``.  Points of magnitude below ``psd_tol * max(1, ||T||)``
    are treated as the origin and ignored.
    """
    T = as_matrix(T)
    tol = tol or TolerancePolicy.default()
    bnd = boundary(T, n_angles)
    thr = tol.psd_tol * max(1.0, operator_norm(T))

    def deviation(z: complex) -> float:
        if abs(z) <= thr:
            return -np.inf
        return abs(_wrap_angle(float(np.angle(z)) - theta))

    devs = np.array([deviation(complex(z)) for z in bnd.points])
    if not np.any(np.isfinite(devs)):
        return 0.0
    best = float(np.max(devs))
    if not refine:
        return best
    window = 2.0 * np.pi / n_angles
    support_angles = bnd.angles
    hits = np.flatnonzero(devs >= best - 1e-3)
    for j in _window_centers(hits, n_angles, int(np.argmax(devs))):
        best = max(
            best,
            _refine_max(T, deviation, float(support_angles[j]), window),
        )
    return best


def sector_excess(T, psi: float, n_angles: int = DEFAULT_N_ANGLES,
                  refine: bool = True) -> float:
    """Largest Euclidean distance from W(T) to the sector S_psi.

    Unlike the angular deviation, the distance is insensitive to
    vanishingly small points with wild arguments (they contribute at most
    their own magnitude), which makes it the right containment measure for
    matrices computed through an extrapolation that leaves debris near 0.
    The distance to a convex sector is convex, so the maximum over W(T)
    sits at an extreme point; grid support points seed a local search.
    """
    T = as_matrix(T)
    if float(np.max(np.abs(T))) == 0.0:
        return 0.0

    def excess(z: complex) -> float:
        a = abs(float(np.angle(z)))
        if a <= psi:
            return 0.0
        if a <= psi + np.pi / 2.0:
            return abs(z) * float(np.sin(a - psi))
        return abs(z)

    bnd = boundary(T, n_angles)
    vals = np.array([excess(complex(z)) for z in bnd.points])
    best = float(np.max(vals))
    if not refine:
        return best
    window = 2.0 * np.pi / n_angles
    scale = max(1.0, operator_norm(T))
    hits = np.flatnonzero(vals >= best - 1e-3 * scale)
    for j in _window_centers(hits, n_angles, int(np.argmax(vals))):
        best = max(
            best,
            _refine_max(T, excess, float(bnd.angles[j]), window),
        )
    return best


def centered_half_angle(T, tol: TolerancePolicy | None = None,
                        n_angles: int = DEFAULT_N_ANGLES,
                        refine: bool = True) -> float:
    """Half-angle of the smallest sector S_phi (centered on the positive
    axis) containing W(T): the refined max of |arg z| over the boundary,
    with points of magnitude below the tolerance threshold treated as the
    origin.
    """
    return max_angular_deviation(T, 0.0, tol, n_angles, refine)


def sector_fit(T, tol: TolerancePolicy | None = None,
               n_angles: int = DEFAULT_N_ANGLES, refine: bool = True) -> Sector:
    """Minimal rotated sector e^{i theta} S_phi covering the boundary samples.

    The boundary arguments are covered by their smallest circular arc (the
    complement of the largest gap between consecutive sorted arguments);
    theta is the arc midpoint and phi its half-width.  Ties between maximal
    gaps are broken toward minimal |theta|, then theta >= 0.  Points of
    magnitude below ``psd_tol * max(1, ||T||)`` are treated as the origin
    and ignored (every sector contains 0).  With ``refine``, the two arc
    endpoints are polished by local search between grid directions, so the
    fitted angles are accurate well below ``angle_tol``.

    :raises NegativeAxisIntrusion: when W(T) meets the negative real axis,
        in which case no wedge of half-angle < pi works.
    """
    T = as_matrix(T)
    tol = tol or TolerancePolicy.default()
    if not avoids_negative_reals(T, tol, n_angles):
        raise NegativeAxisIntrusion("numerical range meets the negative real axis")
    bnd = boundary(T, n_angles)
    thr = tol.psd_tol * max(1.0, operator_norm(T))
    keep = np.array([abs(z) > thr for z in bnd.points])
    args = np.array([float(np.angle(z)) for z in bnd.points[keep]])
    if args.size == 0:
        return Sector(0.0, 0.0)
    order = np.sort(args)
    gaps = np.diff(order, append=order[0] + 2.0 * np.pi)
    gmax = float(np.max(gaps))
    candidates = []
    m = len(order)
    for j in np.flatnonzero(gaps >= gmax - tol.angle_tol):
        width = 2.0 * np.pi - float(gaps[j])  # arc = complement of the gap
        start = float(order[(j + 1) % m])
        theta = _wrap_angle(start + width / 2.0)
        candidates.append((width / 2.0, abs(theta), -float(np.sign(theta)), theta))
    phi, _, _, theta = min(candidates)
    phi = float(min(max(phi, 0.0), np.pi))
    theta = float(theta)
    if not refine:
        return Sector(theta, phi)

    # Polish the two arc endpoints: in the frame rotated by the grid
    # theta, maximize the signed deviation u = arg(z e^{-i theta}) in both
    # directions around the grid attainers.
    def signed(z: complex) -> float:
        if abs(z) <= thr:
            return -np.inf
        return _wrap_angle(float(np.angle(z)) - theta)

    def negated(z: complex) -> float:
        u = signed(z)
        return -u if np.isfinite(u) else -np.inf

    u_vals = np.array(
        [signed(complex(z)) if ok else -np.inf for z, ok in zip(bnd.points, keep)]
    )
    finite = np.isfinite(u_vals)
    window = 2.0 * np.pi / n_angles
    support_angles = bnd.angles
    u_hi = float(np.max(u_vals[finite]))
    hi_hits = np.flatnonzero(finite & (u_vals >= u_hi - 1e-3))
    for j in _window_centers(hi_hits, n_angles, int(np.argmax(u_vals))):
        u_hi = max(u_hi, _refine_max(T, signed, float(support_angles[j]), window))
    neg_vals = np.where(finite, -u_vals, -np.inf)
    u_lo = float(np.max(neg_vals))
    lo_hits = np.flatnonzero(neg_vals >= u_lo - 1e-3)
    for j in _window_centers(lo_hits, n_angles, int(np.argmax(neg_vals))):
        u_lo = max(u_lo, _refine_max(T, negated, float(support_angles[j]), window))
    u_lo = -u_lo
    new_theta = _wrap_angle(theta + (u_hi + u_lo) / 2.0)
    new_phi = float(min(max((u_hi - u_lo) / 2.0, 0.0), np.pi))
    return Sector(float(new_theta), new_phi)


def in_sector(T, s: Sector, tol: TolerancePolicy | None = None,
              n_angles: int = DEFAULT_N_ANGLES) -> bool:
    """True iff every boundary sample of W(T) lies in the sector.

    Points with magnitude below ``psd_tol * max(1, ||T||)`` count as the
    origin; the comparison allows ``angle_tol`` of slack.
    """
    T = as_matrix(T)
    tol = tol or TolerancePolicy.default()
    bnd = boundary(T, n_angles)
    thr = tol.psd_tol * max(1.0, operator_norm(T))
    return all(
        s.contains(complex(z), angle_slack=tol.angle_tol)
        for z in bnd.points
        if abs(z) > thr
    )


def boundary_csv(bnd: NumericalRangeBoundary) -> str:
    """Render a boundary sample as CSV with header ``theta,re,im,support_value``."""
    buf = io.StringIO()
    buf.write("theta,re,im,support_value\n")
    for theta, z, h in zip(bnd.angles, bnd.points, bnd.support_values):
        buf.write(
            "%.17g,%.17g,%.17g,%.17g\n" % (theta, z.real, z.imag, h)
        )
    return buf.getvalue()
