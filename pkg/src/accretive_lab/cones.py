"""Membership predicates for the positivity cones used throughout the
toolkit, in the d x d matrix algebra with identity I_d:

* ``F``        = {a : ||1 - a|| <= 1}
* ``half F``   = {a : ||1 - 2a|| <= 1}
* accretive    = {a : a + a* is positive semidefinite}
* ``c``        = R_+ . F, decided through the criterion
                 "there is a finite C with a*a <= C (a + a*)",
                 whose minimal constant is computed exactly.

The scalar cardioid region r <= (cos(theta) + 1)/2 — the set of products
(equivalently squares) of members of half-F in the complex plane — and the
scalar half-F disk r <= cos(theta) round out the scalar picture.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .matcore import (
    TolerancePolicy,
    as_matrix,
    dagger,
    identity,
    is_psd,
    operator_norm,
)

__all__ = [
    "ConeMembershipReport",
    "cone_membership",
    "min_c_constant",
    "in_cardioid",
    "scalar_half_f",
    "cardioid_bound",
]


@dataclass(frozen=True)
class ConeMembershipReport:
    """Cone flags for a single matrix, plus the raw decision quantities.

    The flags satisfy the chain in_half_F => in_F => accretive and
    in_c => accretive (up to the tolerance slack each check carries).

    :param margins: the four numbers the flags were decided on:
        ``norm_one_minus_a``, ``norm_one_minus_2a``,
        ``lambda_min_a_plus_astar``, and ``c_min``.
    """

    in_F: bool
    in_half_F: bool
    accretive: bool
    in_c: bool
    c_min: float
    margins: dict[str, float]


def cone_membership(a, tol: TolerancePolicy | None = None) -> ConeMembershipReport:
    """Evaluate all cone predicates for a single matrix."""
    a = as_matrix(a)
    tol = tol or TolerancePolicy.default()
    d = a.shape[0]
    eye = identity(d)
    norm_f = operator_norm(eye - a)
    norm_half = operator_norm(eye - 2.0 * a)
    H = a + dagger(a)
    lam_min = float(np.min(np.linalg.eigvalsh((H + dagger(H)) / 2.0)))
    c_min = min_c_constant(a, tol)
    return ConeMembershipReport(
        in_F=norm_f <= 1.0 + tol.norm_tol,
        in_half_F=norm_half <= 1.0 + tol.norm_tol,
        accretive=is_psd(H, tol),
        in_c=math.isfinite(c_min),
        c_min=c_min,
        margins={
            "norm_one_minus_a": norm_f,
            "norm_one_minus_2a": norm_half,
            "lambda_min_a_plus_astar": lam_min,
            "c_min": c_min,
        },
    )


def min_c_constant(x, tol: TolerancePolicy | None = None) -> float:
    """The smallest C >= 0 with x*x <= C (x + x*), or +inf if none exists.

    With H = x + x*, a finite constant exists iff H is PSD and
    ker(H) is contained in ker(x); in that case the minimum is
    lambda_max(H^{+/2} x* x H^{+/2}) = ||x H^{+/2}||^2 with H^{+/2} the
    pseudo-inverse square root of H on its range.

    Equivalently (and this is how the tests cross-check the formula):
    x/r lies in {a : ||1 - a|| <= 1} exactly when r >= min_c_constant(x).
    """
    x = as_matrix(x)
    tol = tol or TolerancePolicy.default()
    H = x + dagger(x)
    evals, evecs = np.linalg.eigh((H + dagger(H)) / 2.0)
    scale = max(1.0, float(np.max(np.abs(evals))) if evals.size else 0.0)
    if float(np.min(evals)) < -tol.psd_tol * scale:
        return math.inf
    thr = tol.psd_tol * scale
    pos = evals > thr
    basis = evecs[:, pos]
    P = basis @ dagger(basis)
    d = x.shape[0]
    off_range = x @ (identity(d) - P)
    if operator_norm(off_range) > tol.psd_tol * max(1.0, operator_norm(x)):
        return math.inf
    if not np.any(pos):
        # H vanishes and x is supported nowhere: the zero matrix
        return 0.0
    inv_half = basis @ ((evals[pos] ** -0.5)[:, None] * dagger(basis))
    return float(operator_norm(x @ inv_half) ** 2)


def cardioid_bound(theta: float) -> float:
    """Radial bound (cos(theta) + 1)/2 of the cardioid at angle theta."""
    return 0.5 * math.cos(theta) + 0.5


def in_cardioid(z: complex, tol: TolerancePolicy | None = None) -> bool:
    """Whether z lies in the cardioid region r <= (cos(theta) + 1)/2."""
    tol = tol or TolerancePolicy.default()
    z = complex(z)
    return abs(z) <= cardioid_bound(math.atan2(z.imag, z.real)) + tol.norm_tol


def scalar_half_f(z: complex) -> bool:
    """Whether |1 - 2z| <= 1, i.e. r <= cos(theta) for z = r e^{i theta}."""
    return abs(1.0 - 2.0 * complex(z)) <= 1.0
