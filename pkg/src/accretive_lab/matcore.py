"""Dense complex-matrix substrate.

Everything downstream works on validated square ``numpy`` arrays of
``complex128``.  This module owns the tolerance policy, the Hermitian /
skew split, operator norms, positivity and commutation tests, and the
JSON interchange format ``{"dim": d, "re": [[...]], "im": [[...]]}``
used by the CLI and by every serialization path.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, replace
from typing import Iterable

import numpy as np

from .errors import (
    DimensionMismatch,
    InputParseError,
    NonFiniteEntries,
    NotHermitian,
    NotSquare,
)

__all__ = [
    "TolerancePolicy",
    "as_matrix",
    "identity",
    "hermitian_part",
    "skew_part",
    "dagger",
    "operator_norm",
    "is_hermitian",
    "is_psd",
    "lambda_min",
    "lambda_max",
    "commutes",
    "spectrum",
    "matrix_to_json",
    "matrix_from_json",
    "matrix_digest",
]

TOL_ENV_VAR = "ACCRETIVE_LAB_TOL_OVERRIDE"


@dataclass(frozen=True)
class TolerancePolicy:
    """Relative slack used by every predicate in the package.

    All tolerances anchor at ``max(1, scale)`` so tests behave sanely for
    near-zero matrices.  Defaults sit roughly three orders of magnitude
    above double-precision accumulation error for the dimensions (<= 64)
    this package targets.

    :param psd_tol: relative eigenvalue slack for positivity tests.
    :param norm_tol: relative slack for norm comparisons.
    :param angle_tol: absolute slack for angle comparisons, radians.
    :param commute_tol: relative slack for commutator norms.
    """

    psd_tol: float = 1e-9
    norm_tol: float = 1e-10
    angle_tol: float = 1e-7
    commute_tol: float = 1e-10

    def __post_init__(self) -> None:
        for name in ("psd_tol", "norm_tol", "angle_tol", "commute_tol"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")

    @classmethod
    def default(cls) -> "TolerancePolicy":
        """Return the default policy, honoring ``ACCRETIVE_LAB_TOL_OVERRIDE``.

        The environment variable, when set, must point at a JSON file whose
        keys are a subset of the policy fields; listed fields override the
        defaults.
        """
        policy = cls()
        path = os.environ.get(TOL_ENV_VAR)
        if not path:
            return policy
        try:
            with open(path, "r", encoding="utf-8") as fh:
                raw = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputParseError(f"cannot read tolerance override {path!r}: {exc}") from exc
        unknown = set(raw) - {"psd_tol", "norm_tol", "angle_tol", "commute_tol"}
        if unknown:
            raise InputParseError(f"unknown tolerance fields in override: {sorted(unknown)}")
        return replace(policy, **{k: float(v) for k, v in raw.items()})


def as_matrix(obj) -> np.ndarray:
    """Validate *obj* as a finite square complex matrix.

    Accepts anything ``np.asarray`` does (nested lists, arrays, scalars
    are NOT promoted — a 1x1 matrix must be given as ``[[z]]``).

    :raises NotSquare: if the array is not two-dimensional and square.
    :raises NonFiniteEntries: if any entry is NaN or infinite.
    """
    a = np.asarray(obj, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise NotSquare(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise NonFiniteEntries("matrix contains NaN or Inf entries")
    return a


def identity(dim: int) -> np.ndarray:
    """The identity of the ambient algebra at dimension ``dim``."""
    return np.eye(dim, dtype=complex)


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return a.conj().T


def hermitian_part(a) -> np.ndarray:
    """Return ``(a + a*)/2``, symmetrized so the result is exactly Hermitian.

    Note: several positivity statements in the literature are phrased with
    the unsymmetrized sum ``a + a*``; positivity is scale-invariant, and
    every consumer in this package documents which normalization it uses.
    """
    a = as_matrix(a)
    h = (a + dagger(a)) / 2.0
    return (h + dagger(h)) / 2.0


def skew_part(a) -> np.ndarray:
    """Return ``(a - a*)/2`` so that ``hermitian_part(a) + skew_part(a) == a``."""
    a = as_matrix(a)
    return (a - dagger(a)) / 2.0


def operator_norm(a) -> float:
    """Largest singular value of ``a``."""
    a = as_matrix(a)
    return float(np.linalg.norm(a, 2))


def is_hermitian(h, tol: TolerancePolicy | None = None) -> bool:
    """True iff ``||h - h*|| <= norm_tol * max(1, ||h||)``."""
    h = as_matrix(h)
    tol = tol or TolerancePolicy.default()
    scale = max(1.0, operator_norm(h))
    return operator_norm(h - dagger(h)) <= tol.norm_tol * scale


def lambda_min(h) -> float:
    """Smallest eigenvalue of a Hermitian matrix (symmetric eigensolver).

    The argument is symmetrized first; use :func:`is_psd` when a Hermiticity
    check is wanted.
    """
    h = as_matrix(h)
    hs = (h + dagger(h)) / 2.0
    return float(np.linalg.eigvalsh(hs)[0])


def lambda_max(h) -> float:
    """Largest eigenvalue of a Hermitian matrix (symmetric eigensolver)."""
    h = as_matrix(h)
    hs = (h + dagger(h)) / 2.0
    return float(np.linalg.eigvalsh(hs)[-1])


def is_psd(h, tol: TolerancePolicy | None = None) -> bool:
    """Positive-semidefiniteness test with relative slack.

    True iff ``lambda_min(h) >= -psd_tol * max(1, ||h||)``.

    :raises NotHermitian: when ``h`` is not Hermitian within ``norm_tol``.
    """
    h = as_matrix(h)
    tol = tol or TolerancePolicy.default()
    if not is_hermitian(h, tol):
        raise NotHermitian("is_psd requires a Hermitian argument")
    scale = max(1.0, operator_norm(h))
    return lambda_min(h) >= -tol.psd_tol * scale


def commutes(a, b, tol: TolerancePolicy | None = None) -> bool:
    """True iff ``||ab - ba|| <= commute_tol * max(1, ||a|| ||b||)``.

    :raises DimensionMismatch: if the matrices have different dimensions.
    """
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")
    tol = tol or TolerancePolicy.default()
    scale = max(1.0, operator_norm(a) * operator_norm(b))
    return operator_norm(a @ b - b @ a) <= tol.commute_tol * scale


def spectrum(a) -> np.ndarray:
    """Eigenvalues of a general matrix via Schur decomposition.

    Hermitian inputs should use :func:`lambda_min` / ``eigvalsh`` instead;
    general spectra come from the (backward-stable) Schur form rather than
    the unsymmetric eigensolver.
    """
    import scipy.linalg

    a = as_matrix(a)
    if a.shape[0] == 1:
        return a.ravel().copy()
    upper, _ = scipy.linalg.schur(a, output="complex")
    return np.diag(upper).copy()


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------

def matrix_to_json(a) -> dict:
    """Encode a matrix as ``{"dim": d, "re": [[...]], "im": [[...]]}``."""
    a = as_matrix(a)
    return {
        "dim": int(a.shape[0]),
        "re": [[float(v) for v in row] for row in a.real],
        "im": [[float(v) for v in row] for row in a.imag],
    }


def matrix_from_json(obj) -> np.ndarray:
    """Decode the interchange format back into a validated matrix.

    :raises InputParseError: when the object does not match the schema.
    """
    if not isinstance(obj, dict):
        raise InputParseError("matrix JSON must be an object")
    missing = {"dim", "re", "im"} - set(obj)
    if missing:
        raise InputParseError(f"matrix JSON missing keys {sorted(missing)}")
    dim = obj["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise InputParseError("matrix JSON 'dim' must be a positive integer")
    try:
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputParseError(f"matrix JSON entries not numeric: {exc}") from exc
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise InputParseError(
            f"matrix JSON entries must be {dim}x{dim} arrays, got {re.shape} and {im.shape}"
        )
    try:
        return as_matrix(re + 1j * im)
    except (NotSquare, NonFiniteEntries) as exc:
        raise InputParseError(str(exc)) from exc


def matrix_digest(a) -> str:
    """Short stable digest of a matrix, used to reference trial inputs in reports."""
    import hashlib

    blob = json.dumps(matrix_to_json(a), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]


def stack_digest(mats: Iterable[np.ndarray]) -> str:
    """Digest of an ordered tuple of matrices."""
    import hashlib

    blob = json.dumps(
        [matrix_to_json(m) for m in mats], sort_keys=True, separators=(",", ":")
    )
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]
