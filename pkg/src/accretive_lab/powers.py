"""Principal fractional matrix powers, principal logarithm, and the
resolvent-type transform a -> t a (1 + t a)^{-1}.

Powers T^alpha are defined for matrices whose numerical range avoids the
strictly negative reals, by lifting the principal scalar power through one
of three cross-validating algorithms:

* ``TRIANGULAR_SCHUR`` (default): complex Schur form, scalar powers on the
  diagonal, and the commutation recurrence F U = U F solved superdiagonal
  by superdiagonal.  Eigenvalue clusters (gap below ``1e-8 * max(1, ||T||)``)
  switch the triangular factor to exp(alpha log U) computed by an inverse
  scaling-and-squaring triangular logarithm, which keeps full accuracy on
  defective inputs (a perturb-and-diagonalize fallback would cap accuracy
  near the square root of the perturbation).
* ``SPECTRAL_DIAGONALIZATION``: plain eigendecomposition; fast and accurate
  on well-conditioned diagonalizable inputs, inaccurate near defectiveness.
* ``BINOMIAL_SERIES_HALF_F``: the binomial series
  x^s = 2^{-s} sum_k C(s,k) (-1)^k (1-2x)^k, applicable when ||1-2x|| <= 1;
  an algorithm of a genuinely different nature, used as an independent
  cross-check by the verification suite.

Matrices with 0 in the spectrum (within tolerance) are handled by the
shift ladder (T + eps)^alpha at eps in {1e-6, 1e-8, 1e-10} followed by
entrywise Aitken extrapolation of the geometric error modes; the shift
actually used is recorded on the result.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (
    NegativeAxisIntrusion,
    NonConvergence,
    SeriesNotApplicable,
    SingularResolvent,
    SpectrumOnCut,
)
from .funcalc import eval_disk, half_f_power
from .matcore import TolerancePolicy, as_matrix, dagger, operator_norm, spectrum
from .numrange import avoids_negative_reals

__all__ = [
    "PowerAlgorithm",
    "PowerResult",
    "principal_power",
    "principal_log",
    "cayley_transform",
    "power_chain",
]

SHIFT_LADDER = (1e-6, 1e-8, 1e-10)
CLUSTER_GAP = 1e-8
SERIES_TAIL_TARGET = 1e-12
SERIES_MAX_TERMS = 20000


class PowerAlgorithm(enum.Enum):
    """Algorithm selector for :func:`principal_power`."""

    SPECTRAL_DIAGONALIZATION = "spectral"
    TRIANGULAR_SCHUR = "schur"
    BINOMIAL_SERIES_HALF_F = "series"


@dataclass(frozen=True)
class PowerResult:
    """Outcome of one power computation.

    :param value: the computed T^alpha.
    :param algorithm: which algorithm produced it.
    :param residual: ``||value^k - T||`` when alpha = 1/k for integer k,
        otherwise the semigroup round-trip ``||value * T^{1-alpha} - T||``.
    :param shift_used: the finest shift of the ladder when the spectrum
        contained a point within tolerance of zero, else 0.
    """

    value: np.ndarray
    algorithm: PowerAlgorithm
    residual: float
    shift_used: float


def _scalar_power(z: complex, alpha: float) -> complex:
    """Principal scalar power with 0^alpha = 0."""
    z = complex(z)
    if z == 0:
        return 0j
    return complex(np.exp(alpha * np.log(z)))


def _sqrtm_triu(U: np.ndarray) -> np.ndarray:
    """Principal square root of an upper-triangular matrix.

    Standard superdiagonal recurrence; the diagonal divisors
    R[i,i] + R[j,j] cannot vanish when the spectrum avoids the closed
    negative axis (principal roots lie in the open right half-plane).
    """
    n = U.shape[0]
    R = np.zeros_like(U)
    for i in range(n):
        R[i, i] = _scalar_power(U[i, i], 0.5)
    for k in range(1, n):
        for i in range(n - k):
            j = i + k
            s = R[i, i + 1 : j] @ R[i + 1 : j, j] if j > i + 1 else 0.0
            denom = R[i, i] + R[j, j]
            if abs(denom) < 1e-300:
                raise SpectrumOnCut("square-root recurrence hit a zero divisor")
            R[i, j] = (U[i, j] - s) / denom
    return R


def _logm_triu(U: np.ndarray) -> np.ndarray:
    """Principal logarithm of an upper-triangular matrix with spectrum off
    the closed negative axis, by inverse scaling and squaring.

    Square roots are taken until ||U - I|| <= 1/4, the Mercator series
    log(I - N) = -sum N^k/k is summed to machine-level tail, and the result
    is scaled back by 2^s.
    """
    n = U.shape[0]
    eye = np.eye(n, dtype=complex)
    R = U.astype(complex).copy()
    squarings = 0
    while np.linalg.norm(R - eye, 2) > 0.25:
        if squarings > 90:
            raise NonConvergence("square-root ladder failed to contract toward I")
        R = _sqrtm_triu(R)
        squarings += 1
    N = eye - R
    acc = np.zeros_like(R)
    term = N.copy()
    for k in range(1, 80):
        acc -= term / k
        term = term @ N
        if np.linalg.norm(term, 2) <= 1e-18 * max(1.0, np.linalg.norm(acc, 2)):
            break
    return acc * (2.0 ** squarings)


def _powm_triu(U: np.ndarray, alpha: float, gap: float) -> np.ndarray:
    """Principal alpha-power of an upper-triangular matrix.

    Solves F U = U F for the strictly upper entries,

        F[i,j] = (U[i,j] (F[i,i] - F[j,j])
                  + F[i,i+1:j] U[i+1:j,j] - U[i,i+1:j] F[i+1:j,j])
                 / (U[i,i] - U[j,j]),

    superdiagonal by superdiagonal.  When some eigenvalue pair is closer
    than ``gap`` the recurrence divisor is untrustworthy and the triangular
    factor is computed as exp(alpha log U) instead.
    """
    n = U.shape[0]
    diag = np.diag(U)
    if n > 1:
        pair_gap = min(
            abs(diag[i] - diag[j]) for i in range(n) for j in range(i + 1, n)
        )
        if pair_gap < gap:
            return scipy.linalg.expm(alpha * _logm_triu(U))
    F = np.zeros_like(U)
    for i in range(n):
        F[i, i] = _scalar_power(diag[i], alpha)
    for k in range(1, n):
        for i in range(n - k):
            j = i + k
            num = U[i, j] * (F[i, i] - F[j, j])
            if j > i + 1:
                num += F[i, i + 1 : j] @ U[i + 1 : j, j]
                num -= U[i, i + 1 : j] @ F[i + 1 : j, j]
            F[i, j] = num / (U[i, i] - U[j, j])
    return F


def _power_core(T: np.ndarray, alpha: float, alg: PowerAlgorithm,
                tol: TolerancePolicy) -> np.ndarray:
    """T^alpha for spectra safely off the cut (no shift handling here)."""
    d = T.shape[0]
    if d == 1:
        return np.array([[_scalar_power(T[0, 0], alpha)]], dtype=complex)
    if alg is PowerAlgorithm.SPECTRAL_DIAGONALIZATION:
        w, V = np.linalg.eig(T)
        fw = np.array([_scalar_power(z, alpha) for z in w], dtype=complex)
        return V @ (fw[:, None] * np.linalg.inv(V))
    U, Q = scipy.linalg.schur(T, output="complex")
    gap = CLUSTER_GAP * max(1.0, operator_norm(T))
    F = _powm_triu(U, alpha, gap)
    return Q @ F @ dagger(Q)


def _aitken(x0: np.ndarray, x1: np.ndarray, x2: np.ndarray) -> np.ndarray:
    """Entrywise Aitken delta-squared extrapolation of a shift ladder.

    Exact on a single geometric error mode (which is what the ladder
    produces: the kernel modes decay like eps^alpha, the regular modes
    linearly in eps); entries with a vanishing second difference are left
    at the finest-shift value.
    """
    d1 = x1 - x0
    d2 = x2 - x1
    denom = d2 - d1
    out = x2.copy()
    mask = np.abs(denom) > 1e-300
    out[mask] = x2[mask] - d2[mask] ** 2 / denom[mask]
    return out


def _near_zero_spectrum(T: np.ndarray, tol: TolerancePolicy) -> bool:
    eigs = spectrum(T)
    thr = tol.psd_tol * max(1.0, operator_norm(T))
    return bool(np.min(np.abs(eigs)) <= thr)


def _series_power(T: np.ndarray, alpha: float, tol: TolerancePolicy) -> np.ndarray:
    d = T.shape[0]
    arg = np.eye(d, dtype=complex) - 2.0 * T
    if operator_norm(arg) > 1.0 + tol.norm_tol:
        raise SeriesNotApplicable(
            "the binomial series requires ||1 - 2x|| <= 1"
        )
    h = half_f_power(alpha)
    # h is the series of ((1-z)/2)^alpha, so h(1-2x) = x^alpha
    return eval_disk(h, arg, tol, tail_target=SERIES_TAIL_TARGET,
                     max_terms=SERIES_MAX_TERMS)


def _power_value(T: np.ndarray, alpha: float, alg: PowerAlgorithm,
                 tol: TolerancePolicy,
                 shift_policy: str = "auto") -> tuple[np.ndarray, float]:
    """(value, shift_used) without residual bookkeeping."""
    if alg is PowerAlgorithm.BINOMIAL_SERIES_HALF_F:
        return _series_power(T, alpha, tol), 0.0
    if shift_policy == "auto" and alpha < 1.0 and _near_zero_spectrum(T, tol):
        d = T.shape[0]
        eye = np.eye(d, dtype=complex)
        ladder = [_power_core(T + eps * eye, alpha, alg, tol) for eps in SHIFT_LADDER]
        return _aitken(*ladder), SHIFT_LADDER[-1]
    return _power_core(T, alpha, alg, tol), 0.0


def principal_power(T, alpha: float,
                    alg: PowerAlgorithm = PowerAlgorithm.TRIANGULAR_SCHUR,
                    tol: TolerancePolicy | None = None,
                    check_range: bool = True,
                    shift_policy: str = "auto") -> PowerResult:
    """Principal fractional power T^alpha for alpha in (0, 1].

    The spectrum is mapped by the principal scalar power; the unique
    continuous extension is used when 0 lies in the spectrum (via the
    documented shift ladder).  Exponents above 1 are supported through
    T^alpha = (T^{alpha/2^k})^{2^k}; the contractual core is (0, 1].

    :param check_range: callers that have already established that W(T)
        avoids the strictly negative reals may pass False to skip the
        recheck in hot loops.
    :param shift_policy: "auto" engages the shift ladder when 0 sits in
        the spectrum; "off" always computes directly.
    :raises NegativeAxisIntrusion: when W(T) meets the negative axis.
    :raises SeriesNotApplicable: series algorithm outside ||1-2x|| <= 1.
    :raises NonConvergence: series tail bound unreachable in the term cap.
    """
    T = as_matrix(T)
    tol = tol or TolerancePolicy.default()
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if shift_policy not in ("auto", "off"):
        raise ValueError(f"unknown shift policy {shift_policy!r}")
    if check_range and not avoids_negative_reals(T, tol):
        raise NegativeAxisIntrusion(
            "numerical range meets the strictly negative reals"
        )
    doublings = 0
    base_alpha = float(alpha)
    while base_alpha > 1.0:
        base_alpha /= 2.0
        doublings += 1

    value, shift = _power_value(T, base_alpha, alg, tol, shift_policy)
    for _ in range(doublings):
        value = value @ value

    # residual diagnostic
    recip = 1.0 / alpha if alpha > 0 else np.inf
    if abs(recip - round(recip)) < 1e-9 and round(recip) >= 1:
        residual = float(
            np.linalg.norm(np.linalg.matrix_power(value, int(round(recip))) - T, 2)
        )
    elif alpha < 1.0:
        complement, _ = _power_value(T, 1.0 - alpha, alg, tol)
        residual = float(np.linalg.norm(value @ complement - T, 2))
    else:
        residual = float(np.linalg.norm(value - T, 2))
    return PowerResult(value, alg, residual, shift)


def principal_log(T, tol: TolerancePolicy | None = None) -> np.ndarray:
    """Principal matrix logarithm.

    Requires the spectrum to keep a tolerance-sized distance from the
    closed negative axis (stronger than the numerical-range condition used
    by :func:`principal_power`; inputs with 0 in the spectrum go through
    the power shift ladder instead of the logarithm).

    :raises SpectrumOnCut: when an eigenvalue is within tolerance of
        (-inf, 0].
    """
    T = as_matrix(T)
    tol = tol or TolerancePolicy.default()
    thr = tol.psd_tol * max(1.0, operator_norm(T))
    for lam in spectrum(T):
        dist = abs(lam.imag) if lam.real <= 0 else abs(lam)
        if dist <= thr:
            raise SpectrumOnCut(f"eigenvalue {lam} is within {thr} of the cut")
    if T.shape[0] == 1:
        return np.array([[np.log(complex(T[0, 0]))]], dtype=complex)
    U, Q = scipy.linalg.schur(T, output="complex")
    return Q @ _logm_triu(U) @ dagger(Q)


def cayley_transform(a, t: float) -> np.ndarray:
    """The transform a_t = t a (1 + t a)^{-1} for accretive a and t > 0.

    Maps accretive matrices into {x : ||1 - 2x|| <= 1} and commutes with a
    (it is a rational function of a).

    :raises SingularResolvent: when 1 + t a is numerically singular, which
        signals that a was not accretive within tolerance.
    """
    a = as_matrix(a)
    if t <= 0:
        raise ValueError(f"t must be positive, got {t}")
    d = a.shape[0]
    M = np.eye(d, dtype=complex) + t * a
    smin = float(np.linalg.svd(M, compute_uv=False)[-1])
    if smin <= 1e-12 * max(1.0, operator_norm(M)):
        raise SingularResolvent("1 + t*a is numerically singular")
    # t*a and (1 + t*a)^{-1} commute, so left division is safe
    return np.linalg.solve(M, t * a)


def power_chain(T, alphas, alg: PowerAlgorithm = PowerAlgorithm.TRIANGULAR_SCHUR,
                tol: TolerancePolicy | None = None) -> np.ndarray:
    """Iterated principal powers ((T^{a1})^{a2})... for a1, a2, ... in (0, 1].

    By the composition law this equals T^{prod(alphas)} up to the
    documented numerical slack; the verification suite checks exactly that.
    """
    value = as_matrix(T)
    for a in alphas:
        value = principal_power(value, float(a), alg=alg, tol=tol).value
    return value
