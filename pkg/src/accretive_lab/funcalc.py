"""Disk- and bidisk-algebra functional calculus on truncated power series.

Functions are represented by power series with absolutely summable
coefficients — a strict subclass of the disk algebra, but one that admits
computable truncation bounds and contains every function this package
needs (binomial-type series with positive exponent included).

Evaluation at a matrix argument T uses the weighted tail bound

    || sum_{k>K} c_k T^k ||  <=  (sum_{k>K} |c_k|) * min(1, ||T||^{K+1}),

so interior contractions converge geometrically while boundary cases fall
back on the raw coefficient tail; when neither meets the target within the
term cap the evaluation refuses honestly rather than truncating silently.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NonConvergence, NormBoundExceeded, NotAContraction, NotCommuting
from .matcore import TolerancePolicy, as_matrix, commutes, operator_norm

__all__ = [
    "DiskFunction",
    "BidiskFunction",
    "from_coeffs",
    "identity_function",
    "monomial",
    "constant",
    "half_f_power",
    "from_product",
    "from_coeffs_2d",
    "compose",
    "eval_disk",
    "eval_bidisk",
    "boundary_grid_values",
]

DEFAULT_TAIL_TARGET = 1e-10
DEFAULT_MAX_TERMS = 20000
DEFAULT_COMPOSE_DEGREE = 512


@dataclass(frozen=True)
class DiskFunction:
    """One-variable series sum c_k z^k.

    :param coeff_fn: k -> c_k.
    :param abs_tail_fn: K -> rigorous upper bound on sum_{k>K} |c_k|.
    :param abs_sum: upper bound on sum_k |c_k| (finite by the invariant).
    :param sup_norm_bound: known bound on the sup norm over the closed
        disk, or None when no bound is claimed.
    """

    coeff_fn: Callable[[int], complex]
    abs_tail_fn: Callable[[int], float]
    abs_sum: float
    sup_norm_bound: float | None = None
    label: str = ""

    def coeff(self, k: int) -> complex:
        return complex(self.coeff_fn(k))

    def prefix(self, K: int) -> np.ndarray:
        """Coefficients c_0 .. c_K as an array."""
        return np.array([self.coeff_fn(k) for k in range(K + 1)], dtype=complex)

    def abs_tail(self, K: int) -> float:
        return max(0.0, float(self.abs_tail_fn(K)))

    def __add__(self, other: "DiskFunction") -> "DiskFunction":
        return DiskFunction(
            lambda k: self.coeff_fn(k) + other.coeff_fn(k),
            lambda K: self.abs_tail_fn(K) + other.abs_tail_fn(K),
            self.abs_sum + other.abs_sum,
            None
            if self.sup_norm_bound is None or other.sup_norm_bound is None
            else self.sup_norm_bound + other.sup_norm_bound,
            f"({self.label})+({other.label})",
        )

    def __sub__(self, other: "DiskFunction") -> "DiskFunction":
        return self + (-1.0) * other

    def __rmul__(self, c) -> "DiskFunction":
        c = complex(c)
        return DiskFunction(
            lambda k: c * self.coeff_fn(k),
            lambda K: abs(c) * self.abs_tail_fn(K),
            abs(c) * self.abs_sum,
            None if self.sup_norm_bound is None else abs(c) * self.sup_norm_bound,
            f"{c}*({self.label})",
        )


def from_coeffs(coeffs, sup_norm_bound: float | None = None, label: str = "") -> DiskFunction:
    """Finitely supported series (a polynomial in z)."""
    arr = np.asarray(coeffs, dtype=complex)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("coeffs must be a nonempty 1-D sequence")
    absc = np.abs(arr)
    # suffix sums: tail(K) = sum of |c_k| for k > K
    suffix = np.concatenate([np.cumsum(absc[::-1])[::-1], [0.0]])

    def coeff_fn(k: int) -> complex:
        return arr[k] if k < arr.size else 0.0

    def tail_fn(K: int) -> float:
        return float(suffix[K + 1]) if K + 1 < suffix.size else 0.0

    return DiskFunction(coeff_fn, tail_fn, float(absc.sum()), sup_norm_bound, label)


def identity_function() -> DiskFunction:
    """The coordinate function z."""
    return from_coeffs([0.0, 1.0], sup_norm_bound=1.0, label="z")


def monomial(n: int, c: complex = 1.0) -> DiskFunction:
    """c * z^n."""
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[n] = c
    return from_coeffs(coeffs, sup_norm_bound=abs(c), label=f"{c}*z^{n}")


def constant(c: complex) -> DiskFunction:
    return from_coeffs([c], sup_norm_bound=abs(c), label=f"{c}")


def binomial_abs_coefficients(s: float, K: int) -> np.ndarray:
    """|binomial(s, k)| for k = 0..K via the stable ratio recurrence.

    For 0 < s < 1 the ratio |C(s,k+1)/C(s,k)| = (k - s)/(k + 1) holds for
    k >= 1, avoiding gamma-function cancellation entirely.
    """
    a = np.empty(K + 1)
    a[0] = 1.0
    if K >= 1:
        a[1] = s
    for k in range(1, K):
        a[k + 1] = a[k] * (k - s) / (k + 1)
    return a


def half_f_power(s: float) -> DiskFunction:
    """The series of ((1 - z)/2)^s for 0 < s <= 1.

    Coefficients are c_k = 2^{-s} (-1)^k binomial(s, k); they are absolutely
    summable with sum exactly 2^{1-s}, and the coefficient tail admits the
    closed form sum_{k>K} |c_k| = 2^{-s} (K+1) |binomial(s, K+1)| / s for
    K >= 1, which makes truncation bounds exact rather than heuristic.
    The sup norm over the closed disk is exactly 1.
    """
    if not (0.0 < s <= 1.0):
        raise ValueError(f"exponent must lie in (0, 1], got {s}")
    if s == 1.0:
        return from_coeffs([0.5, -0.5], sup_norm_bound=1.0, label="(1-z)/2")
    scale = 2.0 ** (-s)
    cache = [1.0, s]  # binomial(s, k), computed by the stable ratio recurrence

    def _binom(k: int) -> float:
        while len(cache) <= k:
            j = len(cache) - 1
            cache.append(cache[-1] * (s - j) / (j + 1))
        return cache[k]

    def coeff_fn(k: int) -> complex:
        sign = 1.0 if k % 2 == 0 else -1.0
        return complex(scale * sign * _binom(k))

    def tail_fn(K: int) -> float:
        if K < 1:
            # total mass is 2*scale; the K=0 tail drops only |c_0| = scale
            return scale if K == 0 else 2.0 * scale
        return scale * (K + 1) * abs(_binom(K + 1)) / s

    return DiskFunction(coeff_fn, tail_fn, scale * 2.0, 1.0, f"((1-z)/2)^{s}")


@dataclass(frozen=True)
class BidiskFunction:
    """Two-variable series sum c_{nm} z^n w^m with finitely stored block.

    ``block[n, m]`` holds the exact coefficient c_{nm} for indices inside
    the stored rectangle; ``out_mass`` is a rigorous upper bound on the
    absolute coefficient mass living entirely outside it.  Every monomial
    counted by ``out_mass`` has degree exceeding the stored range in at
    least one variable, so evaluation at interior contractions suppresses
    it geometrically.
    """

    block: np.ndarray
    out_mass: float = 0.0
    sup_norm_bound: float | None = None
    label: str = ""

    @property
    def abs_sum(self) -> float:
        return float(np.abs(self.block).sum() + self.out_mass)

    def box_tail(self, K: int) -> float:
        """Absolute mass of stored coefficients outside the [0..K]^2 box."""
        n1, n2 = self.block.shape
        a = np.abs(self.block)
        inside = a[: min(K + 1, n1), : min(K + 1, n2)].sum()
        return float(a.sum() - inside)


def from_coeffs_2d(coeffs, sup_norm_bound: float | None = None, label: str = "") -> BidiskFunction:
    """Finitely supported two-variable series (a polynomial in z and w)."""
    arr = np.asarray(coeffs, dtype=complex)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError("coeffs must be a nonempty 2-D array")
    return BidiskFunction(arr.copy(), 0.0, sup_norm_bound, label)


def from_product(g: DiskFunction, h: DiskFunction, max_degree: int = DEFAULT_COMPOSE_DEGREE,
                 label: str = "") -> BidiskFunction:
    """The separable function g(z) h(w), stored to ``max_degree`` per axis."""
    gu = g.prefix(max_degree)
    hv = h.prefix(max_degree)
    block = np.outer(gu, hv)
    stored = float(np.abs(block).sum())
    out = max(0.0, g.abs_sum * h.abs_sum - stored)
    bound = None
    if g.sup_norm_bound is not None and h.sup_norm_bound is not None:
        bound = g.sup_norm_bound * h.sup_norm_bound
    return BidiskFunction(block, out, bound, label or f"({g.label})*({h.label})")


def _check_unit_factor(g: DiskFunction, name: str) -> None:
    bound = g.sup_norm_bound if g.sup_norm_bound is not None else g.abs_sum
    if bound > 1.0 + 1e-12:
        raise NormBoundExceeded(
            f"composition factor {name} has sup-norm bound {bound} > 1"
        )


def compose(f: BidiskFunction, g: DiskFunction, h: DiskFunction,
            max_degree: int = DEFAULT_COMPOSE_DEGREE) -> BidiskFunction:
    """Formal series of f(g(z), h(w)) for finitely supported f.

    Powers of g and h are computed by truncated convolution; coefficients of
    degree at most ``max_degree`` are exact (a degree-j coefficient of g^n
    only involves factor coefficients of index <= j), and the discarded mass
    is accounted into ``out_mass`` from the factors' absolute sums.

    :raises NormBoundExceeded: if g or h is not bounded by one in sup norm.
    :raises NonConvergence: if f carries coefficient mass outside its stored
        block (composition of infinite outer series is not supported).
    """
    _check_unit_factor(g, "g")
    _check_unit_factor(h, "h")
    if f.out_mass > 0.0:
        raise NonConvergence("compose requires a finitely supported outer function")
    L = int(max_degree)
    n_max, m_max = f.block.shape
    gp = g.prefix(L)
    hp = h.prefix(L)

    def truncated_powers(fn: DiskFunction,
                         prefix: np.ndarray,
                         count: int) -> tuple[list[np.ndarray], list[float]]:
        # Track a true upper bound on the coefficient mass of fn^n beyond
        # degree L: the spill of each kept convolution, plus the kept mass
        # hitting fn's own stored-out tail, plus the previous tail times
        # fn's full mass.  A polynomial power of degree <= L gets exactly
        # zero tail this way, rather than the (often large) slack between
        # abs_sum(fn)^n and the kept mass.
        tail0 = max(0.0, fn.abs_sum - float(np.abs(prefix).sum()))
        powers = [np.zeros(L + 1, dtype=complex)]
        powers[0][0] = 1.0
        tails = [0.0]
        for _ in range(1, count):
            conv = np.convolve(powers[-1], prefix)
            spill = float(np.abs(conv[L + 1:]).sum())
            kept_mass = float(np.abs(powers[-1]).sum())
            tails.append(spill + kept_mass * tail0 + tails[-1] * fn.abs_sum)
            powers.append(conv[: L + 1])
        return powers, tails

    g_pows, g_tails = truncated_powers(g, gp, n_max)
    h_pows, h_tails = truncated_powers(h, hp, m_max)

    block = np.zeros((L + 1, L + 1), dtype=complex)
    out = 0.0
    for n in range(n_max):
        for m in range(m_max):
            c = f.block[n, m]
            if c == 0:
                continue
            block += c * np.outer(g_pows[n], h_pows[m])
            out += abs(c) * (g_tails[n] * (h.abs_sum ** m)
                             + (g.abs_sum ** n) * h_tails[m])
    bound = None
    if f.sup_norm_bound is not None:
        bound = f.sup_norm_bound  # g, h map the disk into itself
    return BidiskFunction(block, out, bound, f"compose({f.label};{g.label},{h.label})")


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def _contraction_radius(T: np.ndarray, tol: TolerancePolicy, what: str) -> float:
    norm = operator_norm(T)
    if norm > 1.0 + tol.norm_tol:
        raise NotAContraction(f"{what} has operator norm {norm} > 1")
    return min(norm, 1.0)


def eval_disk(h: DiskFunction, T, tol: TolerancePolicy | None = None,
              tail_target: float = DEFAULT_TAIL_TARGET,
              max_terms: int = DEFAULT_MAX_TERMS) -> np.ndarray:
    """Evaluate sum c_k T^k with the truncation tail below ``tail_target``.

    The truncation order doubles until the weighted bound
    ``abs_tail(K) * min(1, ||T||^{K+1})`` meets the target; summation is a
    Horner recurrence in fixed order, so results are bit-reproducible.

    :raises NotAContraction: if ||T|| > 1 + norm_tol.
    :raises NonConvergence: if no admissible truncation exists within
        ``max_terms`` (e.g. a boundary-norm argument against a slowly
        decaying coefficient tail).
    """
    T = as_matrix(T)
    tol = tol or TolerancePolicy.default()
    r = _contraction_radius(T, tol, "argument")
    K = None
    k = 1
    while k <= max_terms:
        bound = h.abs_tail(k) * min(1.0, r ** (k + 1))
        if bound <= tail_target:
            K = k
            break
        k *= 2
    if K is None:
        raise NonConvergence(
            f"series tail cannot reach {tail_target} within {max_terms} terms "
            f"at argument norm {r}"
        )
    coeffs = h.prefix(K)
    d = T.shape[0]
    eye = np.eye(d, dtype=complex)
    acc = coeffs[K] * eye
    for j in range(K - 1, -1, -1):
        acc = T @ acc + coeffs[j] * eye
    return acc


def eval_bidisk(f: BidiskFunction, S, T, tol: TolerancePolicy | None = None,
                tail_target: float = DEFAULT_TAIL_TARGET,
                max_box: int = 4000) -> np.ndarray:
    """Evaluate sum c_{nm} S^n T^m for commuting contractions S, T.

    :raises NotAContraction: if either norm exceeds 1 + norm_tol.
    :raises NotCommuting: if the arguments fail the commutation test.
    :raises NonConvergence: if no stored box meets the tail target.
    """
    S = as_matrix(S)
    T = as_matrix(T)
    tol = tol or TolerancePolicy.default()
    r1 = _contraction_radius(S, tol, "first argument")
    r2 = _contraction_radius(T, tol, "second argument")
    if not commutes(S, T, tol):
        raise NotCommuting("bidisk calculus requires commuting arguments")
    r = max(r1, r2)
    n1, n2 = f.block.shape
    stored = max(n1, n2) - 1
    K = None
    k = 1
    while k <= min(stored, max_box):
        bound = f.box_tail(k) * min(1.0, r ** (k + 1)) + f.out_mass * min(1.0, r ** (stored + 1))
        if bound <= tail_target:
            K = k
            break
        k *= 2
    if K is None:
        # final attempt with the full stored block
        bound = f.out_mass * min(1.0, r ** (stored + 1))
        if bound <= tail_target and stored <= max_box:
            K = stored
        else:
            raise NonConvergence(
                f"bidisk tail cannot reach {tail_target} within the stored "
                f"{n1}x{n2} block at argument norm {r}"
            )
    K1 = min(K, n1 - 1)
    K2 = min(K, n2 - 1)
    block = f.block[: K1 + 1, : K2 + 1]
    d = T.shape[0]
    # stack of T powers: (K2+1, d, d)
    t_pows = np.empty((K2 + 1, d, d), dtype=complex)
    t_pows[0] = np.eye(d, dtype=complex)
    for m in range(1, K2 + 1):
        t_pows[m] = t_pows[m - 1] @ T
    inner = np.tensordot(block, t_pows, axes=(1, 0))  # (K1+1, d, d)
    acc = inner[K1]
    for n in range(K1 - 1, -1, -1):
        acc = S @ acc + inner[n]
    return acc


def boundary_grid_values(h: DiskFunction, n_grid: int = 4096,
                         tail_target: float = 1e-12,
                         max_terms: int = DEFAULT_MAX_TERMS) -> np.ndarray:
    """Values of h on a uniform grid of the unit circle.

    Used for sup-norm and boundary-positivity estimates.  The truncation
    uses the raw coefficient tail (|z| = 1), so slowly decaying series may
    refuse; polynomials and fast-decaying tails are exact to the target.
    """
    K = None
    k = 1
    while k <= max_terms:
        if h.abs_tail(k) <= tail_target:
            K = k
            break
        k *= 2
    if K is None:
        raise NonConvergence(
            f"coefficient tail cannot reach {tail_target} within {max_terms} terms"
        )
    coeffs = h.prefix(K)
    z = np.exp(2j * np.pi * np.arange(n_grid) / n_grid)
    # Horner on the grid, vectorized over points
    acc = np.full(n_grid, coeffs[K], dtype=complex)
    for j in range(K - 1, -1, -1):
        acc = acc * z + coeffs[j]
    return acc
