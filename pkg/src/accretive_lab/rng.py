"""Deterministic per-trial random streams and matrix samplers.

Stream derivation
-----------------
Each trial owns an independent counter-based stream: the Philox4x64
generator keyed by the first 16 bytes (little-endian) of
``SHA-256("{seed}:{stream_id}:{trial_index}")``.  Streams therefore depend
only on the three derivation inputs, not on execution order, which is what
makes suite reports byte-identical across runs and platforms.
"""
from __future__ import annotations

import hashlib

import numpy as np

__all__ = [
    "trial_rng",
    "complex_gaussian",
    "random_unitary",
    "random_contraction",
    "random_half_f",
    "random_accretive",
    "random_psd",
]


def trial_rng(seed: int, stream_id: str, trial_index: int) -> np.random.Generator:
    """Return the Generator for one (seed, stream, trial) triple.

    :param seed: the suite-level 64-bit seed.
    :param stream_id: a short label, typically a property id like ``"P4"``.
    :param trial_index: 0-based trial counter within the stream.
    """
    tag = f"{int(seed)}:{stream_id}:{int(trial_index)}".encode("utf-8")
    key = int.from_bytes(hashlib.sha256(tag).digest()[:16], "little")
    return np.random.Generator(np.random.Philox(key=key))


def complex_gaussian(rng: np.random.Generator, d: int) -> np.ndarray:
    """d x d matrix with independent standard-complex-normal entries."""
    return (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2.0)


def random_unitary(rng: np.random.Generator, d: int) -> np.ndarray:
    """Haar-ish unitary via QR of a complex Gaussian with phase fix."""
    q, r = np.linalg.qr(complex_gaussian(rng, d))
    ph = np.diag(r).copy()
    ph = ph / np.abs(np.where(ph == 0, 1.0, ph))
    return q * ph


def random_contraction(rng: np.random.Generator, d: int, radius: float = 1.0) -> np.ndarray:
    """Random matrix rescaled to operator norm exactly ``radius``."""
    c = complex_gaussian(rng, d)
    norm = np.linalg.norm(c, 2)
    if norm == 0.0:  # essentially impossible; keep the contract anyway
        return np.zeros((d, d), dtype=complex)
    return c * (radius / norm)


def random_half_f(rng: np.random.Generator, d: int, radius: float = 0.95) -> np.ndarray:
    """Sample from {a : ||1 - 2a|| <= radius <= 1} as a = (1 - c)/2.

    ``radius < 1`` keeps the sample strictly inside the set, where series
    evaluations converge geometrically; ``radius = 1`` samples the full set
    up to its boundary.
    """
    c = random_contraction(rng, d, radius=radius * float(rng.uniform(0.1, 1.0)))
    return (np.eye(d, dtype=complex) - c) / 2.0


def random_accretive(rng: np.random.Generator, d: int, singular: bool = False) -> np.ndarray:
    """Random matrix with positive-semidefinite Hermitian part.

    Draws a complex Gaussian and shifts it by a real multiple of the
    identity so the Hermitian part becomes PSD with a random nonnegative
    floor.  With ``singular=True`` the result is conjugated into a unitary
    frame after a block of exact zeros is prepended, producing an accretive
    matrix with nontrivial kernel (rank ``d - k`` for random ``k >= 1``).
    """
    g = complex_gaussian(rng, d)
    h = (g + g.conj().T) / 2.0
    lam = float(np.linalg.eigvalsh(h)[0])
    floor = float(rng.uniform(0.0, 0.5))
    a = g + (max(0.0, -lam) + floor) * np.eye(d)
    if not singular or d == 1:
        return a
    k = int(rng.integers(1, d))  # kernel dimension
    sub = a[k:, k:]
    hs = (sub + sub.conj().T) / 2.0
    lam_s = float(np.linalg.eigvalsh(hs)[0])
    block = np.zeros((d, d), dtype=complex)
    # the invertible corner must be strictly accretive on its own
    block[k:, k:] = sub + (max(0.0, -lam_s) + 0.1 + floor) * np.eye(d - k)
    u = random_unitary(rng, d)
    return u @ block @ u.conj().T


def random_psd(rng: np.random.Generator, d: int, rank: int | None = None) -> np.ndarray:
    """Random PSD matrix ``m* m`` with optional rank control."""
    r = d if rank is None else max(1, min(rank, d))
    m = (rng.standard_normal((r, d)) + 1j * rng.standard_normal((r, d))) / np.sqrt(2.0)
    return m.conj().T @ m
