"""Randomized verification catalogue.

Seventeen reproducible property checks (P1..P17) over seeded random
inputs, each reporting margins against documented tolerances:

* P1/P2    scalar cardioid region vs. products, squares, and square roots
* P3..P7   fractional-root products of commuting matrices staying in
           half-F / staying accretive, with n-fold and weighted variants
* P8..P10  sector arithmetic of roots, including rotated sectors and the
           rotation identity (e^{-i theta} a)^s = e^{-i s theta} a^s
* P11      monotonicity of Re(x^s) in the exponent on half-F, plus the
           frozen 2x2 accretive counterexample showing it fails off half-F
* P12      power laws: semigroup, adjoint, positive scalars, rotation,
           exponent continuity, root uniqueness window, accretivity
* P13      support projections: left/right agreement, the resolvent-
           transform route, and the x^{1/n} limit
* P14      Choi/complete-positivity/accretivity-preservation round trip,
           Stinespring reconstruction, positivity-via-rotations, and the
           extension of maps to A + A*
* P15      a frozen noncommuting half-F pair whose square roots multiply
           to a non-accretive product (existence witness)
* P16      disk/bidisk functional calculus: composition law, norm bounds,
           positivity transfer, and the series route to square roots
* P17      accretive matrices as limits of the scaled-F cone, with the
           explicit shift bound and minimal-constant membership

Every random draw goes through the counter-based per-trial generator, so
an identical :class:`TrialConfig` reproduces byte-identical reports.
"""
from __future__ import annotations

import enum
import hashlib
import math
import time
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .cones import min_c_constant
from .errors import IllDefinedExtension, InputParseError, UnknownProperty
from .funcalc import (
    BidiskFunction,
    DiskFunction,
    boundary_grid_values,
    compose,
    eval_bidisk,
    eval_disk,
    from_coeffs,
    from_coeffs_2d,
    half_f_power,
)
from .matcore import (
    TolerancePolicy,
    dagger,
    hermitian_part,
    identity,
    matrix_digest,
    operator_norm,
    stack_digest,
)
from .numrange import (
    avoids_negative_reals,
    centered_half_angle,
    max_angular_deviation,
    sector_excess,
    sector_fit,
)
from .powers import PowerAlgorithm, principal_log, principal_power
from .rcp import (
    choi,
    extend_to_selfadjoint,
    full_algebra,
    ikhuh_check,
    is_cp,
    map_from_blocks,
    map_from_function,
    matrix_subspace,
    rcp_check,
    stinespring,
    subspace_map,
)
from .reporting import MarginLedger, PropertyReport
from .rng import (
    complex_gaussian,
    random_accretive,
    random_contraction,
    random_psd,
    trial_rng,
)
from .support import (
    principal_angle_gap,
    root_limit,
    support_projection,
    support_via_cayley,
)

__all__ = [
    "FamilyTarget",
    "TrialConfig",
    "ALL_PROPERTY_IDS",
    "gen_commuting_family",
    "run_property",
    "run_suite",
    "config_from_dict",
    "p15_witness",
    "P15_SEED",
    "P15_TRIAL",
    "P15_FLOOR",
]

ALL_PROPERTY_IDS = tuple(f"P{i}" for i in range(1, 18))

# Absolute accuracy floor of shift-ladder power values on singular inputs:
# the extrapolation over shifts (1e-6, 1e-8, 1e-10) leaves debris of order
# 1e-7..1e-6 at zero eigenvalues, so identities between ladder outputs are
# compared against this rather than the unshifted tolerances.
_LADDER_ACCURACY = 2e-6

# Frozen noncommuting-failure fixture: the (seed, stream, trial) coordinates
# of a half-F pair whose square roots multiply to a non-accretive product.
# Found by a 120k-trial brute-force sweep of the _p15_pair stream and
# pinned here; the pair regenerates bit-identically through trial_rng.
P15_SEED = 7
P15_TRIAL = 29780
P15_FLOOR = -7.013920045532723e-3  # lambda_min(Re(a^{1/2} b^{1/2})) at the fixture


class FamilyTarget(enum.Enum):
    """Target set for generated commuting families."""

    CONTRACTION = "contraction"
    HALF_F = "half_f"
    ACCRETIVE = "accretive"


@dataclass(frozen=True)
class TrialConfig:
    """Configuration of a verification run.

    Identical configs produce byte-identical serialized reports.

    :param dims: matrix sizes cycled through by matrix-valued properties.
    :param trials: per-property trial budget (scalar properties read it as
        a sample count).
    """

    seed: int = 42
    dims: tuple[int, ...] = (1, 2, 3, 4, 5, 6)
    trials: int = 200
    tol: TolerancePolicy = field(default_factory=TolerancePolicy.default)
    property_ids: tuple[str, ...] = ALL_PROPERTY_IDS

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if not self.dims or any(int(d) < 1 for d in self.dims):
            raise ValueError("dims must be positive integers")


def config_from_dict(payload: dict, base: TrialConfig | None = None) -> TrialConfig:
    """Build a TrialConfig from a JSON-style dict.

    Recognized keys: seed, dims, trials, tolerances (a TolerancePolicy
    field subset), properties.
    """
    base = base or TrialConfig()
    tol = base.tol
    if "tolerances" in payload:
        merged = {
            "psd_tol": tol.psd_tol,
            "norm_tol": tol.norm_tol,
            "angle_tol": tol.angle_tol,
            "commute_tol": tol.commute_tol,
        }
        merged.update(payload["tolerances"])
        tol = TolerancePolicy(**merged)
    return TrialConfig(
        seed=int(payload.get("seed", base.seed)),
        dims=tuple(int(d) for d in payload.get("dims", base.dims)),
        trials=int(payload.get("trials", base.trials)),
        tol=tol,
        property_ids=tuple(payload.get("properties", base.property_ids)),
    )


def _digest_values(*values) -> str:
    text = ":".join(repr(v) for v in values)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def gen_commuting_family(d: int, n: int, target: FamilyTarget, rng) -> list[np.ndarray]:
    """n mutually commuting d x d matrices in the target set.

    All family members are polynomials (degree drawn from 1..d) of one
    shared random matrix, hence commuting by construction; the polynomial
    values are then scaled or shifted into the target set, which keeps the
    membership margin nonnegative up to rounding:

    * contractions by exact norm scaling to a random radius < 1,
    * half-F elements as (1 - c)/2 for such a contraction c,
    * accretive elements by adding (|min eigenvalue of the Hermitian
      part| + positive slack) times the identity.
    """
    if n < 1:
        raise ValueError("family size must be positive")
    M = complex_gaussian(rng, d)
    M = M / max(1.0, operator_norm(M))
    powers = [identity(d)]
    for _ in range(max(1, d)):
        powers.append(powers[-1] @ M)
    out: list[np.ndarray] = []
    for _ in range(n):
        deg = int(rng.integers(1, d + 1))
        coeffs = (rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1))
        A = sum(c * powers[k] for k, c in enumerate(coeffs))
        nrm = operator_norm(A)
        if nrm < 1e-13:
            A = powers[1].copy()
            nrm = operator_norm(A)
        if target is FamilyTarget.CONTRACTION:
            radius = float(rng.uniform(0.05, 0.98))
            out.append(A * (radius / nrm))
        elif target is FamilyTarget.HALF_F:
            radius = float(rng.uniform(0.05, 0.98))
            c = A * (radius / nrm)
            out.append((identity(d) - c) / 2.0)
        else:
            lam = float(np.min(np.linalg.eigvalsh(hermitian_part(A))))
            shift = max(0.0, -lam) + float(rng.uniform(0.05, 0.5))
            out.append(A + shift * identity(d))
    return out


def _dim(cfg: TrialConfig, k: int, minimum: int = 1) -> int:
    return max(minimum, int(cfg.dims[k % len(cfg.dims)]))


def _sample_half_f_scalars(rng, m: int) -> np.ndarray:
    """m points of the scalar half-F disk |1 - 2z| <= 1, uniform in area."""
    radii = np.sqrt(rng.uniform(0.0, 1.0, m))
    phases = np.exp(2j * np.pi * rng.uniform(0.0, 1.0, m))
    return (1.0 - radii * phases) / 2.0


def _sample_cardioid_scalars(rng, m: int) -> np.ndarray:
    """m points of the cardioid region, uniform (theta, r) with rejection."""
    out = np.empty(m, dtype=complex)
    have = 0
    while have < m:
        draw = max(64, 2 * (m - have))
        theta = rng.uniform(-np.pi, np.pi, draw)
        r = rng.uniform(0.0, 1.0, draw)
        ok = r <= 0.5 * np.cos(theta) + 0.5
        pts = (r[ok] * np.exp(1j * theta[ok]))[: m - have]
        out[have:have + len(pts)] = pts
        have += len(pts)
    return out


# ----------------------------------------------------------------- P1/P2


def _prop_p1(cfg: TrialConfig, ledger: MarginLedger) -> int:
    executed = 0
    chunk_idx = 0
    while executed < cfg.trials:
        m = min(1000, cfg.trials - executed)
        rng = trial_rng(cfg.seed, "P1", chunk_idx)
        x = _sample_half_f_scalars(rng, m)
        y = _sample_half_f_scalars(rng, m)
        for label, w in (("product", x * y), ("square", x * x)):
            bound = 0.5 * np.cos(np.angle(w)) + 0.5
            margin = float(np.min(bound - np.abs(w)))
            ledger.add(_digest_values("P1", chunk_idx, label), margin, 1e-12)
        executed += m
        chunk_idx += 1
    # Sharpness on the half-F boundary: x = cos(t) e^{it} squares exactly
    # onto the cardioid boundary.
    t = np.linspace(-np.pi / 2, np.pi / 2, 721)
    x = np.cos(t) * np.exp(1j * t)
    w = x * x
    gap = np.abs(np.abs(w) - (0.5 * np.cos(np.angle(w)) + 0.5))
    # near t = +-pi/2 the square lands at the cusp, where angle() flips
    # sign harmlessly; the bound is even in the angle so no care needed
    ledger.add(_digest_values("P1", "boundary"), -float(np.max(gap)), 1e-12)
    return executed


def _prop_p2(cfg: TrialConfig, ledger: MarginLedger) -> int:
    executed = 0
    chunk_idx = 0
    while executed < cfg.trials:
        m = min(1000, cfg.trials - executed)
        rng = trial_rng(cfg.seed, "P2", chunk_idx)
        z = _sample_cardioid_scalars(rng, m)
        roots = np.sqrt(z)  # principal branch
        margin = float(np.min(1.0 - np.abs(1.0 - 2.0 * roots)))
        ledger.add(_digest_values("P2", chunk_idx), margin, 1e-12)
        executed += m
        chunk_idx += 1
    return executed


# ------------------------------------------------------------- P3 .. P7


def _prop_p3(cfg: TrialConfig, ledger: MarginLedger) -> int:
    for k in range(cfg.trials):
        rng = trial_rng(cfg.seed, "P3", k)
        d = _dim(cfg, k)
        a = gen_commuting_family(d, 1, FamilyTarget.HALF_F, rng)[0]
        b = complex(_sample_half_f_scalars(rng, 1)[0])
        ab = b * a
        ok = avoids_negative_reals(ab, cfg.tol)
        ledger.add(matrix_digest(ab), cfg.tol.psd_tol if ok else -1.0,
                   cfg.tol.psd_tol)
        if not ok:
            continue
        root = principal_power(ab, 0.5, tol=cfg.tol, check_range=False).value
        margin = 1.0 - operator_norm(identity(d) - 2.0 * root)
        ledger.add(matrix_digest(root), margin, 1e-8)
    return cfg.trials


def _prop_p4(cfg: TrialConfig, ledger: MarginLedger) -> int:
    for k in range(cfg.trials):
        rng = trial_rng(cfg.seed, "P4", k)
        d = _dim(cfg, k)
        a, b = gen_commuting_family(d, 2, FamilyTarget.HALF_F, rng)
        ra = principal_power(a, 0.5, tol=cfg.tol, check_range=False).value
        rb = principal_power(b, 0.5, tol=cfg.tol, check_range=False).value
        prod = ra @ rb
        margin = 1.0 - operator_norm(identity(d) - 2.0 * prod)
        ledger.add(stack_digest([a, b]), margin, 1e-8)
    return cfg.trials


def _prop_p5(cfg: TrialConfig, ledger: MarginLedger) -> int:
    for k in range(cfg.trials):
        rng = trial_rng(cfg.seed, "P5", k)
        d = _dim(cfg, k)
        a, b = gen_commuting_family(d, 2, FamilyTarget.ACCRETIVE, rng)
        ra = principal_power(a, 0.5, tol=cfg.tol, check_range=False).value
        rb = principal_power(b, 0.5, tol=cfg.tol, check_range=False).value
        prod = ra @ rb
        margin = float(np.min(np.linalg.eigvalsh(hermitian_part(prod))))
        ledger.add(stack_digest([a, b]), margin,
                   1e-8 * max(1.0, operator_norm(prod)))
    return cfg.trials


def _prop_p6(cfg: TrialConfig, ledger: MarginLedger) -> int:
    for k in range(cfg.trials):
        rng = trial_rng(cfg.seed, "P6", k)
        d = _dim(cfg, k)
        n = 2 + (k % 4)  # 2..5 factors
        fam_h = gen_commuting_family(d, n, FamilyTarget.HALF_F, rng)
        prod_h = identity(d)
        for a in fam_h:
            prod_h = prod_h @ principal_power(a, 1.0 / n, tol=cfg.tol,
                                              check_range=False).value
        ledger.add(stack_digest(fam_h),
                   1.0 - operator_norm(identity(d) - 2.0 * prod_h), 1e-8)
        fam_r = gen_commuting_family(d, n, FamilyTarget.ACCRETIVE, rng)
        prod_r = identity(d)
        for a in fam_r:
            prod_r = prod_r @ principal_power(a, 1.0 / n, tol=cfg.tol,
                                              check_range=False).value
        ledger.add(stack_digest(fam_r),
                   float(np.min(np.linalg.eigvalsh(hermitian_part(prod_r)))),
                   1e-8 * max(1.0, operator_norm(prod_r)))
    return cfg.trials


def _exponents(rng, n: int) -> np.ndarray:
    """n positive exponents with sum strictly below 1."""
    return rng.dirichlet(np.ones(n)) * float(rng.uniform(0.2, 0.999))


def _prop_p7(cfg: TrialConfig, ledger: MarginLedger) -> int:
    for k in range(cfg.trials):
        rng = trial_rng(cfg.seed, "P7", k)
        d = _dim(cfg, k)
        n = 2 + (k % 3)
        s = _exponents(rng, n)
        fam_h = gen_commuting_family(d, n, FamilyTarget.HALF_F, rng)
        prod_h = identity(d)
        for a, sk in zip(fam_h, s):
            prod_h = prod_h @ principal_power(a, float(sk), tol=cfg.tol,
                                              check_range=False).value
        ledger.add(stack_digest(fam_h),
                   1.0 - operator_norm(identity(d) - 2.0 * prod_h), 1e-8)
        fam_r = gen_commuting_family(d, n, FamilyTarget.ACCRETIVE, rng)
        prod_r = identity(d)
        for a, sk in zip(fam_r, s):
            prod_r = prod_r @ principal_power(a, float(sk), tol=cfg.tol,
                                              check_range=False).value
        ledger.add(stack_digest(fam_r),
                   float(np.min(np.linalg.eigvalsh(hermitian_part(prod_r)))),
                   1e-8 * max(1.0, operator_norm(prod_r)))
    return cfg.trials


# ------------------------------------------------------------ P8 .. P10


def _prop_p8(cfg: TrialConfig, ledger: MarginLedger) -> int:
    for k in range(cfg.trials):
        rng = trial_rng(cfg.seed, "P8", k)
        d = _dim(cfg, k)
        x, y = gen_commuting_family(d, 2, FamilyTarget.ACCRETIVE, rng)
        phi = centered_half_angle(x, cfg.tol)
        psi = centered_half_angle(y, cfg.tol)
        rx = principal_power(x, 0.5, tol=cfg.tol, check_range=False).value
        ry = principal_power(y, 0.5, tol=cfg.tol, check_range=False).value
        fitted = centered_half_angle(rx @ ry, cfg.tol)
        ledger.add(stack_digest([x, y]), (phi + psi) / 2.0 - fitted, 1e-6)
    return cfg.trials


def _prop_p9(cfg: TrialConfig, ledger: MarginLedger) -> int:
    for k in range(cfg.trials):
        rng = trial_rng(cfg.seed, "P9", k)
        d = _dim(cfg, k)
        n = 2 + (k % 3)
        s = _exponents(rng, n)
        fam = gen_commuting_family(d, n, FamilyTarget.ACCRETIVE, rng)
        target = 0.0
        prod = identity(d)
        for a, sk in zip(fam, s):
            target += float(sk) * centered_half_angle(a, cfg.tol)
            prod = prod @ principal_power(a, float(sk), tol=cfg.tol,
                                          check_range=False).value
        fitted = centered_half_angle(prod, cfg.tol)
        ledger.add(stack_digest(fam), target - fitted, 1e-6)
    return cfg.trials


def _prop_p10(cfg: TrialConfig, ledger: MarginLedger) -> int:
    for k in range(cfg.trials):
        rng = trial_rng(cfg.seed, "P10", k)
        d = _dim(cfg, k)
        n = 2 + (k % 2)
        s = _exponents(rng, n)
        base = gen_commuting_family(d, n, FamilyTarget.ACCRETIVE, rng)
        fam = []
        theta_target = 0.0
        phi_target = 0.0
        phis = []
        thetas = []
        for a, sk in zip(base, s):
            phi = centered_half_angle(a, cfg.tol)
            room = 0.9 * (np.pi / 2.0 - phi)
            theta = float(rng.uniform(-room, room))
            fam.append(np.exp(1j * theta) * a)
            phis.append(phi)
            thetas.append(theta)
            theta_target += float(sk) * theta
            phi_target += float(sk) * phi
        prod = identity(d)
        for a, sk in zip(fam, s):
            prod = prod @ principal_power(a, float(sk), tol=cfg.tol).value
        deviation = max_angular_deviation(prod, theta_target, cfg.tol)
        ledger.add(stack_digest(fam), phi_target - deviation, 1e-6)
        # rotation identity on the first factor
        a0 = fam[0]
        s0 = float(rng.uniform(0.05, 1.0))
        lhs = principal_power(np.exp(-1j * thetas[0]) * a0, s0, tol=cfg.tol,
                              check_range=False).value
        rhs = np.exp(-1j * s0 * thetas[0]) * principal_power(
            a0, s0, tol=cfg.tol).value
        ledger.add(matrix_digest(a0), -float(np.linalg.norm(lhs - rhs, 2)), 1e-8)
    return cfg.trials


# ------------------------------------------------------------------ P11

P11_COUNTEREXAMPLE_THRESHOLD = -1e-4
P11_COUNTEREXAMPLE_ROOT = 16
P11_COUNTEREXAMPLE_VALUE = -1.3934442814256e-4  # pinned regression value


def _counterexample_matrix() -> np.ndarray:
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    return np.array([[1.0, 1.0j], [1.0j, 0.0]], dtype=complex) / phi


def _prop_p11(cfg: TrialConfig, ledger: MarginLedger) -> int:
    for k in range(cfg.trials):
        rng = trial_rng(cfg.seed, "P11", k)
        d = _dim(cfg, k)
        x = gen_commuting_family(d, 1, FamilyTarget.HALF_F, rng)[0]
        lo, hi = np.sort(rng.uniform(0.02, 1.0, 2))
        xs = principal_power(x, float(lo), tol=cfg.tol, check_range=False).value
        xt = principal_power(x, float(hi), tol=cfg.tol, check_range=False).value
        margin = float(np.min(np.linalg.eigvalsh(hermitian_part(xs - xt))))
        ledger.add(matrix_digest(x), margin, 1e-8)

    # The frozen norm-one accretive counterexample: consecutive roots are
    # NOT monotone.  The extremal violation over root orders n <= 16 sits
    # at n = 16 and is pinned as a regression value.
    x0 = _counterexample_matrix()
    best = math.inf
    best_n = 0
    roots = {
        n: principal_power(x0, 1.0 / n, tol=cfg.tol, check_range=False).value
        for n in range(1, P11_COUNTEREXAMPLE_ROOT + 2)
    }
    for n in range(1, P11_COUNTEREXAMPLE_ROOT + 1):
        diff = roots[n + 1] - roots[n]
        lam = float(np.min(np.linalg.eigvalsh(hermitian_part(diff))))
        if lam < best:
            best, best_n = lam, n
    ledger.add(_digest_values("P11", "counterexample-witness"),
               P11_COUNTEREXAMPLE_THRESHOLD - best, 1e-12)
    ledger.add(_digest_values("P11", "counterexample-regression"),
               1e-9 - abs(best - P11_COUNTEREXAMPLE_VALUE), 1e-12)
    ledger.add(_digest_values("P11", "counterexample-argmin"),
               0.0 if best_n == P11_COUNTEREXAMPLE_ROOT else -1.0, 1e-12)
    return cfg.trials


# ------------------------------------------------------------------ P12


def _prop_p12(cfg: TrialConfig, ledger: MarginLedger) -> int:
    for k in range(cfg.trials):
        rng = trial_rng(cfg.seed, "P12", k)
        d = _dim(cfg, k)
        T = random_accretive(rng, d, singular=(k % 3 == 0 and d >= 2))
        scale = max(1.0, operator_norm(T))
        alpha = float(rng.uniform(0.05, 0.9))
        beta = float(rng.uniform(0.05, 1.0 - alpha))
        res_a = principal_power(T, alpha, tol=cfg.tol, check_range=False)
        res_b = principal_power(T, beta, tol=cfg.tol, check_range=False)
        res_ab = principal_power(T, alpha + beta, tol=cfg.tol,
                                 check_range=False)
        Ta, Tb, Tab = res_a.value, res_b.value, res_ab.value
        dig = matrix_digest(T)

        def acc(base: float, *results) -> float:
            # When the shift ladder engages (0 in the spectrum), the
            # extrapolated power carries an absolute accuracy floor near
            # _LADDER_ACCURACY; comparisons between such values cannot be
            # held to the unshifted tolerances.
            if any(r.shift_used > 0.0 for r in results):
                return max(base, _LADDER_ACCURACY)
            return base

        # semigroup
        ledger.add(dig + ":semigroup",
                   -float(np.linalg.norm(Ta @ Tb - Tab, 2)),
                   acc(1e-8, res_a, res_b, res_ab) * scale)
        # adjoint
        res_adj = principal_power(dagger(T), alpha, tol=cfg.tol,
                                  check_range=False)
        ledger.add(dig + ":adjoint",
                   -float(np.linalg.norm(res_adj.value - dagger(Ta), 2)),
                   acc(1e-9, res_adj, res_a) * scale)
        # positive scalar
        c = float(rng.uniform(0.2, 5.0))
        res_c = principal_power(c * T, alpha, tol=cfg.tol, check_range=False)
        ledger.add(dig + ":scalar",
                   -float(np.linalg.norm(res_c.value - (c ** alpha) * Ta, 2)),
                   acc(1e-9, res_c, res_a) * max(1.0, c) * scale)
        # rotation identity at the fitted sector axis
        theta = sector_fit(T, cfg.tol).theta
        s0 = float(rng.uniform(0.05, 1.0))
        res_rot = principal_power(np.exp(-1j * theta) * T, s0, tol=cfg.tol)
        res_s0 = principal_power(T, s0, tol=cfg.tol, check_range=False)
        rhs = np.exp(-1j * s0 * theta) * res_s0.value
        ledger.add(dig + ":rotation",
                   -float(np.linalg.norm(res_rot.value - rhs, 2)),
                   acc(1e-8, res_rot, res_s0) * scale)
        # exponent continuity (numerical modulus at step 1e-4)
        s1 = float(rng.uniform(0.15, 0.9))
        step = 1e-4
        near = principal_power(T, s1 + step, tol=cfg.tol,
                               check_range=False).value
        at = principal_power(T, s1, tol=cfg.tol, check_range=False).value
        ledger.add(dig + ":continuity",
                   0.02 * scale - float(np.linalg.norm(near - at, 2)),
                   1e-9 * scale)
        # uniqueness window of the n-th root, measured as distance to the
        # sector so that extrapolation debris near 0 (tiny magnitude,
        # arbitrary argument, angular shadow along hull edges) is weighed
        # by its size rather than its angle
        n_root = (2, 3, 5, 8)[k % 4]
        res_root = principal_power(T, 1.0 / n_root, tol=cfg.tol,
                                   check_range=False)
        scale_r = max(1.0, operator_norm(res_root.value))
        allow = acc(1e-6, res_root) * scale_r
        exc = sector_excess(res_root.value, np.pi / (2.0 * n_root))
        ledger.add(dig + f":window{n_root}", allow - exc, allow)
        # roots stay accretive
        ledger.add(dig + ":accretive",
                   float(np.min(np.linalg.eigvalsh(hermitian_part(Ta)))),
                   acc(1e-8, res_a) * max(1.0, operator_norm(Ta)))
    return cfg.trials


# ------------------------------------------------------------------ P13


def _prop_p13(cfg: TrialConfig, ledger: MarginLedger) -> int:
    schedule = (2, 8, 32, 128, 1024)
    for k in range(cfg.trials):
        rng = trial_rng(cfg.seed, "P13", k)
        d = _dim(cfg, k, minimum=2)
        x = random_accretive(rng, d, singular=(k % 2 == 1))
        scale = max(1.0, operator_norm(x))
        res = support_projection(x, cfg.tol)
        P = res.projection
        dig = matrix_digest(x)
        ledger.add(dig + ":gap", -res.principal_angle_gap, cfg.tol.angle_tol)
        ledger.add(dig + ":idempotent",
                   -float(np.linalg.norm(P @ P - P, 2)), 1e-10)
        ledger.add(dig + ":hermitian",
                   -float(np.linalg.norm(P - dagger(P), 2)), 1e-10)
        ledger.add(dig + ":carrier",
                   -max(float(np.linalg.norm(P @ x - x, 2)),
                        float(np.linalg.norm(x @ P - x, 2))), 1e-9 * scale)
        via = support_via_cayley(x, cfg.tol).projection
        ledger.add(dig + ":resolvent-route",
                   -float(np.linalg.norm(P - via, 2)), 1e-8)
        dists = dict(root_limit(x, schedule, cfg.tol))
        # rate: on the support, x^{1/n} = exp(L/n) with L the principal
        # log of the invertible compression, so the distance at n obeys
        # the hard bound ||exp(L/n) - I|| <= (||L||/n) e^{||L||/n}.  The
        # extrapolated roots of singular inputs carry kernel debris whose
        # amplification grows like n^2 (the shift sequence eps^{1/n}
        # flattens, so the extrapolation denominator shrinks like 1/n^2);
        # the allowance follows that scaling, anchored well below the true
        # distance at the largest n.
        rank = res.rank
        if rank == d:
            Q = np.eye(d, dtype=complex)
        else:
            Q = np.linalg.eigh(P)[1][:, d - rank:]
        L = principal_log(dagger(Q) @ x @ Q, tol=cfg.tol)
        c_hat = operator_norm(L)
        for n_chk in (128, 1024):
            bound = (c_hat / n_chk) * math.exp(c_hat / n_chk)
            if rank < d:
                bound += 1e-3 * (n_chk / 1024.0) ** 2
            ledger.add(dig + f":rate{n_chk}", bound - dists[n_chk], 1e-9)
        tail = [dists[n] for n in schedule[-3:]]
        ledger.add(dig + ":tail-decrease",
                   min(tail[i] - tail[i + 1] for i in range(len(tail) - 1)),
                   1e-10)
        # approximate identity: || x^{1/n} x - x || shrinking in the tail
        approx = []
        for n in schedule[-2:]:
            r = principal_power(x, 1.0 / n, tol=cfg.tol,
                                check_range=False).value
            approx.append(float(np.linalg.norm(r @ x - x, 2)))
        ledger.add(dig + ":approx-identity", approx[0] - approx[1], 1e-10)
        # negative control: rank-deficient non-accretive matrices have
        # genuinely different left/right supports
        if d >= 2 and k % 4 == 0:
            u, _ = np.linalg.qr(complex_gaussian(rng, d))
            v, _ = np.linalg.qr(complex_gaussian(rng, d))
            svals = np.concatenate([rng.uniform(0.5, 1.5, d - 1), [0.0]])
            y = u @ np.diag(svals) @ dagger(v)
            gap = principal_angle_gap(y, cfg.tol)
            ledger.add(matrix_digest(y) + ":control",
                       gap - 1e-3, cfg.tol.angle_tol)
    return cfg.trials


# ------------------------------------------------------------------ P14

# witness searches get the full budget; confirming a CP map stays clean
# needs far fewer samples per level
RCP_WITNESS_BUDGET = 2000
RCP_CLEAN_BUDGET = 250


def _random_cp_map(rng, d: int):
    r = int(rng.integers(1, d * d + 1))
    kraus = [complex_gaussian(rng, d) / math.sqrt(r) for _ in range(r)]

    def fn(x):
        return sum(K @ x @ dagger(K) for K in kraus)

    return map_from_function(d, fn)


def _perturb_choi_indefinite(rng, C: np.ndarray) -> np.ndarray:
    dim = C.shape[0]
    v = complex_gaussian(rng, dim)[:, 0]
    v = v / np.linalg.norm(v)
    eta = 0.1 * max(1.0, float(np.linalg.norm(C, 2)))
    t = float(np.real(np.conj(v) @ C @ v)) + eta
    return C - t * np.outer(v, np.conj(v))


def _project_onto_span(X: np.ndarray, ortho: np.ndarray, d: int) -> np.ndarray:
    """Blockwise orthogonal projection onto a subspace of M_d (HS inner
    product); ortho holds orthonormal vectorized basis columns."""
    n = X.shape[0] // d
    out = np.zeros_like(X)
    for p in range(n):
        for q in range(n):
            blk = X[p * d:(p + 1) * d, q * d:(q + 1) * d].reshape(-1)
            proj = ortho @ (np.conj(ortho.T) @ blk)
            out[p * d:(p + 1) * d, q * d:(q + 1) * d] = proj.reshape(d, d)
    return out


def _prop_p14(cfg: TrialConfig, ledger: MarginLedger) -> int:
    for k in range(cfg.trials):
        rng = trial_rng(cfg.seed, "P14", k)
        d = 2 + (k % 2)
        cp = _random_cp_map(rng, d)
        cp_choi = choi(cp)
        dig = _digest_values("P14", k)

        # CP side: PSD Choi and no accretivity-preservation failures
        ledger.add(dig + ":cp-psd",
                   float(np.min(np.linalg.eigvalsh(hermitian_part(cp_choi.matrix)))),
                   cfg.tol.psd_tol * max(1.0, operator_norm(cp_choi.matrix)))
        cp_report = rcp_check(cp, levels=d, trials=RCP_CLEAN_BUDGET,
                              seed=cfg.seed, tol=cfg.tol)
        ledger.add(dig + ":cp-preserves",
                   cfg.tol.psd_tol if cp_report.status == "pass" else -1.0,
                   cfg.tol.psd_tol)

        # Stinespring reconstruction and the norm identity
        fact = stinespring(cp_choi, cfg.tol)
        worst = 0.0
        for j in range(20):
            x = complex_gaussian(rng, d)
            err = float(np.linalg.norm(cp.apply(x) - fact.reconstruct(x), 2))
            worst = max(worst, err / max(1.0, operator_norm(x)))
        ledger.add(dig + ":stinespring-reconstruct", -worst, 1e-9)
        t_one = operator_norm(cp.apply(identity(d)))
        ledger.add(dig + ":cb-norm", -abs(fact.cb_norm - t_one), 1e-8)

        # non-CP side: indefinite Choi must be caught by the sampler
        bad = map_from_blocks(_perturb_choi_indefinite(rng, cp_choi.matrix), d, d)
        bad_choi = choi(bad)
        bad_is_cp = is_cp(bad_choi, cfg.tol)
        ledger.add(dig + ":noncp-detected",
                   cfg.tol.psd_tol if not bad_is_cp else -1.0, cfg.tol.psd_tol)
        bad_report = rcp_check(bad, levels=d, trials=RCP_WITNESS_BUDGET,
                               seed=cfg.seed, tol=cfg.tol)
        ledger.add(dig + ":noncp-witnessed",
                   cfg.tol.psd_tol if bad_report.status == "fail" else
                   -1.5 * cfg.tol.psd_tol,
                   cfg.tol.psd_tol)

        # positivity via rotations agrees with PSD-ness
        psd = random_psd(rng, d)
        herm = random_psd(rng, d) - (0.3 + float(rng.uniform(0.0, 1.0))) * identity(d)
        skew = hermitian_part(complex_gaussian(rng, d))
        if operator_norm(skew) < 1e-8:
            skew = np.diag([(-1.0) ** j for j in range(d)]).astype(complex)
        # imaginary part of norm one against a small real part: some
        # rotation in the test grid is guaranteed to expose indefiniteness
        skewed = 0.2 * random_psd(rng, d) + 0.2 * identity(d) \
            + 1j * skew / operator_norm(skew)
        ledger.add(dig + ":rot-psd",
                   cfg.tol.psd_tol if ikhuh_check(psd, tol=cfg.tol) else -1.0,
                   cfg.tol.psd_tol)
        indefinite = float(np.min(np.linalg.eigvalsh(herm))) < \
            -0.05 * max(1.0, operator_norm(herm))
        if indefinite:
            ledger.add(dig + ":rot-indefinite",
                       cfg.tol.psd_tol if not ikhuh_check(herm, tol=cfg.tol)
                       else -1.0, cfg.tol.psd_tol)
        ledger.add(dig + ":rot-nonnormal",
                   cfg.tol.psd_tol if not ikhuh_check(skewed, tol=cfg.tol)
                   else -1.0, cfg.tol.psd_tol)

        # extension to A + A* of a CP restriction stays positive
        G = complex_gaussian(rng, d)
        G = G / max(1.0, operator_norm(G))
        basis = [identity(d), G, G @ G]
        try:
            space = matrix_subspace(basis, cfg.tol)
        except InputParseError:
            # d = 2: G^2 is a combination of I and G, drop it
            space = matrix_subspace([identity(d), G], cfg.tol)
        restricted = subspace_map(space, [cp.apply(b) for b in space.basis],
                                  cp.codomain_dim)
        try:
            ext = extend_to_selfadjoint(restricted, cfg.tol)
        except IllDefinedExtension:
            ledger.add(dig + ":extension-defined", -1.0, cfg.tol.psd_tol)
            continue
        ledger.add(dig + ":extension-defined", cfg.tol.psd_tol, cfg.tol.psd_tol)
        ortho = np.linalg.qr(
            np.stack([b.reshape(-1) for b in ext.domain.basis], axis=1))[0]
        worst_pos = math.inf
        for n_level in (1, 2):
            for _ in range(8):
                m = np.zeros((n_level * d, n_level * d), dtype=complex)
                for b in ext.domain.basis:
                    m += np.kron(complex_gaussian(rng, n_level), b)
                X = _project_onto_span(m @ dagger(m), ortho, d)
                X = hermitian_part(X)
                lam = float(np.min(np.linalg.eigvalsh(X)))
                X = X + max(0.0, -lam) * np.eye(n_level * d, dtype=complex)
                img = ext.apply_block(X, cfg.tol)
                worst_pos = min(worst_pos, float(
                    np.min(np.linalg.eigvalsh(hermitian_part(img)))) /
                    max(1.0, operator_norm(img)))
        ledger.add(dig + ":extension-positive", worst_pos, 1e-8)

        # a map scaled to break accretivity preservation must be caught:
        # either the extension is ill defined or a positivity witness shows
        if k % 4 == 0:
            e12 = np.zeros((2, 2), dtype=complex)
            e12[0, 1] = 1.0
            bad_space = matrix_subspace([identity(2), e12], cfg.tol)
            bad_map = subspace_map(bad_space, [identity(2), 3.0 * e12], 2)
            caught = False
            try:
                bad_ext = extend_to_selfadjoint(bad_map, cfg.tol)
            except IllDefinedExtension:
                caught = True
            if not caught:
                ortho_b = np.linalg.qr(np.stack(
                    [b.reshape(-1) for b in bad_ext.domain.basis], axis=1))[0]
                for _ in range(200):
                    m = np.zeros((2, 2), dtype=complex)
                    for b in bad_ext.domain.basis:
                        m += complex(rng.standard_normal()
                                     + 1j * rng.standard_normal()) * b
                    X = hermitian_part(_project_onto_span(m @ dagger(m),
                                                          ortho_b, 2))
                    if float(np.min(np.linalg.eigvalsh(X))) < -1e-12:
                        continue
                    img = bad_ext.apply_block(X, cfg.tol)
                    if float(np.min(np.linalg.eigvalsh(hermitian_part(img)))) \
                            < -1e-6:
                        caught = True
                        break
            ledger.add(dig + ":broken-map-caught",
                       cfg.tol.psd_tol if caught else -1.5 * cfg.tol.psd_tol,
                       cfg.tol.psd_tol)
    return cfg.trials


# ------------------------------------------------------------------ P15


def _p15_pair(rng, d: int = 2) -> tuple[np.ndarray, np.ndarray]:
    """A noncommuting pair on the boundary of half-F.

    Root-product accretivity fails only for boundary members (||1-2a|| = 1
    exactly), and empirically at a rate of roughly 1e-4 for d = 2 Gaussian
    draws, so the search samples exactly there.
    """
    out = []
    for _ in range(2):
        c = random_contraction(rng, d, radius=1.0)
        out.append((identity(d) - c) / 2.0)
    return out[0], out[1]


def p15_witness() -> tuple[np.ndarray, np.ndarray]:
    """Regenerate the frozen noncommuting witness pair."""
    rng = trial_rng(P15_SEED, "P15", P15_TRIAL)
    return _p15_pair(rng)


def _root_product_floor(a: np.ndarray, b: np.ndarray,
                        tol: TolerancePolicy) -> float:
    ra = principal_power(a, 0.5, tol=tol, check_range=False).value
    rb = principal_power(b, 0.5, tol=tol, check_range=False).value
    return float(np.min(np.linalg.eigvalsh(hermitian_part(ra @ rb))))


def _prop_p15(cfg: TrialConfig, ledger: MarginLedger) -> int:
    """Witness search; the frozen fixture is always examined first, so the
    property passes deterministically regardless of the configured seed."""
    a, b = p15_witness()
    floor = _root_product_floor(a, b, cfg.tol)
    ledger.add(_digest_values("P15", "fixture"), -1e-4 - floor, 1e-12)
    executed = 1
    if floor <= -1e-4:
        ledger.add(_digest_values("P15", "fixture-regression"),
                   1e-9 - abs(floor - P15_FLOOR), 1e-12)
        return executed
    # fixture unexpectedly fine (e.g. exotic tolerance override): sweep
    for k in range(min(cfg.trials, 100000)):
        rng = trial_rng(cfg.seed, "P15", k)
        a, b = _p15_pair(rng)
        floor = _root_product_floor(a, b, cfg.tol)
        executed += 1
        if floor < -1e-4:
            ledger.add(_digest_values("P15", "search", k), -1e-4 - floor, 1e-12)
            return executed
    ledger.add(_digest_values("P15", "exhausted"), -1.5e-12, 1e-12)
    return executed


# ------------------------------------------------------------------ P16


@lru_cache(maxsize=1)
def _root_product_bidisk() -> BidiskFunction:
    """The bidisk series of 1 - 2 ((1-z)/2)^{1/2} ((1-w)/2)^{1/2}."""
    outer = from_coeffs_2d([[1.0, 0.0], [0.0, -2.0]])
    g = half_f_power(0.5)
    return compose(outer, g, g, max_degree=512)


def _random_polynomial(rng, max_deg: int, mass: float) -> DiskFunction:
    deg = int(rng.integers(2, max_deg + 1))
    coeffs = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
    total = float(np.sum(np.abs(coeffs)))
    coeffs = coeffs * (mass / total)
    return from_coeffs(coeffs.tolist())


def _prop_p16(cfg: TrialConfig, ledger: MarginLedger) -> int:
    for k in range(cfg.trials):
        rng = trial_rng(cfg.seed, "P16", k)
        d = _dim(cfg, k)
        S, T = gen_commuting_family(d, 2, FamilyTarget.CONTRACTION, rng)
        g = _random_polynomial(rng, 8, float(rng.uniform(0.3, 0.95)))
        h = _random_polynomial(rng, 8, float(rng.uniform(0.3, 0.95)))
        fc = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        fc = fc / float(np.sum(np.abs(fc)))
        f = from_coeffs_2d(fc)
        dig = _digest_values("P16", k)

        composed = compose(f, g, h)
        direct = eval_bidisk(f, eval_disk(g, S, cfg.tol),
                             eval_disk(h, T, cfg.tol), cfg.tol)
        via_series = eval_bidisk(composed, S, T, cfg.tol)
        ledger.add(dig + ":composition",
                   -float(np.linalg.norm(via_series - direct, 2)), 1e-7)

        hsup = float(np.max(np.abs(boundary_grid_values(h))))
        ledger.add(dig + ":von-neumann",
                   hsup - operator_norm(eval_disk(h, T, cfg.tol)), 1e-8)

        # shifting a series to have nonnegative boundary real part forces
        # a PSD-within-tolerance real part of its value at any contraction
        re_min = float(np.min(np.real(boundary_grid_values(h))))
        shifted = h + from_coeffs([complex(-re_min + 0.01)])
        val = eval_disk(shifted, T, cfg.tol)
        ledger.add(dig + ":positivity",
                   float(np.min(np.linalg.eigvalsh(hermitian_part(val)))),
                   1e-7)

        n, m = int(rng.integers(1, 4)), int(rng.integers(1, 4))
        mono = np.zeros((n + 1, m + 1), dtype=complex)
        mono[n, m] = 1.0
        lhs = eval_bidisk(compose(from_coeffs_2d(mono), g, h), S, T, cfg.tol)
        rhs = np.linalg.matrix_power(eval_disk(g, S, cfg.tol), n) @ \
            np.linalg.matrix_power(eval_disk(h, T, cfg.tol), m)
        ledger.add(dig + ":monomial",
                   -float(np.linalg.norm(lhs - rhs, 2)), 1e-10)

        if k % 4 == 0:
            # the stored degree-512 block of the root-product series has
            # |coefficient| mass ~0.1 beyond the cap, so its tail bound
            # only reaches the target for argument norms <= ~0.95; sample
            # the half-F pair strictly inside that disk
            c1, c2 = gen_commuting_family(d, 2, FamilyTarget.CONTRACTION,
                                          rng)
            Sa, Sb = 0.9 * c1, 0.9 * c2
            a = (identity(d) - Sa) / 2.0
            b = (identity(d) - Sb) / 2.0
            series_val = eval_bidisk(_root_product_bidisk(), Sa, Sb, cfg.tol)
            ra = principal_power(a, 0.5, tol=cfg.tol, check_range=False).value
            rb = principal_power(b, 0.5, tol=cfg.tol, check_range=False).value
            direct_val = identity(d) - 2.0 * ra @ rb
            ledger.add(dig + ":series-vs-roots",
                       -float(np.linalg.norm(series_val - direct_val, 2)),
                       1e-7)
    return cfg.trials


# ------------------------------------------------------------------ P17


def _prop_p17(cfg: TrialConfig, ledger: MarginLedger) -> int:
    for k in range(cfg.trials):
        rng = trial_rng(cfg.seed, "P17", k)
        d = _dim(cfg, k)
        x = random_accretive(rng, d, singular=(k % 2 == 1 and d >= 2))
        dig = matrix_digest(x)
        for eps in (1.0, 0.1, 0.01):
            y = x + eps * identity(d)
            c = min_c_constant(y, cfg.tol)
            ledger.add(dig + f":finite@{eps}",
                       cfg.tol.psd_tol if math.isfinite(c) else -1.0,
                       cfg.tol.psd_tol)
            if not math.isfinite(c):
                continue
            # explicit witness constant: eps I >= (eps/||y||^2) y* y
            cw = eps / operator_norm(y) ** 2
            gap = float(np.min(np.linalg.eigvalsh(
                eps * identity(d) - cw * (dagger(y) @ y))))
            ledger.add(dig + f":bound@{eps}", gap, 1e-9 * max(1.0, eps))
            # x/r enters F exactly at r = c
            r = c * (1.0 + 1e-8) if c > 0 else 1.0
            margin = 1.0 - operator_norm(identity(d) - y / r)
            ledger.add(dig + f":member@{eps}", margin, 1e-8)
    return cfg.trials


# ------------------------------------------------------------- dispatch

_PROPERTIES = {
    "P1": _prop_p1,
    "P2": _prop_p2,
    "P3": _prop_p3,
    "P4": _prop_p4,
    "P5": _prop_p5,
    "P6": _prop_p6,
    "P7": _prop_p7,
    "P8": _prop_p8,
    "P9": _prop_p9,
    "P10": _prop_p10,
    "P11": _prop_p11,
    "P12": _prop_p12,
    "P13": _prop_p13,
    "P14": _prop_p14,
    "P15": _prop_p15,
    "P16": _prop_p16,
    "P17": _prop_p17,
}


def run_property(property_id: str, cfg: TrialConfig) -> PropertyReport:
    """Run one property check; deterministic given the config.

    :raises UnknownProperty: for identifiers outside P1..P17.
    """
    fn = _PROPERTIES.get(property_id)
    if fn is None:
        raise UnknownProperty(f"no property named {property_id!r}")
    start = time.perf_counter()
    ledger = MarginLedger()
    executed = fn(cfg, ledger)
    return ledger.report(property_id, executed,
                         elapsed=time.perf_counter() - start)


def run_suite(cfg: TrialConfig) -> list[PropertyReport]:
    """Run every requested property in catalogue order."""
    order = [pid for pid in ALL_PROPERTY_IDS if pid in set(cfg.property_ids)]
    return [run_property(pid, cfg) for pid in order]
